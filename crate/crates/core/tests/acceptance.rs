//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.
//!
//! Randomized checks use `ACCEPTANCE_SEED` (default below) for ChaCha8.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use markov_phi::markov;
use markov_phi::necklace::{self, canonicalize, Necklace, NecklaceParams};
use markov_phi::par::{self, Exec};
use markov_phi::phi;
use markov_phi::slword::{self, WordVariant};
use markov_phi::spectrum::{self, ScanConfig};

const DEFAULT_SEED: u64 = 0x5eed_4a4b;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Small variation straight from the definition: every block size from 1 to
/// 2k, no reduction modulo the period.
fn small_variation_by_definition(s: &[u64]) -> bool {
    let k = s.len();
    (1..=2 * k).all(|size| {
        let sums: Vec<u64> = (0..k).map(|i| (i..i + size).map(|j| s[j % k]).sum()).collect();
        sums.iter().max().unwrap() - sums.iter().min().unwrap() <= 1
    })
}

/// All sequences of length `len` over `values`, in odometer order.
fn all_sequences(len: usize, values: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

/// 1. phi_literal = phi_transfer = trace/3 for every domain necklace with
///    k <= 14 and Σn <= 20.
fn evaluator_tri_agreement() -> Outcome {
    let necklaces: Vec<Necklace> = necklace::enumerate(20, 14).filter(|n| n.sum() <= 20).collect();
    for n in &necklaces {
        let literal = phi::phi_literal(n).map_err(|e| e.to_string())?;
        let transfer = phi::phi_transfer(n).map_err(|e| e.to_string())?;
        let trace = slword::trace_of_necklace(n);
        let (oracle, rem) = trace.div_rem(&big(3));
        check(rem.is_zero(), || format!("trace of {n} not divisible by 3"))?;
        check(literal.value == transfer.value && transfer.value == oracle, || {
            format!(
                "{n}: literal {} transfer {} oracle {oracle}",
                literal.value, transfer.value
            )
        })?;
        check(literal.numerator == transfer.numerator, || {
            format!("{n}: numerators differ")
        })?;
    }
    Ok(format!("{} necklaces, bit-exact", necklaces.len()))
}

/// 2. Im(Φ) ∩ [1, 10⁶] equals the Markov numbers up to 10⁶.
fn markov_cross_check() -> Outcome {
    let bound = big(1_000_000);
    let report = spectrum::cross_check_markov(&bound, &ScanConfig::default()).map_err(|e| e.to_string())?;
    check(report.agrees(), || {
        format!("only Φ: {:?}, only Markov: {:?}", report.only_phi, report.only_markov)
    })?;
    let head: Vec<BigUint> = [1u64, 2, 5, 13, 29, 34, 89, 169, 194, 233, 433, 610, 985]
        .into_iter()
        .map(big)
        .collect();
    check(
        report.phi_values.len() >= 13 && report.phi_values[..13] == head[..],
        || format!("head {:?}", &report.phi_values[..13.min(report.phi_values.len())]),
    )?;
    check(report.markov_numbers == markov::markov_numbers(&bound), || {
        "markov side mismatch".into()
    })?;
    Ok(format!("{} values agree", report.phi_values.len()))
}

/// 3. No Φ collisions up to 10⁸, 4 workers.
fn injectivity_at_desk_scale() -> Outcome {
    let bound = big(100_000_000);
    let report = par::with_workers(4, || {
        spectrum::verify_injectivity(&bound, &ScanConfig::default()).map_err(|e| e.to_string())
    })?;
    check(report.collisions.is_empty(), || {
        format!("collisions: {:?}", report.collisions)
    })?;
    Ok(format!("{} necklaces scanned, 0 collisions", report.scanned))
}

/// 4. For x + y <= 12, gcd(x, y) = 1, m <= 3: exactly one cyclic class with
///    that content has small variation, and it is from_params(x, y, m).
fn necklace_uniqueness() -> Outcome {
    let mut cases = 0;
    for m in 0..=3u64 {
        for len in 1..=12u64 {
            for y in 0..len {
                let x = len - y;
                let Ok(params) = NecklaceParams::new(x, y, m) else {
                    continue;
                };
                let classes: BTreeSet<Necklace> = all_sequences(len as usize, &[m, m + 1])
                    .into_iter()
                    .filter(|s| s.iter().filter(|&&v| v == m).count() as u64 == x)
                    .map(|s| canonicalize(&s).unwrap())
                    .collect();
                let small: Vec<&Necklace> = classes
                    .iter()
                    .filter(|n| small_variation_by_definition(n.entries()))
                    .collect();
                let expected = Necklace::from_params(params).unwrap();
                check(small.len() == 1 && *small[0] == expected, || {
                    format!("(x={x}, y={y}, m={m}): small-variation classes {small:?}, from_params {expected}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} parameter triples"))
}

/// 5. Trace of the Θ-image word equals the trace of the original word for all
///    positive necklaces with k <= 8 and entries <= 4.
fn theta_trace_equality() -> Outcome {
    let mut necklaces = BTreeSet::new();
    for len in 1..=8 {
        for s in all_sequences(len, &[1, 2, 3, 4]) {
            necklaces.insert(canonicalize(&s).unwrap());
        }
    }
    for n in &necklaces {
        let theta = n.theta().map_err(|e| e.to_string())?;
        // One side by block matrices, the other by spelling the word letter by letter.
        let original = slword::trace_of_necklace(n);
        let word = slword::word_from_necklace(&theta, WordVariant::Standard).map_err(|e| e.to_string())?;
        let image = slword::matrix_of_word(&word).trace();
        check(BigInt::from(original.clone()) == image, || {
            format!("{n}: {original} vs {image}")
        })?;
    }
    Ok(format!("{} necklaces", necklaces.len()))
}

/// 6. Head of the simple length spectrum and its multiplicities.
fn spectrum_head() -> Outcome {
    const REL_TOL: f64 = 1e-9;
    let s = spectrum::simple_spectrum(&big(10), &ScanConfig::default()).map_err(|e| e.to_string())?;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    // 2·acosh(t/2) = 2·ln((t + √(t²−4))/2) for traces 3, 6, 15.
    let closed_form = [
        4.0 * golden.ln(),
        4.0 * (1.0 + 2f64.sqrt()).ln(),
        2.0 * ((15.0 + 221f64.sqrt()) / 2.0).ln(),
    ];
    let printed = [1.924_847_300, 3.525_494_348];
    let lengths: Vec<f64> = s.entries.iter().map(|e| e.length).collect();
    let mults: Vec<u32> = s.entries.iter().map(|e| e.multiplicity).collect();
    check(lengths.len() == 3, || format!("expected 3 entries, got {lengths:?}"))?;
    for (got, want) in lengths.iter().zip(closed_form) {
        check((got - want).abs() / want <= REL_TOL, || {
            format!("length {got} vs {want}")
        })?;
    }
    for (got, want) in lengths.iter().zip(printed) {
        check((got - want).abs() / want <= REL_TOL, || {
            format!("length {got} vs {want}")
        })?;
    }
    check(mults == [6, 6, 12], || format!("multiplicities {mults:?}"))?;
    check(s.ties.is_empty(), || "ties in spectrum head".into())?;
    Ok(format!("lengths {lengths:.9?}, multiplicities {mults:?}"))
}

/// 7. Structural invariants on seeded random inputs.
fn structural_invariants(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;

    for _ in 0..200 {
        let (x, y) = loop {
            let x = rng.gen_range(1..=10u64);
            let y = rng.gen_range(1..=10u64);
            if x.gcd(&y) == 1 {
                break (x, y);
            }
        };
        let m = rng.gen_range(1..=6u64);
        let n = Necklace::from_params(NecklaceParams { x, y, m }).unwrap();
        let k = n.len();
        let sum_n = n.sum() as u64;
        let denominator = (BigInt::from(10u32).pow(k as u32) * 3u32) << sum_n;
        for numerator in [
            phi::literal_numerator(n.entries(), Exec::default()),
            phi::transfer_numerator(n.entries()),
        ] {
            check(numerator.b.is_zero(), || format!("{n}: √5 part {}", numerator.b))?;
            check((&numerator.a % &denominator).is_zero(), || {
                format!("{n}: not divisible")
            })?;
        }
        checks += 1;
    }

    for _ in 0..500 {
        let len = rng.gen_range(1..=60usize);
        let letters: String = (0..len).map(|_| if rng.gen() { 'L' } else { 'R' }).collect();
        let m = slword::matrix_of_word(&letters.parse().unwrap());
        check(m.det().is_one(), || format!("det of {letters} is {}", m.det()))?;
        checks += 1;
    }
    for _ in 0..200 {
        let n = slword::block_matrix(rng.gen_range(0..40));
        check(n.det().is_one(), || "block determinant".into())?;
        checks += 1;
    }

    for _ in 0..1000 {
        let len = rng.gen_range(1..=30usize);
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(0..4)).collect();
        let c = canonicalize(&seq).unwrap();
        check(canonicalize(c.entries()).unwrap() == c, || {
            format!("not idempotent on {seq:?}")
        })?;
        let j = rng.gen_range(0..len);
        let rotated: Vec<u64> = seq[j..].iter().chain(&seq[..j]).copied().collect();
        check(canonicalize(&rotated).unwrap() == c, || {
            format!("rotation changes {seq:?}")
        })?;
        checks += 1;
    }

    for _ in 0..1000 {
        let len = rng.gen_range(1..=12usize);
        let seq: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=6)).collect();
        let n = canonicalize(&seq).unwrap();
        let back = n.theta().unwrap().theta_inverse().unwrap();
        check(back == n, || format!("theta round trip on {n} gave {back}"))?;
        let bits: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=1)).collect();
        if bits.contains(&1) {
            let b = canonicalize(&bits).unwrap();
            check(b.theta_inverse().unwrap().theta().unwrap() == b, || {
                format!("inverse round trip on {b}")
            })?;
        }
        checks += 1;
    }
    Ok(format!("{checks} randomized checks, seed {seed:#x}"))
}

fn main() -> ExitCode {
    let seed = std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let criteria: Vec<Criterion> = vec![
        (
            "AC1 evaluator tri-agreement (k<=14, sum<=20)",
            Box::new(evaluator_tri_agreement),
        ),
        ("AC2 Im(phi) = Markov numbers up to 1e6", Box::new(markov_cross_check)),
        (
            "AC3 phi injective up to 1e8 (4 workers)",
            Box::new(injectivity_at_desk_scale),
        ),
        (
            "AC4 unique small-variation class per (x,y,m)",
            Box::new(necklace_uniqueness),
        ),
        (
            "AC5 theta-image trace equality (k<=8, entries<=4)",
            Box::new(theta_trace_equality),
        ),
        ("AC6 spectrum head lengths and multiplicities", Box::new(spectrum_head)),
        (
            "AC7 structural invariants (seeded)",
            Box::new(move || structural_invariants(seed)),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
