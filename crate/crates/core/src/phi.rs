//! Φ on the domain necklaces, by literal subset enumeration and by the
//! product of 2×2 transfer matrices over ℤ[√5].
//!
//! Both evaluators produce the same cleared numerator
//!
//! ```text
//! N = Σ_S 3^r(S) · 2^(k−r(S)) · (ξ+2)^|S| · (ξ̄+2)^|Sᶜ| · ξ^(Σ_S n) · ξ̄^(Σ_Sᶜ n)
//! ```
//!
//! which is the trace of `L(LR)^{n_1}R ⋯` times `10^k · 2^(Σn)`. Φ is that
//! trace divided by 3, so `Φ = N / (3 · 10^k · 2^(Σn))`. Summing with
//! `3^r` instead of `3^(r−1)` keeps every term in ℤ[√5] (`r(S)` can be 0).

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::mat2::Mat2;
use crate::necklace::{Necklace, NecklaceError};
use crate::par::{self, Exec};
use crate::quadring::{DivisibilityError, QuadInt};
use crate::slword;

/// Default largest `k` evaluated by subset enumeration.
pub const DEFAULT_LITERAL_CAP: usize = 20;

/// Hard ceiling on `k` for subset enumeration (bitmask width).
pub const MAX_MASK_LEN: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error(transparent)]
    Domain(#[from] NecklaceError),
    #[error("necklace length {k} exceeds the subset-enumeration cap {cap}; use the transfer evaluator")]
    Capacity { k: usize, cap: usize },
    #[error("internal inconsistency: numerator {numerator} of {necklace} has a nonzero √5 part")]
    IrrationalNumerator { necklace: Necklace, numerator: QuadInt },
    #[error("internal inconsistency: {0}")]
    NotDivisible(#[from] DivisibilityError),
    #[error("internal inconsistency: Φ({necklace}) is not positive")]
    NonPositive { necklace: Necklace },
    #[error("internal inconsistency: trace {trace} of {necklace} is not divisible by 3")]
    TraceNotDivisible { necklace: Necklace, trace: BigUint },
    #[error("evaluators disagree on {necklace}: {}", fmt_values(.values))]
    Disagreement {
        necklace: Necklace,
        values: Vec<(Evaluator, BigUint)>,
    },
}

fn fmt_values(values: &[(Evaluator, BigUint)]) -> String {
    values
        .iter()
        .map(|(e, v)| format!("{e}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl PhiError {
    /// True for errors that can only come from a bug or a false identity,
    /// as opposed to bad input or a capacity limit.
    pub fn is_inconsistency(&self) -> bool {
        !matches!(self, PhiError::Domain(_) | PhiError::Capacity { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Evaluator {
    Literal,
    Transfer,
    /// Trace of the `L/R` word divided by 3.
    Oracle,
    /// Every evaluator that applies, cross-checked.
    All,
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evaluator::Literal => "literal",
            Evaluator::Transfer => "transfer",
            Evaluator::Oracle => "oracle",
            Evaluator::All => "all",
        })
    }
}

/// A subset `S ⊆ {1, …, k}`, bit `i` standing for position `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    k: u32,
    bits: u64,
}

impl SubsetMask {
    pub fn new(k: u32, bits: u64) -> Option<Self> {
        if k == 0 || k > MAX_MASK_LEN || bits >> k != 0 {
            return None;
        }
        Some(SubsetMask { k, bits })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: u32) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == full_mask(self.k)
    }

    pub fn complement(&self) -> SubsetMask {
        SubsetMask {
            k: self.k,
            bits: !self.bits & full_mask(self.k),
        }
    }
}

fn full_mask(k: u32) -> u64 {
    (1u64 << k) - 1
}

/// `r(S)`: total of `|run| − 1` over the cyclic runs of `S` and of `Sᶜ`,
/// with `r(∅) = r(full) = k`.
///
/// For a proper nonempty subset this equals the number of cyclically adjacent
/// positions that are both in `S` or both outside it.
pub fn run_statistic(s: SubsetMask) -> u32 {
    if s.is_empty() || s.is_full() {
        return s.k;
    }
    (0..s.k).filter(|&i| s.contains(i) == s.contains((i + 1) % s.k)).count() as u32
}

/// Φ together with the exact numerator it was divided out of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiResult {
    pub value: BigUint,
    pub numerator: QuadInt,
    pub k: usize,
    pub sum_n: u64,
}

impl PhiResult {
    /// `3 · 10^k · 2^(Σn)`.
    pub fn denominator(&self) -> BigInt {
        denominator(self.k, self.sum_n)
    }

    /// Trace of the standard word, `3Φ`.
    pub fn trace(&self) -> BigUint {
        &self.value * 3u32
    }
}

fn denominator(k: usize, sum_n: u64) -> BigInt {
    let ten_k = BigInt::from(10u32).pow(k as u32);
    (ten_k * 3u32) << sum_n
}

fn sum_of(entries: &[u64]) -> u64 {
    entries
        .iter()
        .try_fold(0u64, |acc, &v| acc.checked_add(v))
        .expect("entry sum overflows u64")
}

/// Power tables shared by every subset term of one necklace.
struct LiteralTables {
    /// `3^r · 2^(k−r)` indexed by `r`.
    weights: Vec<BigInt>,
    /// `(ξ+2)^j · (ξ̄+2)^(k−j)` indexed by `j = |S|`.
    shifted: Vec<QuadInt>,
    xi_pow: Vec<QuadInt>,
    xi_bar_pow: Vec<QuadInt>,
}

impl LiteralTables {
    fn new(k: usize, sum_n: u64) -> Self {
        let weights = (0..=k as u32)
            .map(|r| BigInt::from(3u32).pow(r) << (k as u32 - r))
            .collect();
        let xi2 = &QuadInt::xi() + &QuadInt::from_int(2);
        let xi_bar2 = &QuadInt::xi_bar() + &QuadInt::from_int(2);
        let shifted = (0..=k as u64)
            .map(|j| &xi2.pow(j) * &xi_bar2.pow(k as u64 - j))
            .collect();
        let powers = |base: QuadInt| {
            let mut table = Vec::with_capacity(sum_n as usize + 1);
            let mut acc = QuadInt::one();
            for _ in 0..=sum_n {
                let next = &acc * &base;
                table.push(acc);
                acc = next;
            }
            table
        };
        LiteralTables {
            weights,
            shifted,
            xi_pow: powers(QuadInt::xi()),
            xi_bar_pow: powers(QuadInt::xi_bar()),
        }
    }

    fn term(&self, entries: &[u64], s: SubsetMask, sum_n: u64) -> QuadInt {
        let r = run_statistic(s) as usize;
        let in_s: u64 = entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| s.contains(i as u32))
            .map(|(_, &v)| v)
            .sum();
        let t = &self.shifted[s.len() as usize] * &self.xi_pow[in_s as usize];
        (&t * &self.xi_bar_pow[(sum_n - in_s) as usize]).scale(&self.weights[r])
    }
}

/// The cleared numerator `N` by enumerating all `2^k` subsets. Valid for any
/// nonnegative sequence with `1 <= k <= 63`.
pub fn literal_numerator(entries: &[u64], exec: Exec) -> QuadInt {
    let k = entries.len();
    assert!(
        k >= 1 && k as u32 <= MAX_MASK_LEN,
        "subset enumeration needs 1 <= k <= 63"
    );
    let sum_n = sum_of(entries);
    let tables = LiteralTables::new(k, sum_n);
    par::map_reduce(
        exec,
        0..1u64 << k,
        QuadInt::zero,
        |bits| {
            let s = SubsetMask { k: k as u32, bits };
            tables.term(entries, s, sum_n)
        },
        |mut a, b| {
            a += &b;
            a
        },
    )
}

/// `A_n = (3(ξ̄+2)ξ̄^n  2(ξ+2)ξ^n; 2(ξ̄+2)ξ̄^n  3(ξ+2)ξ^n)`.
pub fn transfer_matrix(n: u64) -> Mat2<QuadInt> {
    let two = QuadInt::from_int(2);
    let three = BigInt::from(3u32);
    let left = &(&QuadInt::xi_bar() + &two) * &QuadInt::xi_bar().pow(n);
    let right = &(&QuadInt::xi() + &two) * &QuadInt::xi().pow(n);
    Mat2::new(
        left.scale(&three),
        right.scale(&BigInt::from(2u32)),
        left.scale(&BigInt::from(2u32)),
        right.scale(&three),
    )
}

/// The cleared numerator as the trace of `A_{n_1} ⋯ A_{n_k}`.
pub fn transfer_numerator(entries: &[u64]) -> QuadInt {
    let mut cache: HashMap<u64, Mat2<QuadInt>> = HashMap::new();
    entries
        .iter()
        .fold(Mat2::identity(), |acc, &n| {
            let a = cache.entry(n).or_insert_with(|| transfer_matrix(n));
            acc.mul(a)
        })
        .trace()
}

fn finish(n: &Necklace, numerator: QuadInt) -> Result<PhiResult, PhiError> {
    let k = n.len();
    let sum_n = sum_of(n.entries());
    if !numerator.is_rational() {
        return Err(PhiError::IrrationalNumerator {
            necklace: n.clone(),
            numerator,
        });
    }
    let quotient = numerator.exact_div_int(&denominator(k, sum_n))?;
    if !quotient.a.is_positive() {
        return Err(PhiError::NonPositive { necklace: n.clone() });
    }
    let value = quotient.a.to_biguint().expect("positive");
    Ok(PhiResult {
        value,
        numerator,
        k,
        sum_n,
    })
}

pub fn phi_literal(n: &Necklace) -> Result<PhiResult, PhiError> {
    phi_literal_with(n, DEFAULT_LITERAL_CAP, Exec::default())
}

pub fn phi_literal_with(n: &Necklace, cap: usize, exec: Exec) -> Result<PhiResult, PhiError> {
    n.to_params()?;
    let cap = cap.min(MAX_MASK_LEN as usize);
    if n.len() > cap {
        return Err(PhiError::Capacity { k: n.len(), cap });
    }
    finish(n, literal_numerator(n.entries(), exec))
}

pub fn phi_transfer(n: &Necklace) -> Result<PhiResult, PhiError> {
    n.to_params()?;
    finish(n, transfer_numerator(n.entries()))
}

/// Φ from the matrix trace.
pub fn phi_oracle(n: &Necklace) -> Result<BigUint, PhiError> {
    n.to_params()?;
    let trace = slword::trace_of_necklace(n);
    let (q, r) = trace.div_rem(&BigUint::from(3u32));
    if !r.is_zero() {
        return Err(PhiError::TraceNotDivisible {
            necklace: n.clone(),
            trace,
        });
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiConfig {
    /// Largest `k` for which the dispatcher uses subset enumeration.
    pub literal_cap: usize,
    /// Evaluate with every evaluator and require agreement.
    pub verify: bool,
    pub exec: Exec,
}

impl Default for PhiConfig {
    fn default() -> Self {
        PhiConfig {
            literal_cap: DEFAULT_LITERAL_CAP,
            verify: false,
            exec: Exec::default(),
        }
    }
}

/// Values from each evaluator that was run, in the order they ran.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigUint,
    pub values: Vec<(Evaluator, BigUint)>,
}

/// Runs one evaluator, or all of them for [`Evaluator::All`] (the literal
/// evaluator is skipped above the cap). Disagreement is an error.
pub fn evaluate(n: &Necklace, evaluator: Evaluator, cfg: &PhiConfig) -> Result<Evaluation, PhiError> {
    let values = match evaluator {
        Evaluator::Literal => vec![(evaluator, phi_literal_with(n, cfg.literal_cap, cfg.exec)?.value)],
        Evaluator::Transfer => vec![(evaluator, phi_transfer(n)?.value)],
        Evaluator::Oracle => vec![(evaluator, phi_oracle(n)?)],
        Evaluator::All => {
            let mut values = Vec::with_capacity(3);
            if n.len() <= cfg.literal_cap.min(MAX_MASK_LEN as usize) {
                values.push((
                    Evaluator::Literal,
                    phi_literal_with(n, cfg.literal_cap, cfg.exec)?.value,
                ));
            }
            values.push((Evaluator::Transfer, phi_transfer(n)?.value));
            values.push((Evaluator::Oracle, phi_oracle(n)?));
            values
        }
    };
    let value = values[0].1.clone();
    if values.iter().any(|(_, v)| *v != value) {
        return Err(PhiError::Disagreement {
            necklace: n.clone(),
            values,
        });
    }
    Ok(Evaluation { value, values })
}

/// Φ with the default configuration.
pub fn phi(n: &Necklace) -> Result<BigUint, PhiError> {
    phi_with(n, &PhiConfig::default())
}

/// Subset enumeration up to the cap, transfer matrices beyond it; with
/// `verify` set every evaluator runs and must agree.
pub fn phi_with(n: &Necklace, cfg: &PhiConfig) -> Result<BigUint, PhiError> {
    if cfg.verify {
        return evaluate(n, Evaluator::All, cfg).map(|e| e.value);
    }
    if n.len() <= cfg.literal_cap.min(MAX_MASK_LEN as usize) {
        phi_literal_with(n, cfg.literal_cap, cfg.exec).map(|r| r.value)
    } else {
        phi_transfer(n).map(|r| r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::necklace::{canonicalize, NecklaceParams};

    fn nk(v: &[u64]) -> Necklace {
        canonicalize(v).unwrap()
    }

    fn mask(k: u32, members: &[u32]) -> SubsetMask {
        SubsetMask::new(k, members.iter().map(|&i| 1u64 << (i - 1)).sum()).unwrap()
    }

    /// Splits the positions with membership `want` into maximal cyclic runs.
    fn runs(s: SubsetMask, want: bool) -> Vec<usize> {
        let k = s.k();
        let member = |i: u32| s.contains(i % k) == want;
        let Some(start) = (0..k).find(|&i| !member(i)) else {
            return vec![k as usize];
        };
        let mut out = Vec::new();
        let mut current = 0;
        for step in 1..=k {
            if member(start + step) {
                current += 1;
            } else if current > 0 {
                out.push(current);
                current = 0;
            }
        }
        out
    }

    fn run_statistic_by_runs(s: SubsetMask) -> u32 {
        if s.is_empty() || s.is_full() {
            return s.k();
        }
        runs(s, true).iter().chain(&runs(s, false)).map(|&r| r as u32 - 1).sum()
    }

    #[test]
    fn run_statistic_examples() {
        assert_eq!(run_statistic(mask(2, &[1])), 0);
        assert_eq!(run_statistic(mask(3, &[1, 2])), 1);
        assert_eq!(run_statistic(mask(3, &[])), 3);
        assert_eq!(run_statistic(mask(3, &[1, 2, 3])), 3);
        assert_eq!(run_statistic(mask(5, &[1, 5])), 3);
    }

    #[test]
    fn run_statistic_matches_run_decomposition() {
        for k in 1..=12u32 {
            for bits in 0..1u64 << k {
                let s = SubsetMask::new(k, bits).unwrap();
                assert_eq!(run_statistic(s), run_statistic_by_runs(s), "k={k} bits={bits:b}");
            }
        }
    }

    #[test]
    fn subset_mask_bounds() {
        assert!(SubsetMask::new(0, 0).is_none());
        assert!(SubsetMask::new(3, 8).is_none());
        assert!(SubsetMask::new(64, 0).is_none());
        assert_eq!(mask(4, &[1, 3]).complement(), mask(4, &[2, 4]));
    }

    #[test]
    fn literal_examples() {
        let v = |s: &[u64]| phi_literal(&nk(s)).unwrap().value;
        assert_eq!(v(&[0]), BigUint::from(1u32));
        assert_eq!(v(&[1]), BigUint::from(2u32));
        assert_eq!(v(&[2]), BigUint::from(5u32));
        assert_eq!(v(&[1, 2]), BigUint::from(29u32));
        assert_eq!(v(&[1, 1, 2]), BigUint::from(169u32));
        assert_eq!(phi_literal(&nk(&[0])).unwrap().numerator, QuadInt::from_int(30));
    }

    #[test]
    fn transfer_examples() {
        let v = |s: &[u64]| phi_transfer(&nk(s)).unwrap().value;
        assert_eq!(v(&[1, 2]), BigUint::from(29u32));
        assert_eq!(v(&[0]), BigUint::from(1u32));
        assert_eq!(transfer_numerator(&[0]), QuadInt::from_int(30));
        // Closed form for k = 1: Φ([n]) = ((5+√5)ξⁿ + (5−√5)ξ̄ⁿ) / (10·2ⁿ).
        let closed =
            &(&QuadInt::new(5, 1) * &QuadInt::xi().pow(5)) + &(&QuadInt::new(5, -1) * &QuadInt::xi_bar().pow(5));
        let closed = closed.exact_div_int(&BigInt::from(320)).unwrap();
        assert_eq!(closed, QuadInt::from_int(89));
        assert_eq!(v(&[5]), BigUint::from(89u32));
        assert_eq!(slword::trace_of_necklace(&nk(&[5])), BigUint::from(267u32));
    }

    #[test]
    fn running_example_regression() {
        let n = Necklace::from_params(NecklaceParams { x: 5, y: 7, m: 3 }).unwrap();
        let expected: BigUint = "3440971837880006083249".parse().unwrap();
        assert_eq!(phi(&n).unwrap(), expected);
        assert_eq!(slword::trace_of_necklace(&n), &expected * 3u32);
    }

    #[test]
    fn dispatcher_and_verification() {
        assert_eq!(phi(&nk(&[1, 1, 2])).unwrap(), BigUint::from(169u32));
        assert_eq!(phi(&nk(&[0])).unwrap(), BigUint::from(1u32));
        let cfg = PhiConfig {
            verify: true,
            ..PhiConfig::default()
        };
        let e = evaluate(&nk(&[1, 2, 2]), Evaluator::All, &cfg).unwrap();
        assert_eq!(e.values.len(), 3);
        let cfg = PhiConfig {
            literal_cap: 2,
            verify: true,
            ..PhiConfig::default()
        };
        let e = evaluate(&nk(&[1, 2, 2]), Evaluator::All, &cfg).unwrap();
        assert_eq!(e.values.len(), 2);
    }

    #[test]
    fn capacity_and_domain_errors() {
        let long = Necklace::from_params(NecklaceParams { x: 10, y: 11, m: 1 }).unwrap();
        assert_eq!(phi_literal(&long), Err(PhiError::Capacity { k: 21, cap: 20 }));
        assert!(phi(&long).is_ok());
        assert!(matches!(phi(&nk(&[1, 3])), Err(PhiError::Domain(_))));
        assert!(matches!(phi_transfer(&nk(&[1, 2, 1, 2])), Err(PhiError::Domain(_))));
        assert!(!PhiError::Capacity { k: 1, cap: 0 }.is_inconsistency());
    }

    #[test]
    fn literal_is_identical_under_both_strategies() {
        let entries = [2, 3, 2, 3, 3, 2, 3];
        assert_eq!(
            literal_numerator(&entries, Exec::Sequential),
            literal_numerator(&entries, Exec::Parallel)
        );
    }

    #[test]
    fn numerator_invariants_hold_for_arbitrary_sequences() {
        // The trace identity holds for any nonnegative exponents.
        for entries in [vec![0, 0], vec![3, 0, 1], vec![4, 4, 1, 0, 2], vec![1, 5, 2, 2]] {
            let lit = literal_numerator(&entries, Exec::Sequential);
            assert_eq!(lit, transfer_numerator(&entries));
            assert!(lit.is_rational());
            let d = BigInt::from(10u32).pow(entries.len() as u32) << sum_of(&entries);
            let trace = lit.exact_div_int(&d).unwrap();
            assert_eq!(trace.a, BigInt::from(slword::trace_of_sequence(&entries)));
        }
    }

    /// Term of the transfer-matrix expansion before relabelling: `S` indexes
    /// the rows, so factors pair with `Sᶜ` and exponents with `n_{i−1}`.
    fn expansion_term(entries: &[u64], s: SubsetMask) -> QuadInt {
        let k = s.k();
        let r = run_statistic(s);
        let xi2 = &QuadInt::xi() + &QuadInt::from_int(2);
        let xi_bar2 = &QuadInt::xi_bar() + &QuadInt::from_int(2);
        let prev = |i: u32| entries[((i + k - 1) % k) as usize];
        let xi_exp: u64 = (0..k).filter(|&i| !s.contains(i)).map(prev).sum();
        let xi_bar_exp: u64 = (0..k).filter(|&i| s.contains(i)).map(prev).sum();
        let weight = BigInt::from(3u32).pow(r) << (k - r);
        let t = &xi2.pow((k - s.len()) as u64) * &xi_bar2.pow(s.len() as u64);
        let t = &t * &QuadInt::xi().pow(xi_exp);
        (&t * &QuadInt::xi_bar().pow(xi_bar_exp)).scale(&weight)
    }

    /// The relabelling `S ↦ {i − 1 : i ∈ Sᶜ}` is a bijection that keeps
    /// `r(S)` and turns each expansion term into the subset-form term.
    #[test]
    fn shift_permutation_maps_expansion_terms() {
        for entries in [
            vec![1u64, 2],
            vec![1, 1, 2],
            vec![2, 3, 3, 2, 3],
            vec![3, 4, 4, 3, 4, 3, 4],
        ] {
            let k = entries.len() as u32;
            let sum_n = sum_of(&entries);
            let tables = LiteralTables::new(k as usize, sum_n);
            let shift = |s: SubsetMask| {
                let c = s.complement().bits();
                let rotated = (c >> 1) | ((c & 1) << (k - 1));
                SubsetMask::new(k, rotated).unwrap()
            };
            let mut seen = std::collections::HashSet::new();
            let mut expansion_sum = QuadInt::zero();
            for bits in 0..1u64 << k {
                let s = SubsetMask::new(k, bits).unwrap();
                let t = shift(s);
                assert_eq!(run_statistic(s), run_statistic(t));
                assert!(seen.insert(t.bits()));
                let term = expansion_term(&entries, s);
                assert_eq!(term, tables.term(&entries, t, sum_n));
                expansion_sum += &term;
            }
            assert_eq!(expansion_sum, transfer_numerator(&entries));
            assert_eq!(expansion_sum, literal_numerator(&entries, Exec::Sequential));
        }
    }
}
