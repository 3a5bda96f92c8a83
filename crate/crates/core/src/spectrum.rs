//! The simple length spectrum of the modular torus, the Φ-injectivity scan,
//! and the cross-check of Im(Φ) against the Markov tree.
//!
//! Necklaces are enumerated through their `(x, y, m)` parameters. The block
//! matrix `B_n = L(LR)^n R` is entrywise nondecreasing in `n` and `B_n ≥ I`,
//! so a necklace of length `k` with entries `≥ m` has trace at least
//! `tr(B_m^k)`. That bound, nondecreasing in both `m` and `k`, decides where
//! the parameter loops stop; each evaluated necklace is checked against it.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::markov;
use crate::mat2::Mat2;
use crate::necklace::{Necklace, NecklaceParams};
use crate::par::{self, Exec};
use crate::phi::{self, PhiConfig, PhiError};
use crate::slword;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Phi(#[from] PhiError),
    #[error("enumeration incomplete: trace {trace} of {necklace} is below the pruning bound {lower_bound}")]
    EnumerationIncomplete {
        necklace: Necklace,
        trace: BigUint,
        lower_bound: BigUint,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanConfig {
    pub phi: PhiConfig,
    /// Strategy for distributing necklaces across workers.
    pub exec: Exec,
}

/// A domain necklace with its Φ value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceValue {
    pub necklace: Necklace,
    pub params: NecklaceParams,
    pub phi: BigUint,
}

impl NecklaceValue {
    pub fn trace(&self) -> BigUint {
        &self.phi * 3u32
    }
}

struct Candidate {
    params: NecklaceParams,
    lower_bound: BigUint,
}

fn trace_of(m: &Mat2<BigInt>) -> BigUint {
    m.trace().to_biguint().expect("nonnegative matrix")
}

/// Parameters of every necklace whose trace lower bound is `<= 3·phi_bound`,
/// in `(m, x + y, y)` order.
fn candidates(phi_bound: &BigUint) -> Vec<Candidate> {
    let trace_bound = phi_bound * 3u32;
    let mut out = Vec::new();
    for m in 0u64.. {
        let block = slword::block_matrix(m);
        if trace_of(&block) > trace_bound {
            break;
        }
        if m == 0 {
            out.push(Candidate {
                params: NecklaceParams { x: 1, y: 0, m: 0 },
                lower_bound: trace_of(&block),
            });
            continue;
        }
        let mut power = block.clone();
        for len in 1u64.. {
            let lower_bound = trace_of(&power);
            if lower_bound > trace_bound {
                break;
            }
            for y in 0..len {
                let params = NecklaceParams { x: len - y, y, m };
                if params.validate().is_ok() {
                    out.push(Candidate {
                        params,
                        lower_bound: lower_bound.clone(),
                    });
                }
            }
            power = power.mul(&block);
        }
    }
    out
}

/// Every domain necklace with `Φ <= phi_bound`, sorted by `(Φ, necklace)`.
pub fn scan(phi_bound: &BigUint, cfg: &ScanConfig) -> Result<Vec<NecklaceValue>, SpectrumError> {
    let cands = candidates(phi_bound);
    let evaluated = par::map_collect(cfg.exec, &cands, |c| -> Result<NecklaceValue, SpectrumError> {
        let necklace = Necklace::from_params(c.params).map_err(PhiError::from)?;
        let phi = phi::phi_with(&necklace, &cfg.phi)?;
        let trace = &phi * 3u32;
        if trace < c.lower_bound {
            return Err(SpectrumError::EnumerationIncomplete {
                necklace,
                trace,
                lower_bound: c.lower_bound.clone(),
            });
        }
        Ok(NecklaceValue {
            necklace,
            params: c.params,
            phi,
        })
    });
    let mut values = Vec::with_capacity(evaluated.len());
    for v in evaluated {
        let v = v?;
        if v.phi <= *phi_bound {
            values.push(v);
        }
    }
    values.sort_by(|a, b| a.phi.cmp(&b.phi).then_with(|| a.necklace.cmp(&b.necklace)));
    Ok(values)
}

/// Distinct necklaces sharing one Φ value. A collision would contradict
/// injectivity of Φ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCollision {
    pub phi: BigUint,
    pub necklaces: Vec<Necklace>,
}

fn collisions(values: &[NecklaceValue]) -> Vec<PhiCollision> {
    values
        .chunk_by(|a, b| a.phi == b.phi)
        .filter(|group| group.len() > 1)
        .map(|group| PhiCollision {
            phi: group[0].phi.clone(),
            necklaces: group.iter().map(|v| v.necklace.clone()).collect(),
        })
        .collect()
}

/// One length of the simple length spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub trace: BigUint,
    pub phi: BigUint,
    pub length: f64,
    /// 6 for `[0]` and `[1]`, 12 otherwise.
    pub multiplicity: u32,
    pub source: Necklace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleSpectrum {
    /// Sorted by trace, equal traces adjacent.
    pub entries: Vec<SpectrumEntry>,
    pub ties: Vec<PhiCollision>,
}

fn multiplicity(n: &Necklace) -> u32 {
    match n.entries() {
        [0] | [1] => 6,
        _ => 12,
    }
}

pub fn simple_spectrum(phi_bound: &BigUint, cfg: &ScanConfig) -> Result<SimpleSpectrum, SpectrumError> {
    let values = scan(phi_bound, cfg)?;
    let ties = collisions(&values);
    let entries = values
        .into_iter()
        .map(|v| {
            let trace = v.trace();
            let length = slword::theta_length(&trace).expect("domain traces are at least 3");
            SpectrumEntry {
                trace,
                length,
                multiplicity: multiplicity(&v.necklace),
                phi: v.phi,
                source: v.necklace,
            }
        })
        .collect();
    Ok(SimpleSpectrum { entries, ties })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    pub phi_bound: BigUint,
    /// Number of necklaces with `Φ <= phi_bound`.
    pub scanned: usize,
    pub collisions: Vec<PhiCollision>,
}

pub fn verify_injectivity(phi_bound: &BigUint, cfg: &ScanConfig) -> Result<InjectivityReport, SpectrumError> {
    let values = scan(phi_bound, cfg)?;
    Ok(InjectivityReport {
        phi_bound: phi_bound.clone(),
        scanned: values.len(),
        collisions: collisions(&values),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub phi_bound: BigUint,
    /// Distinct Φ values `<= phi_bound`, ascending.
    pub phi_values: Vec<BigUint>,
    pub markov_numbers: Vec<BigUint>,
    pub only_phi: Vec<BigUint>,
    pub only_markov: Vec<BigUint>,
}

impl CrossCheckReport {
    pub fn agrees(&self) -> bool {
        self.only_phi.is_empty() && self.only_markov.is_empty()
    }
}

/// Compares `{Φ(n) <= phi_bound}` with the Markov numbers up to the same bound.
pub fn cross_check_markov(phi_bound: &BigUint, cfg: &ScanConfig) -> Result<CrossCheckReport, SpectrumError> {
    let phi_set: BTreeSet<BigUint> = scan(phi_bound, cfg)?.into_iter().map(|v| v.phi).collect();
    let markov_set: BTreeSet<BigUint> = markov::markov_numbers(phi_bound).into_iter().collect();
    Ok(CrossCheckReport {
        phi_bound: phi_bound.clone(),
        only_phi: phi_set.difference(&markov_set).cloned().collect(),
        only_markov: markov_set.difference(&phi_set).cloned().collect(),
        phi_values: phi_set.into_iter().collect(),
        markov_numbers: markov_set.into_iter().collect(),
    })
}
