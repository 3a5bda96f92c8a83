//! Words in the turn letters `L`, `R`, their SL(2,ℤ) matrices, traces, and
//! the trace-to-length map on the modular torus.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::mat2::Mat2;
use crate::necklace::{Necklace, NecklaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlwordError {
    #[error("the reduced word needs positive entries; entry {index} is zero")]
    ZeroEntryInReduced { index: usize },
    #[error("empty word")]
    EmptyWord,
    #[error("invalid letter {0:?} at position {1}")]
    InvalidLetter(char, usize),
    #[error("trace {0} is below 2; no hyperbolic length")]
    TraceBelowTwo(BigUint),
    #[error(transparent)]
    Necklace(#[from] NecklaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn swapped(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    pub fn matrix(self) -> Mat2<BigInt> {
        match self {
            Letter::L => l_matrix(),
            Letter::R => r_matrix(),
        }
    }
}

/// Nonempty word over `{L, R}`. Traces only depend on its cyclic class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LRWord(Vec<Letter>);

/// Which of the two block shapes to spell a necklace with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordVariant {
    /// `L(LR)^n R` per entry.
    Standard,
    /// `R(RL)^(n-1) L` per entry.
    Reduced,
}

pub fn l_matrix() -> Mat2<BigInt> {
    Mat2::from_i64(1, 1, 0, 1)
}

pub fn r_matrix() -> Mat2<BigInt> {
    Mat2::from_i64(1, 0, 1, 1)
}

impl LRWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, SlwordError> {
        if letters.is_empty() {
            return Err(SlwordError::EmptyWord);
        }
        Ok(LRWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, j: usize) -> LRWord {
        let j = j % self.0.len();
        LRWord(self.0[j..].iter().chain(&self.0[..j]).copied().collect())
    }

    /// Exchanges `L` and `R`; conjugation by `(0 1; 1 0)`.
    pub fn swapped(&self) -> LRWord {
        LRWord(self.0.iter().map(|l| l.swapped()).collect())
    }

    /// Reversed and swapped; its matrix is the transpose.
    pub fn transposed(&self) -> LRWord {
        LRWord(self.0.iter().rev().map(|l| l.swapped()).collect())
    }
}

impl fmt::Display for LRWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LRWord {
    type Err = SlwordError;

    /// Letters `L`/`R`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (i, c) in s.char_indices() {
            match c {
                'L' => letters.push(Letter::L),
                'R' => letters.push(Letter::R),
                c if c.is_whitespace() => {}
                c => return Err(SlwordError::InvalidLetter(c, i)),
            }
        }
        LRWord::new(letters)
    }
}

pub fn word_from_necklace(n: &Necklace, variant: WordVariant) -> Result<LRWord, SlwordError> {
    let mut letters = Vec::new();
    for (index, &e) in n.entries().iter().enumerate() {
        match variant {
            WordVariant::Standard => {
                letters.push(Letter::L);
                for _ in 0..e {
                    letters.extend([Letter::L, Letter::R]);
                }
                letters.push(Letter::R);
            }
            WordVariant::Reduced => {
                if e == 0 {
                    return Err(SlwordError::ZeroEntryInReduced { index });
                }
                letters.push(Letter::R);
                for _ in 1..e {
                    letters.extend([Letter::R, Letter::L]);
                }
                letters.push(Letter::L);
            }
        }
    }
    LRWord::new(letters)
}

/// Left-to-right product of the letter matrices.
pub fn matrix_of_word(w: &LRWord) -> Mat2<BigInt> {
    let m = w.letters().iter().fold(Mat2::identity(), |acc, l| acc.mul(&l.matrix()));
    debug_assert!(m.det().is_one());
    m
}

/// `L (LR)^n R`.
pub fn block_matrix(n: u64) -> Mat2<BigInt> {
    l_matrix().mul(&l_matrix().mul(&r_matrix()).pow(n)).mul(&r_matrix())
}

/// `R (RL)^n L`.
pub fn swapped_block_matrix(n: u64) -> Mat2<BigInt> {
    r_matrix().mul(&r_matrix().mul(&l_matrix()).pow(n)).mul(&l_matrix())
}

fn product_of_blocks(entries: &[u64], block: impl Fn(u64) -> Mat2<BigInt>) -> Mat2<BigInt> {
    let mut cache: HashMap<u64, Mat2<BigInt>> = HashMap::new();
    entries.iter().fold(Mat2::identity(), |acc, &e| {
        let b = cache.entry(e).or_insert_with(|| block(e));
        acc.mul(b)
    })
}

/// Trace of `L(LR)^{n_1}R ⋯ L(LR)^{n_k}R` for any nonnegative exponents,
/// without spelling out the word.
pub fn trace_of_sequence(entries: &[u64]) -> BigUint {
    to_biguint(product_of_blocks(entries, block_matrix).trace())
}

pub fn trace_of_necklace(n: &Necklace) -> BigUint {
    trace_of_sequence(n.entries())
}

fn to_biguint(v: BigInt) -> BigUint {
    v.to_biguint().expect("traces of L/R products are positive")
}

/// Hyperbolic length `2·acosh(t/2)` of a curve whose matrix has trace `t`.
pub fn theta_length(t: &BigUint) -> Result<f64, SlwordError> {
    if *t < BigUint::from(2u32) {
        return Err(SlwordError::TraceBelowTwo(t.clone()));
    }
    if t.bits() <= 52 {
        let t = t.to_f64().expect("fits");
        return Ok(2.0 * (t / 2.0).acosh());
    }
    // acosh(t/2) = ln t + O(t^-2) and t^-2 < 2^-104 here.
    Ok(2.0 * ln_biguint(t))
}

fn ln_biguint(t: &BigUint) -> f64 {
    let shift = t.bits().saturating_sub(64);
    let top = (t >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Checks the two trace identities behind the multiplicity bookkeeping for a
/// positive-entry necklace:
/// the standard word of `n` and of `theta(n)` have equal trace, and the
/// standard and reduced words keep their trace when `L` and `R` are swapped.
pub fn trace_pair_check(n: &Necklace) -> Result<bool, SlwordError> {
    if let Some(index) = n.entries().iter().position(|&e| e == 0) {
        return Err(SlwordError::ZeroEntryInReduced { index });
    }
    let theta = n.theta()?;
    let theta_equal = trace_of_necklace(n) == trace_of_necklace(&theta);

    let standard = product_of_blocks(n.entries(), block_matrix);
    let standard_swapped = product_of_blocks(n.entries(), swapped_block_matrix);
    let reduced: Vec<u64> = n.entries().iter().map(|&e| e - 1).collect();
    let reduced_word = product_of_blocks(&reduced, swapped_block_matrix);
    let reduced_swapped = product_of_blocks(&reduced, block_matrix);
    let duality = standard.trace() == standard_swapped.trace() && reduced_word.trace() == reduced_swapped.trace();
    Ok(theta_equal && duality)
}

pub fn has_unit_determinant(m: &Mat2<BigInt>) -> bool {
    m.det().is_one()
}
