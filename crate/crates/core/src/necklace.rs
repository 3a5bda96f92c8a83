//! Necklaces of nonnegative integers: canonical form, the small-variation and
//! primitivity predicates, the run-length bijection with {0,1}-necklaces, and
//! the `(x, y, m)` parametrization of primitive small-variation necklaces.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

/// Above this length `is_small_variation` switches from the quadratic
/// block-sum scan to the structural comparison against the stair necklace.
pub const BRUTE_FORCE_MAX_LEN: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NecklaceError {
    #[error("a necklace needs at least one entry")]
    Empty,
    #[error("entry {index} is zero; expected positive entries")]
    ZeroEntry { index: usize },
    #[error("entry {index} is {value}; expected 0 or 1")]
    NotBinary { index: usize, value: u64 },
    #[error("necklace has no entry equal to 1")]
    NoOne,
    #[error("invalid parameters (x={x}, y={y}, m={m}): {reason}")]
    InvalidParams {
        x: u64,
        y: u64,
        m: u64,
        reason: &'static str,
    },
    #[error("necklace is not in the domain: {0}")]
    NotInDomain(DomainViolation),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// The first membership predicate a necklace failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainViolation {
    /// More than two distinct values, or two values that are not consecutive.
    NotTwoConsecutiveValues,
    /// A zero entry in a necklace of length at least 2.
    ZeroEntry,
    NotSmallVariation,
    NotPrimitive,
}

impl fmt::Display for DomainViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainViolation::NotTwoConsecutiveValues => "entries are not two consecutive integers",
            DomainViolation::ZeroEntry => "entries must be positive unless the necklace is [0]",
            DomainViolation::NotSmallVariation => "not small variation",
            DomainViolation::NotPrimitive => "not primitive",
        };
        f.write_str(s)
    }
}

/// A cyclic class of finite sequences of nonnegative integers, stored as its
/// lexicographically least rotation. Equality is cyclic equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    entries: Vec<u64>,
}

/// Content parameters of a necklace in the domain: `x` copies of `m` and `y`
/// copies of `m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecklaceParams {
    pub x: u64,
    pub y: u64,
    pub m: u64,
}

impl NecklaceParams {
    pub fn new(x: u64, y: u64, m: u64) -> Result<Self, NecklaceError> {
        let p = NecklaceParams { x, y, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), NecklaceError> {
        let NecklaceParams { x, y, m } = *self;
        let err = |reason| Err(NecklaceError::InvalidParams { x, y, m, reason });
        if x == 0 {
            return err("x must be positive");
        }
        if y == 0 {
            return if x == 1 {
                Ok(())
            } else {
                err("with y = 0 only x = 1 is allowed")
            };
        }
        if m == 0 {
            return err("m must be positive when y > 0");
        }
        if x.gcd(&y) != 1 {
            return err("gcd(x, y) must be 1");
        }
        Ok(())
    }

    /// Necklace length `x + y`.
    pub fn necklace_len(&self) -> u64 {
        self.x + self.y
    }
}

/// Index of the lexicographically least rotation (two-pointer scan, linear time).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Canonical representative of the cyclic class of `seq`.
pub fn canonicalize(seq: &[u64]) -> Result<Necklace, NecklaceError> {
    if seq.is_empty() {
        return Err(NecklaceError::Empty);
    }
    let start = least_rotation(seq);
    let mut entries = Vec::with_capacity(seq.len());
    entries.extend_from_slice(&seq[start..]);
    entries.extend_from_slice(&seq[..start]);
    Ok(Necklace { entries })
}

/// Minimal cyclic period of a nonempty sequence, via the prefix function.
fn minimal_period(s: &[u64]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n];
    for q in 1..n {
        let mut k = fail[q - 1];
        while k > 0 && s[q] != s[k] {
            k = fail[k - 1];
        }
        if s[q] == s[k] {
            k += 1;
        }
        fail[q] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Lower stair sequence of the segment (0,0)-(x,y): horizontal steps become
/// `m`, vertical steps `m + 1`. Defined for any `x + y > 0`; the result is a
/// power of the coprime case when `gcd(x, y) > 1`.
pub fn stair_sequence(x: u64, y: u64, m: u64) -> Vec<u64> {
    let n = (x + y) as u128;
    let y = y as u128;
    (0..n)
        .map(|i| {
            let step = ((i + 1) * y) / n - (i * y) / n;
            m + step as u64
        })
        .collect()
}

impl Necklace {
    pub fn new(seq: Vec<u64>) -> Result<Self, NecklaceError> {
        canonicalize(&seq)
    }

    /// Entries in canonical rotation.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sum(&self) -> u128 {
        self.entries.iter().map(|&v| v as u128).sum()
    }

    pub fn is_primitive(&self) -> bool {
        minimal_period(&self.entries) == self.entries.len()
    }

    /// Every two cyclic blocks of equal size have sums differing by at most 1.
    pub fn is_small_variation(&self) -> bool {
        if self.len() <= BRUTE_FORCE_MAX_LEN {
            small_variation_by_blocks(&self.entries)
        } else {
            small_variation_by_structure(&self.entries)
        }
    }

    /// Θ: each entry `n` becomes `n - 1` zeros followed by a one.
    pub fn theta(&self) -> Result<Necklace, NecklaceError> {
        if let Some(index) = self.entries.iter().position(|&v| v == 0) {
            return Err(NecklaceError::ZeroEntry { index });
        }
        let total = usize::try_from(self.sum()).expect("theta image does not fit in memory");
        let mut out = Vec::with_capacity(total);
        for &n in &self.entries {
            out.extend(std::iter::repeat_n(0, (n - 1) as usize));
            out.push(1);
        }
        canonicalize(&out)
    }

    /// Inverse of [`Necklace::theta`]: run lengths of zeros, each plus one.
    pub fn theta_inverse(&self) -> Result<Necklace, NecklaceError> {
        if let Some((index, &value)) = self.entries.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(NecklaceError::NotBinary { index, value });
        }
        let first_one = self.entries.iter().position(|&v| v == 1).ok_or(NecklaceError::NoOne)?;
        let k = self.len();
        let mut out = Vec::new();
        let mut zeros = 0u64;
        for step in 1..=k {
            if self.entries[(first_one + step) % k] == 1 {
                out.push(zeros + 1);
                zeros = 0;
            } else {
                zeros += 1;
            }
        }
        canonicalize(&out)
    }

    /// The unique primitive small-variation necklace with the given content.
    pub fn from_params(p: NecklaceParams) -> Result<Necklace, NecklaceError> {
        p.validate()?;
        canonicalize(&stair_sequence(p.x, p.y, p.m))
    }

    /// Content parameters, after checking membership in the domain.
    pub fn to_params(&self) -> Result<NecklaceParams, NecklaceError> {
        let violation = |v| Err(NecklaceError::NotInDomain(v));
        if self.len() == 1 {
            return Ok(NecklaceParams {
                x: 1,
                y: 0,
                m: self.entries[0],
            });
        }
        let lo = *self.entries.iter().min().expect("nonempty");
        let hi = *self.entries.iter().max().expect("nonempty");
        if lo == hi {
            return violation(DomainViolation::NotPrimitive);
        }
        if hi != lo + 1 {
            return violation(DomainViolation::NotTwoConsecutiveValues);
        }
        if lo == 0 {
            return violation(DomainViolation::ZeroEntry);
        }
        if !self.is_small_variation() {
            return violation(DomainViolation::NotSmallVariation);
        }
        if !self.is_primitive() {
            return violation(DomainViolation::NotPrimitive);
        }
        let x = self.entries.iter().filter(|&&v| v == lo).count() as u64;
        let y = self.len() as u64 - x;
        Ok(NecklaceParams { x, y, m: lo })
    }

    /// Membership in the domain of Φ.
    pub fn is_in_domain(&self) -> bool {
        self.to_params().is_ok()
    }
}

fn small_variation_by_blocks(s: &[u64]) -> bool {
    let k = s.len();
    let mut prefix = Vec::with_capacity(2 * k + 1);
    prefix.push(0u128);
    for i in 0..2 * k {
        let last = *prefix.last().expect("nonempty");
        prefix.push(last + s[i % k] as u128);
    }
    // Blocks of size >= k differ from size (s mod k) blocks by whole periods.
    (1..k).all(|size| {
        let (lo, hi) = (0..k)
            .map(|i| prefix[i + size] - prefix[i])
            .fold((u128::MAX, 0u128), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo <= 1
    })
}

/// Small variation via uniqueness of the small-variation arrangement per
/// content: compare against the stair necklace with the same counts.
fn small_variation_by_structure(s: &[u64]) -> bool {
    let lo = *s.iter().min().expect("nonempty");
    let hi = *s.iter().max().expect("nonempty");
    if lo == hi {
        return true;
    }
    if hi != lo + 1 {
        return false;
    }
    let x = s.iter().filter(|&&v| v == lo).count() as u64;
    let y = s.len() as u64 - x;
    let expected = canonicalize(&stair_sequence(x, y, lo)).expect("nonempty");
    canonicalize(s).expect("nonempty") == expected
}

/// Every domain necklace with `m <= max_m` and `x + y <= max_xy`, ordered
/// lexicographically by `(m, x + y, y)`.
pub fn enumerate(max_m: u64, max_xy: u64) -> impl Iterator<Item = Necklace> {
    (0..=max_m).flat_map(move |m| {
        (1..=max_xy).flat_map(move |len| {
            (0..len).filter_map(move |y| {
                let p = NecklaceParams { x: len - y, y, m };
                p.validate()
                    .ok()
                    .map(|_| canonicalize(&stair_sequence(p.x, p.y, p.m)).expect("nonempty"))
            })
        })
    })
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Necklace {
    type Err = NecklaceError;

    /// Parses `"[n1,n2,...]"`, whitespace tolerated, any rotation accepted.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |position: usize, message: &str| NecklaceError::Parse {
            position,
            message: message.to_string(),
        };
        let open = text
            .find(|c: char| !c.is_whitespace())
            .ok_or_else(|| parse_err(text.len(), "expected '['"))?;
        if !text[open..].starts_with('[') {
            return Err(parse_err(open, "expected '['"));
        }
        let close = text.rfind(|c: char| !c.is_whitespace()).expect("nonblank");
        if close == open || !text[close..].starts_with(']') {
            return Err(parse_err(close + 1, "expected ']'"));
        }
        let body_start = open + 1;
        let body = &text[body_start..close];
        if body.trim().is_empty() {
            return Err(NecklaceError::Empty);
        }
        let mut entries = Vec::new();
        let mut offset = body_start;
        for item in body.split(',') {
            let trimmed = item.trim();
            let lead = item.len() - item.trim_start().len();
            if trimmed.is_empty() {
                return Err(parse_err(offset + lead, "expected a nonnegative integer"));
            }
            if let Some(bad) = trimmed.find(|c: char| !c.is_ascii_digit()) {
                return Err(parse_err(offset + lead + bad, "unexpected character"));
            }
            let value = trimmed
                .parse::<u64>()
                .map_err(|_| parse_err(offset + lead, "integer out of range"))?;
            entries.push(value);
            offset += item.len() + 1;
        }
        canonicalize(&entries)
    }
}
