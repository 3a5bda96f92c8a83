//! Bound arguments: plain decimal, `AeB` or `A^B`.

use num_bigint::BigUint;
use num_traits::{One, Pow};

/// Ceiling for `--phi-bound`; the scan cost grows quickly beyond it.
pub const MAX_PHI_BOUND_EXP: u32 = 40;
/// Ceiling for `--bound` on tree enumeration.
pub const MAX_MARKOV_BOUND_EXP: u32 = 60;

pub fn parse_phi_bound(s: &str) -> Result<BigUint, String> {
    parse_bounded(s, MAX_PHI_BOUND_EXP)
}

pub fn parse_markov_bound(s: &str) -> Result<BigUint, String> {
    parse_bounded(s, MAX_MARKOV_BOUND_EXP)
}

fn parse_bounded(s: &str, max_exp: u32) -> Result<BigUint, String> {
    let value = parse(s)?;
    if value < BigUint::one() {
        return Err("bound must be at least 1".into());
    }
    if value > BigUint::from(10u32).pow(max_exp) {
        return Err(format!("bound exceeds the limit 10^{max_exp}"));
    }
    Ok(value)
}

fn parse(s: &str) -> Result<BigUint, String> {
    let s = s.trim();
    let decimal = |t: &str| -> Result<BigUint, String> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("`{s}` is not a nonnegative integer"));
        }
        t.parse::<BigUint>().map_err(|e| e.to_string())
    };
    let exponent = |t: &str| -> Result<u32, String> {
        match t.parse::<u32>() {
            Ok(e) if e <= 1000 => Ok(e),
            _ => Err(format!("exponent `{t}` out of range")),
        }
    };
    if let Some((base, exp)) = s.split_once('^') {
        Ok(Pow::pow(decimal(base)?, exponent(exp)?))
    } else if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        Ok(decimal(mantissa)? * Pow::pow(BigUint::from(10u32), exponent(exp)?))
    } else {
        decimal(s)
    }
}
