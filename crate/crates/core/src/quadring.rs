//! Exact arithmetic in ℤ[√5].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// `numerator / divisor` was requested but the divisor does not divide both
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{numerator} is not divisible by {divisor} (remainders {rem_a}, {rem_b})")]
pub struct DivisibilityError {
    pub numerator: QuadInt,
    pub divisor: BigInt,
    pub rem_a: BigInt,
    pub rem_b: BigInt,
}

/// `a + b√5` with unbounded integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: BigInt::zero(),
        }
    }

    /// ξ = 3 + √5.
    pub fn xi() -> Self {
        QuadInt::new(3, 1)
    }

    /// ξ̄ = 3 − √5.
    pub fn xi_bar() -> Self {
        QuadInt::new(3, -1)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(5) * &self.b * &self.b
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    /// Exact division by a positive rational integer.
    pub fn exact_div_int(&self, d: &BigInt) -> Result<QuadInt, DivisibilityError> {
        assert!(d.is_positive(), "divisor must be positive");
        let (qa, ra) = self.a.div_rem(d);
        let (qb, rb) = self.b.div_rem(d);
        if ra.is_zero() && rb.is_zero() {
            Ok(QuadInt { a: qa, b: qb })
        } else {
            Err(DivisibilityError {
                numerator: self.clone(),
                divisor: d.clone(),
                rem_a: ra,
                rem_b: rb,
            })
        }
    }
}

impl Zero for QuadInt {
    fn zero() -> Self {
        QuadInt::default()
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadInt {
    fn one() -> Self {
        QuadInt::from_int(1)
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(mut self, rhs: QuadInt) -> QuadInt {
        self += &rhs;
        self
    }
}

impl AddAssign<&QuadInt> for QuadInt {
    fn add_assign(&mut self, rhs: &QuadInt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        &self - &rhs
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        // (a+b√5)(c+d√5) = (ac+5bd) + (ad+bc)√5
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad = &self.a * &rhs.b;
        let bc = &self.b * &rhs.a;
        QuadInt {
            a: ac + bd * 5u32,
            b: ad + bc,
        }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        &self * &rhs
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}√5", self.a, -&self.b)
        } else {
            write!(f, "{}+{}√5", self.a, self.b)
        }
    }
}
