//! 2×2 matrices over a commutative ring.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::quadring::QuadInt;

/// The operations [`Mat2`] needs from its entries.
pub trait Ring: Clone + Zero + One {
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for QuadInt {
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Row-major `(a b; c d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Ring> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat2 {
            a: self.a.mul_ref(&rhs.a).add_ref(&self.b.mul_ref(&rhs.c)),
            b: self.a.mul_ref(&rhs.b).add_ref(&self.b.mul_ref(&rhs.d)),
            c: self.c.mul_ref(&rhs.a).add_ref(&self.d.mul_ref(&rhs.c)),
            d: self.c.mul_ref(&rhs.b).add_ref(&self.d.mul_ref(&rhs.d)),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> T {
        self.a.add_ref(&self.d)
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }
}

impl Mat2<BigInt> {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}
