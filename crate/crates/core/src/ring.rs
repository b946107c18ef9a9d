//! Minimal commutative-ring abstraction used by the matrix and dependence code.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A commutative ring with exact equality. `try_inv` returns the inverse when
/// the element is a unit and `Error::NotAUnit` otherwise.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn try_inv(&self) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// `self^e` for signed `e`; requires a unit when `e < 0`.
    fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.try_inv()?.pow((-e) as u32))
        }
    }
}

/// Embeds p/q into any ring containing Q.
pub fn from_rat<F: Ring>(c: &Rat) -> F {
    let p = F::from_int(i64::try_from(c.numer().clone()).expect("small numerator"));
    let q = F::from_int(i64::try_from(c.denom().clone()).expect("small denominator"));
    p.mul(&q.try_inv().expect("nonzero denominator"))
}

impl Ring for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn try_inv(&self) -> Result<Self> {
        if <Rat as Zero>::is_zero(self) {
            Err(Error::NotAUnit)
        } else {
            Ok(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        crate::rational::rat(n)
    }
}
