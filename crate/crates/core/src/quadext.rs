//! Quadratic extensions F(√d): elements a + b·s with s² = d.
//!
//! Generic over the base field so the same type serves Q(√(c²−1)) and
//! Q(x,t)(√(t²−1)). An element with b = 0 is treated as a base scalar and
//! compares equal across discriminants, which lets `zero()`/`one()` exist
//! without a discriminant in hand.

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct QuadExt<F: Ring> {
    pub a: F,
    pub b: F,
    pub d: F,
}

impl<F: Ring> QuadExt<F> {
    pub fn new(a: F, b: F, d: F) -> Self {
        QuadExt { a, b, d }
    }

    pub fn scalar(a: F) -> Self {
        QuadExt {
            a,
            b: F::zero(),
            d: F::zero(),
        }
    }

    /// The generator s = √d of the extension with discriminant d.
    pub fn sqrt_d(d: F) -> Self {
        QuadExt {
            a: F::zero(),
            b: F::one(),
            d,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero()
    }

    /// Discriminant of the (possibly mixed-scalar) pair, when compatible.
    fn join_d(&self, other: &Self) -> F {
        if self.is_scalar() {
            other.d.clone()
        } else {
            debug_assert!(
                other.is_scalar() || self.d == other.d,
                "mixed discriminants"
            );
            self.d.clone()
        }
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: self.b.neg(),
            d: self.d.clone(),
        }
    }

    /// Field norm a² − d·b².
    pub fn norm(&self) -> F {
        self.a
            .mul(&self.a)
            .sub(&self.d.mul(&self.b.mul(&self.b)))
    }

    /// Applies a base-field map to both components (and the discriminant).
    pub fn map<G: Ring>(&self, f: &dyn Fn(&F) -> G) -> QuadExt<G> {
        QuadExt {
            a: f(&self.a),
            b: f(&self.b),
            d: f(&self.d),
        }
    }

    /// Derivation extended by δ(s) = δ(d)/(2s) = δ(d)·s/(2d).
    /// `db` is the derivation on the base field.
    pub fn derive(&self, db: &dyn Fn(&F) -> F) -> Result<Self> {
        let da = db(&self.a);
        let dbb = db(&self.b);
        if self.b.is_zero() {
            return Ok(QuadExt {
                a: da,
                b: dbb,
                d: self.d.clone(),
            });
        }
        let dd = db(&self.d);
        let corr = self
            .b
            .mul(&dd)
            .mul(&self.d.add(&self.d).try_inv().map_err(|_| Error::NotAUnit)?);
        Ok(QuadExt {
            a: da,
            b: dbb.add(&corr),
            d: self.d.clone(),
        })
    }
}

impl<F: Ring> PartialEq for QuadExt<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.a != other.a || self.b != other.b {
            return false;
        }
        // scalars agree regardless of discriminant
        self.b.is_zero() || self.d == other.d
    }
}

impl<F: Ring> Ring for QuadExt<F> {
    fn zero() -> Self {
        QuadExt::scalar(F::zero())
    }
    fn one() -> Self {
        QuadExt::scalar(F::one())
    }
    fn add(&self, other: &Self) -> Self {
        let d = self.join_d(other);
        QuadExt {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
            d,
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: self.a.neg(),
            b: self.b.neg(),
            d: self.d.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let d = self.join_d(other);
        // (a + bs)(c + es) = ac + bed + (ae + bc)s
        QuadExt {
            a: self
                .a
                .mul(&other.a)
                .add(&self.b.mul(&other.b).mul(&d)),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.a)),
            d,
        }
    }
    fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        let ninv = n.try_inv().map_err(|_: Error| Error::NotAUnit)?;
        let c = self.conj();
        Ok(QuadExt {
            a: c.a.mul(&ninv),
            b: c.b.mul(&ninv),
            d: self.d.clone(),
        })
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<F: Ring + std::fmt::Display> std::fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_one() {
                return write!(f, "s");
            }
            return write!(f, "({})*s", self.b);
        }
        if self.b.is_one() {
            write!(f, "{}+s", self.a)
        } else {
            write!(f, "{}+({})*s", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::rational::{rat, rat_frac, Rat};

    fn over_q(a: Rat, b: Rat, d: Rat) -> QuadExt<Rat> {
        QuadExt::new(a, b, d)
    }

    #[test]
    fn norm_and_inverse() {
        // (2 + √3)(2 − √3) = 1
        let u = over_q(rat(2), rat(1), rat(3));
        assert_eq!(u.norm(), rat(1));
        assert_eq!(u.mul(&u.conj()), QuadExt::one());
        assert_eq!(u.try_inv().unwrap(), u.conj());
        assert!(QuadExt::<Rat>::zero().try_inv().is_err());
    }

    #[test]
    fn t_plus_s_times_t_minus_s() {
        // over Q(t) with s² = t²−1: (t+s)(t−s) = 1
        let t = RatFunc::var("t");
        let d = t.mul(&t).sub(&RatFunc::one());
        let tp = QuadExt::new(t.clone(), RatFunc::one(), d.clone());
        let tm = tp.conj();
        assert_eq!(tp.mul(&tm), QuadExt::one());
    }

    #[test]
    fn derivation_on_sqrt() {
        // δ(s) = t·s/(t²−1) for s = √(t²−1)
        let t = RatFunc::var("t");
        let d = t.mul(&t).sub(&RatFunc::one());
        let s = QuadExt::sqrt_d(d.clone());
        let ds = s.derive(&|f: &RatFunc| f.d_dt()).unwrap();
        let expect = QuadExt::new(
            RatFunc::zero(),
            t.mul(&d.try_inv().unwrap()),
            d.clone(),
        );
        assert_eq!(ds, expect);
        // Leibniz on (t+s)²
        let tp = QuadExt::new(t.clone(), RatFunc::one(), d.clone());
        let sq = tp.mul(&tp);
        let lhs = sq.derive(&|f: &RatFunc| f.d_dt()).unwrap();
        let dtp = tp.derive(&|f: &RatFunc| f.d_dt()).unwrap();
        let rhs = dtp.mul(&tp).add(&tp.mul(&dtp));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_mixing() {
        let half = QuadExt::scalar(rat_frac(1, 2));
        let u = over_q(rat(0), rat(1), rat(5));
        assert_eq!(half.mul(&u), over_q(rat(0), rat_frac(1, 2), rat(5)));
        assert_eq!(u.add(&QuadExt::zero()), u);
    }
}
