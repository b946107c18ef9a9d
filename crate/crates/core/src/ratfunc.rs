//! Rational functions in Q(x, t, ...): reduced fractions of [`Poly`].

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{rat, Rat};
use crate::ring::Ring;

/// A rational function num/den. Invariants: den != 0, gcd(num, den) = 1,
/// and den has grlex-leading coefficient 1.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(Poly::var(name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_constant() {
            self.num
                .as_constant()
                .map(|n| n / self.den.constant_term())
        } else {
            None
        }
    }

    /// sigma: x -> x + 1 (t and all other variables fixed).
    /// Substitution by a ring automorphism preserves reducedness; only the
    /// leading-coefficient normalization is redone.
    fn translated(&self, var: &str, image: &Poly) -> RatFunc {
        let num = self.num.subst_var(var, image);
        let den = self.den.subst_var(var, image);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn shift_x(&self) -> RatFunc {
        self.translated("x", &Poly::var("x").add(&Poly::one()))
    }

    /// sigma^{-1}: x -> x - 1.
    pub fn unshift_x(&self) -> RatFunc {
        self.translated("x", &Poly::var("x").sub(&Poly::one()))
    }

    /// delta: d/dt via the quotient rule. With n/d reduced and g = gcd(d, d'),
    /// the derivative is (n'·(d/g) − n·(d'/g)) / ((g/h)·(d/g)²) where h is the
    /// remaining common factor, which necessarily divides g.
    pub fn d_dt(&self) -> RatFunc {
        let dp = self.den.derivative("t");
        if dp.is_zero() {
            // denominator free of t; differentiating the numerator can still
            // surface a common factor (terms without t vanish)
            return RatFunc::reduced(self.num.derivative("t"), self.den.clone());
        }
        let g = self.den.gcd(&dp);
        let f = self.den.div_exact(&g).expect("gcd divides");
        let e = dp.div_exact(&g).expect("gcd divides");
        let num = self.num.derivative("t").mul(&f).sub(&self.num.mul(&e));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        let num = num.div_exact(&h).expect("gcd divides");
        let den = g.div_exact(&h).expect("gcd divides").mul(&f).mul(&f);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Substitutes a rational value for a variable; errors when the
    /// denominator vanishes at the point.
    pub fn eval_var(&self, var: &str, value: &Rat) -> Result<RatFunc> {
        let v = Poly::constant(value.clone());
        let den = self.den.subst_var(var, &v);
        if den.is_zero() {
            return Err(Error::SingularSpecialization(format!(
                "denominator {} vanishes at {} = {}",
                self.den, var, value
            )));
        }
        Ok(RatFunc::reduced(self.num.subst_var(var, &v), den))
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.num.degree_in(var).max(self.den.degree_in(var))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    // Henrici's algorithms: both operands are reduced, so only small gcds
    // are needed to keep the result reduced.
    fn add(&self, other: &Self) -> Self {
        let g = self.den.gcd(&other.den);
        if g.is_constant() {
            // coprime denominators: the sum is already reduced
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let d1g = self.den.div_exact(&g).expect("gcd divides");
        let d2g = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        if num.is_zero() {
            return RatFunc::zero();
        }
        // any common factor of num and the full denominator divides g
        let h = num.gcd(&g);
        let num = num.div_exact(&h).expect("gcd divides");
        let den = self.den.div_exact(&h).expect("gcd divides").mul(&d2g);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFunc::zero();
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self
            .num
            .div_exact(&g1)
            .expect("gcd divides")
            .mul(&other.num.div_exact(&g2).expect("gcd divides"));
        let den = self
            .den
            .div_exact(&g2)
            .expect("gcd divides")
            .mul(&other.den.div_exact(&g1).expect("gcd divides"));
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
    fn try_inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            if self.num.num_terms() > 1 {
                return write!(f, "{}", self.num);
            }
            return write!(f, "{}", self.num);
        }
        let n = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let d = if self.den.num_terms() > 1 {
            format!("({})", self.den)
        } else {
            format!("{}", self.den)
        };
        write!(f, "{}/{}", n, d)
    }
}
