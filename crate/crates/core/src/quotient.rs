//! The specialized Picard-Vessiot coordinate ring at t = c: Laurent
//! polynomials in X₁₁ over Q(√(c²−1))[u]/(u² − 2c·u + 1), where u stands for
//! X₁₁X₂₂ and the relations force X₁₂ = X₁₁⁻¹, X₂₁ = X₁₁·u⁻¹.
//!
//! σ acts through X ↦ A(c)·X, which on the generators reads σ(X₁₁) = X₁₁·u⁻¹
//! and σ(u) = u; note u⁻¹ = 2c − u.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quadext::QuadExt;
use crate::rational::{rat, Rat};
use crate::ring::Ring;

type C = QuadExt<Rat>;

/// Coefficient e₀ + e₁·u with e₀, e₁ ∈ Q(√(c²−1)).
#[derive(Clone, PartialEq, Debug)]
struct UCoeff {
    e0: C,
    e1: C,
}

impl UCoeff {
    fn zero() -> Self {
        UCoeff {
            e0: QuadExt::zero(),
            e1: QuadExt::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.e0.is_zero() && self.e1.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        UCoeff {
            e0: self.e0.add(&o.e0),
            e1: self.e1.add(&o.e1),
        }
    }
    fn neg(&self) -> Self {
        UCoeff {
            e0: self.e0.neg(),
            e1: self.e1.neg(),
        }
    }
    /// Multiplication modulo u² = 2c·u − 1.
    fn mul(&self, o: &Self, two_c: &C) -> Self {
        let uu = self.e1.mul(&o.e1);
        UCoeff {
            e0: self.e0.mul(&o.e0).sub(&uu),
            e1: self
                .e0
                .mul(&o.e1)
                .add(&self.e1.mul(&o.e0))
                .add(&uu.mul(two_c)),
        }
    }
}

/// An element of the quotient ring at parameter c.
#[derive(Clone, PartialEq, Debug)]
pub struct QElem {
    c: Rat,
    // X₁₁ power -> coefficient
    terms: BTreeMap<i64, UCoeff>,
}

impl QElem {
    pub fn zero(c: &Rat) -> Self {
        QElem {
            c: c.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(c: &Rat, v: C) -> Self {
        let mut e = Self::zero(c);
        if !v.is_zero() {
            e.terms.insert(
                0,
                UCoeff {
                    e0: v,
                    e1: QuadExt::zero(),
                },
            );
        }
        e
    }

    pub fn one(c: &Rat) -> Self {
        Self::scalar(c, QuadExt::one())
    }

    pub fn u(c: &Rat) -> Self {
        let mut e = Self::zero(c);
        e.terms.insert(
            0,
            UCoeff {
                e0: QuadExt::zero(),
                e1: QuadExt::one(),
            },
        );
        e
    }

    /// u⁻¹ = 2c − u.
    pub fn u_inv(c: &Rat) -> Self {
        Self::scalar(c, QuadExt::scalar(c + c)).sub(&Self::u(c))
    }

    pub fn x11(c: &Rat) -> Self {
        let mut e = Self::zero(c);
        e.terms.insert(
            1,
            UCoeff {
                e0: QuadExt::one(),
                e1: QuadExt::zero(),
            },
        );
        e
    }

    fn two_c(&self) -> C {
        QuadExt::scalar(&self.c + &self.c)
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.c, o.c);
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            let e = terms.entry(*k).or_insert_with(UCoeff::zero);
            *e = e.add(v);
        }
        terms.retain(|_, v| !v.is_zero());
        QElem {
            c: self.c.clone(),
            terms,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QElem {
            c: self.c.clone(),
            terms: self.terms.iter().map(|(k, v)| (*k, v.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.c, o.c);
        let tc = self.two_c();
        let mut terms: BTreeMap<i64, UCoeff> = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &o.terms {
                let e = terms.entry(ka + kb).or_insert_with(UCoeff::zero);
                *e = e.add(&va.mul(vb, &tc));
            }
        }
        terms.retain(|_, v| !v.is_zero());
        QElem {
            c: self.c.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// σ: X₁₁^k picks up the factor u^{−k}; u and the constants are fixed.
    pub fn sigma(&self) -> Self {
        let mut out = Self::zero(&self.c);
        for (k, v) in &self.terms {
            let mut term = QElem {
                c: self.c.clone(),
                terms: BTreeMap::from([(*k, v.clone())]),
            };
            let factor = if *k >= 0 {
                Self::u_inv(&self.c)
            } else {
                Self::u(&self.c)
            };
            for _ in 0..k.unsigned_abs() {
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }
}

impl std::fmt::Display for QElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, v)| {
                let coeff = match (v.e0.is_zero(), v.e1.is_zero()) {
                    (false, true) => format!("{}", v.e0),
                    (true, false) => format!("({})*u", v.e1),
                    _ => format!("{}+({})*u", v.e0, v.e1),
                };
                match k {
                    0 => coeff,
                    1 => format!("({})*X11", coeff),
                    _ => format!("({})*X11^{}", coeff, k),
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum StabilityOutcome {
    Pass,
    Fail(String),
}

/// α = c + √(c²−1) as a coefficient; scalar when c² = 1.
pub fn alpha(c: &Rat) -> C {
    let d = c * c - rat(1);
    if num_traits::Zero::is_zero(&d) {
        QuadExt::scalar(c.clone())
    } else {
        QuadExt::new(c.clone(), rat(1), d)
    }
}

/// Checks σ(gen) = λ·gen in the quotient ring, with λ = α⁻¹·u⁻¹ — the
/// explicit unit exhibiting σ-stability of the ideal (u − α).
pub fn sigma_stability_check(c: &Rat, generator: &QElem) -> StabilityOutcome {
    let a = alpha(c);
    let lambda = QElem::scalar(c, a.try_inv().expect("alpha is a unit")).mul(&QElem::u_inv(c));
    let lhs = generator.sigma();
    let rhs = lambda.mul(generator);
    let residual = lhs.sub(&rhs);
    if residual.is_zero() {
        StabilityOutcome::Pass
    } else {
        StabilityOutcome::Fail(residual.to_string())
    }
}

/// The ideal generator u − α at t = c.
pub fn u_minus_alpha(c: &Rat) -> QElem {
    QElem::u(c).sub(&QElem::scalar(c, alpha(c)))
}

pub fn verify_sigma_stability(c: &Rat) -> Result<StabilityOutcome> {
    if (c * c) == rat(1) {
        return Err(Error::InvalidSpecialization(format!(
            "alpha degenerates at c = {}",
            c
        )));
    }
    Ok(sigma_stability_check(c, &u_minus_alpha(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    #[test]
    fn u_is_a_unit() {
        let c = rat(2);
        let prod = QElem::u(&c).mul(&QElem::u_inv(&c));
        assert_eq!(prod, QElem::one(&c));
    }

    #[test]
    fn sigma_is_multiplicative() {
        let c = rat(3);
        let a = QElem::x11(&c).add(&QElem::u(&c));
        let b = QElem::x11(&c).mul(&QElem::x11(&c)).sub(&QElem::one(&c));
        assert_eq!(a.mul(&b).sigma(), a.sigma().mul(&b.sigma()));
        // σ(u) = u
        assert_eq!(QElem::u(&c).sigma(), QElem::u(&c));
        // σ(X11) = X11·u⁻¹
        assert_eq!(
            QElem::x11(&c).sigma(),
            QElem::x11(&c).mul(&QElem::u_inv(&c))
        );
    }

    #[test]
    fn stability_pass_cases() {
        for c in [rat(2), rat(0), rat(3), rat_frac(5, 2)] {
            assert_eq!(
                verify_sigma_stability(&c).unwrap(),
                StabilityOutcome::Pass,
                "c = {}",
                c
            );
        }
    }

    #[test]
    fn stability_wrong_generator_fails() {
        let c = rat(2);
        let two_alpha = QElem::scalar(&c, alpha(&c).add(&alpha(&c)));
        let bad = QElem::u(&c).sub(&two_alpha);
        assert!(matches!(
            sigma_stability_check(&c, &bad),
            StabilityOutcome::Fail(_)
        ));
    }

    #[test]
    fn degenerate_alpha_rejected() {
        assert!(matches!(
            verify_sigma_stability(&rat(1)),
            Err(Error::InvalidSpecialization(_))
        ));
        assert!(matches!(
            verify_sigma_stability(&rat(-1)),
            Err(Error::InvalidSpecialization(_))
        ));
    }
}
