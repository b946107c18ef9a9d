//! The Laurent extension Q(x,t)(s)[η, η⁻¹] with s² = t²−1,
//! σ(x) = x+1, σ(η) = (t+s)·η, δ = d/dt, δ(η) = (x−1)·η/s.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quadext::QuadExt;
use crate::ratfunc::RatFunc;
use crate::ring::Ring;

pub type KElem = QuadExt<RatFunc>;

/// The shipped discriminant t² − 1.
pub fn disc() -> RatFunc {
    let t = RatFunc::var("t");
    t.mul(&t).sub(&RatFunc::one())
}

/// t + s as an element of Q(x,t)(s).
pub fn t_plus_s() -> KElem {
    QuadExt::new(RatFunc::var("t"), RatFunc::one(), disc())
}

/// t − s.
pub fn t_minus_s() -> KElem {
    t_plus_s().conj()
}

/// Laurent polynomial in η over Q(x,t)(s). Invariant: no zero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TowerElem {
    coeffs: BTreeMap<i64, KElem>,
}

impl TowerElem {
    pub fn from_coeff(k: i64, c: KElem) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        TowerElem { coeffs }
    }

    pub fn scalar(c: KElem) -> Self {
        Self::from_coeff(0, c)
    }

    pub fn eta() -> Self {
        Self::from_coeff(1, QuadExt::one())
    }

    pub fn eta_pow(k: i64) -> Self {
        Self::from_coeff(k, QuadExt::one())
    }

    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, k: i64) -> KElem {
        self.coeffs.get(&k).cloned().unwrap_or_else(QuadExt::zero)
    }

    fn normalize(mut self) -> Self {
        self.coeffs.retain(|_, c| !c.is_zero());
        self
    }

    /// Units of the Laurent ring are exactly c·η^k with c ≠ 0.
    pub fn is_laurent_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// σ: shifts x in the coefficients and multiplies η^k by (t+s)^k.
    pub fn sigma(&self) -> Self {
        let tps = t_plus_s();
        let tms = t_minus_s(); // (t+s)⁻¹
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let shifted = c.map(&|f: &RatFunc| f.shift_x());
            let factor = if k >= 0 {
                tps.pow(k as u32)
            } else {
                tms.pow((-k) as u32)
            };
            coeffs.insert(k, shifted.mul(&factor));
        }
        TowerElem { coeffs }.normalize()
    }

    /// σ⁻¹: x → x−1 and η^k gains (t−s)^k.
    pub fn sigma_inv(&self) -> Self {
        let tps = t_plus_s();
        let tms = t_minus_s();
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let shifted = c.map(&|f: &RatFunc| f.unshift_x());
            let factor = if k >= 0 {
                tms.pow(k as u32)
            } else {
                tps.pow((-k) as u32)
            };
            coeffs.insert(k, shifted.mul(&factor));
        }
        TowerElem { coeffs }.normalize()
    }

    /// δ: termwise, δ(c·η^k) = (δ(c) + c·k·(x−1)/s)·η^k.
    pub fn delta(&self) -> Self {
        let s = QuadExt::<RatFunc>::sqrt_d(disc());
        let s_inv = s.try_inv().expect("s is a unit");
        let xm1 = QuadExt::scalar(RatFunc::var("x").sub(&RatFunc::one()));
        let rate = xm1.mul(&s_inv);
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let dc = c.derive(&|f: &RatFunc| f.d_dt()).expect("d is a unit");
            let scaled = c.mul(&rate).mul(&QuadExt::scalar(RatFunc::int(k)));
            let total = dc.add(&scaled);
            if !total.is_zero() {
                coeffs.insert(k, total);
            }
        }
        TowerElem { coeffs }
    }
}

impl Ring for TowerElem {
    fn zero() -> Self {
        TowerElem {
            coeffs: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        TowerElem::scalar(QuadExt::one())
    }
    fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &other.coeffs {
            let entry = coeffs.entry(k).or_insert_with(QuadExt::zero);
            *entry = entry.add(c);
        }
        TowerElem { coeffs }.normalize()
    }
    fn neg(&self) -> Self {
        TowerElem {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c.neg())).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, KElem> = BTreeMap::new();
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                let entry = coeffs.entry(ka + kb).or_insert_with(QuadExt::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        TowerElem { coeffs }.normalize()
    }
    fn try_inv(&self) -> Result<Self> {
        if self.coeffs.len() != 1 {
            return Err(Error::NotAUnit);
        }
        let (&k, c) = self.coeffs.iter().next().unwrap();
        Ok(TowerElem::from_coeff(-k, c.try_inv()?))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::fmt::Display for TowerElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&k, c)| {
                let cs = format!("{}", c);
                let coeff = if cs.contains('+') || cs.contains('-') || cs.contains('*') {
                    format!("({})", cs)
                } else {
                    cs
                };
                match k {
                    0 => coeff,
                    1 if coeff == "1" => "eta".to_string(),
                    1 => format!("{}*eta", coeff),
                    _ if coeff == "1" => format!("eta^{}", k),
                    _ => format!("{}*eta^{}", coeff, k),
                }
            })
            .collect();
        write!(f, "{}", parts.join("+").replace("+-", "-"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn unit_recognition() {
        let three_eta2 = TowerElem::from_coeff(2, QuadExt::scalar(RatFunc::int(3)));
        assert!(three_eta2.is_laurent_unit());
        let mixed = TowerElem::eta().add(&TowerElem::eta_pow(2));
        assert!(!mixed.is_laurent_unit());
        assert!(mixed.try_inv().is_err());
        let tps_etainv = TowerElem::from_coeff(-1, t_plus_s());
        assert!(tps_etainv.is_laurent_unit());
        // inverse really inverts
        let inv = tps_etainv.try_inv().unwrap();
        assert_eq!(tps_etainv.mul(&inv), TowerElem::one());
    }

    #[test]
    fn eta_plus_one_not_unit() {
        let a = TowerElem::eta().add(&TowerElem::one());
        assert!(matches!(a.try_inv(), Err(Error::NotAUnit)));
    }

    #[test]
    fn t_s_product() {
        let p = TowerElem::scalar(t_plus_s()).mul(&TowerElem::scalar(t_minus_s()));
        assert_eq!(p, TowerElem::one());
    }

    #[test]
    fn sigma_delta_commute_on_eta() {
        let e = TowerElem::eta();
        assert_eq!(e.sigma().delta(), e.delta().sigma());
        assert_eq!(e.sigma().sigma_inv(), e);
        // σ(η) = (t+s)η
        assert_eq!(e.sigma(), TowerElem::from_coeff(1, t_plus_s()));
        // δ(η) = (x−1)/s · η
        let s = QuadExt::<RatFunc>::sqrt_d(disc());
        let want = TowerElem::from_coeff(
            1,
            QuadExt::scalar(RatFunc::var("x").sub(&RatFunc::one()))
                .mul(&s.try_inv().unwrap()),
        );
        assert_eq!(e.delta(), want);
    }

    #[test]
    fn sigma_delta_commute_random_shape() {
        // a = (t+s)·η⁻¹ + x·η²
        let a = TowerElem::from_coeff(-1, t_plus_s()).add(&TowerElem::from_coeff(
            2,
            QuadExt::scalar(RatFunc::var("x")),
        ));
        assert_eq!(a.sigma().delta(), a.delta().sigma());
        // Leibniz
        let b = TowerElem::eta().add(&TowerElem::scalar(t_minus_s()));
        let lhs = a.mul(&b).delta();
        let rhs = a.delta().mul(&b).add(&a.mul(&b.delta()));
        assert_eq!(lhs, rhs);
        let _ = rat(0);
    }
}
