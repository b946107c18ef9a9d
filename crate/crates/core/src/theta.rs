//! The σ and δ actions and the commutative semigroup Θ = {σ^i δ^j}.

use serde::{Deserialize, Serialize};

use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::tower::TowerElem;

/// A ring carrying a commuting automorphism σ and derivation δ.
pub trait SigmaDeltaRing: Ring {
    fn sigma(&self) -> Self;
    fn sigma_inv(&self) -> Self;
    fn delta(&self) -> Self;

    fn apply_theta(&self, w: ThetaWord) -> Self {
        let mut v = self.clone();
        for _ in 0..w.sigma_power {
            v = v.sigma();
        }
        for _ in 0..w.delta_power {
            v = v.delta();
        }
        v
    }
}

impl SigmaDeltaRing for RatFunc {
    fn sigma(&self) -> Self {
        self.shift_x()
    }
    fn sigma_inv(&self) -> Self {
        self.unshift_x()
    }
    fn delta(&self) -> Self {
        self.d_dt()
    }
}

impl SigmaDeltaRing for TowerElem {
    fn sigma(&self) -> Self {
        TowerElem::sigma(self)
    }
    fn sigma_inv(&self) -> Self {
        TowerElem::sigma_inv(self)
    }
    fn delta(&self) -> Self {
        TowerElem::delta(self)
    }
}

/// The word σ^i δ^j. Commutation makes this normal form exhaustive.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct ThetaWord {
    pub sigma_power: u32,
    pub delta_power: u32,
}

impl ThetaWord {
    pub fn new(i: u32, j: u32) -> Self {
        ThetaWord {
            sigma_power: i,
            delta_power: j,
        }
    }

    pub fn identity() -> Self {
        ThetaWord::new(0, 0)
    }

    pub fn total(&self) -> u32 {
        self.sigma_power + self.delta_power
    }
}

impl std::fmt::Display for ThetaWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.sigma_power, self.delta_power) {
            (0, 0) => write!(f, "id"),
            (i, 0) => write!(f, "sigma^{}", i),
            (0, j) => write!(f, "delta^{}", j),
            (i, j) => write!(f, "sigma^{}*delta^{}", i, j),
        }
    }
}

/// All words with i + j ≤ L, by total degree then by σ-power; (0,0) first.
pub fn enumerate_theta(l: u32) -> Vec<ThetaWord> {
    let mut out = Vec::with_capacity(((l + 1) * (l + 2) / 2) as usize);
    for total in 0..=l {
        for i in 0..=total {
            out.push(ThetaWord::new(i, total - i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadext::QuadExt;
    use crate::tower::t_plus_s;

    #[test]
    fn enumeration_order() {
        assert_eq!(enumerate_theta(0), vec![ThetaWord::identity()]);
        assert_eq!(
            enumerate_theta(1),
            vec![
                ThetaWord::new(0, 0),
                ThetaWord::new(0, 1),
                ThetaWord::new(1, 0)
            ]
        );
        assert_eq!(enumerate_theta(2).len(), 6);
        assert_eq!(enumerate_theta(2)[0], ThetaWord::identity());
    }

    #[test]
    fn theta_on_ratfunc() {
        // σδ(x·t) = σ(x) = x+1
        let f = RatFunc::var("x").mul(&RatFunc::var("t"));
        let g = f.apply_theta(ThetaWord::new(1, 1));
        assert_eq!(g, RatFunc::var("x").add(&RatFunc::one()));
        // identity word
        assert_eq!(f.apply_theta(ThetaWord::identity()), f);
        // σ²(1/x) = 1/(x+2)
        let invx = RatFunc::var("x").try_inv().unwrap();
        assert_eq!(
            invx.apply_theta(ThetaWord::new(2, 0)),
            RatFunc::var("x").add(&RatFunc::int(2)).try_inv().unwrap()
        );
        // constants fixed
        let c = RatFunc::int(5);
        assert_eq!(c.sigma(), c);
        assert!(c.delta().is_zero());
    }

    #[test]
    fn sigma_on_tower() {
        let eta = TowerElem::eta();
        assert_eq!(eta.apply_theta(ThetaWord::new(1, 0)), TowerElem::from_coeff(1, t_plus_s()));
    }

    #[test]
    fn constants_of_qxt() {
        let is_const = |f: &RatFunc| f.sigma() == *f && f.delta().is_zero();
        assert!(is_const(&RatFunc::int(7)));
        assert!(!is_const(&RatFunc::var("x")));
        assert!(!is_const(&RatFunc::var("t")));
        assert!(!is_const(&RatFunc::var("x").add(&RatFunc::var("t"))));
        let _: QuadExt<RatFunc> = QuadExt::one();
    }
}
