//! σδ-linear systems σ(Y) = A·Y, δ(Y) = B·Y over Q(x,t): integrability,
//! specialization to pure difference / differential systems, and the
//! conjugation equivalence between δ-systems at shifted parameters.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::rational::{rat, Rat};
use crate::ring::Ring;
use crate::theta::SigmaDeltaRing;

/// σ(Y) = A·Y, δ(Y) = B·Y, with a denominator witness h ∈ Q[t][x]: every
/// denominator appearing in A, A⁻¹, B divides a product of σ-shifts of h.
#[derive(Clone, PartialEq, Debug)]
pub struct SigmaDeltaSystem {
    pub n: usize,
    pub a: Matrix<RatFunc>,
    pub b: Matrix<RatFunc>,
    pub h: Poly,
}

/// A pure difference system σ(Y) = A_spec·Y over Q(x).
#[derive(Clone, PartialEq, Debug)]
pub struct DifferenceSystem {
    pub n: usize,
    pub a_spec: Matrix<RatFunc>,
}

/// A pure differential system δ(Y) = B_spec·Y over Q(t).
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialSystem {
    pub n: usize,
    pub b_spec: Matrix<RatFunc>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum IntegrabilityOutcome {
    Pass,
    Fail(Matrix<RatFunc>),
}

#[derive(Clone, PartialEq, Debug)]
pub enum ConjugationOutcome {
    Pass,
    Fail(u32, Matrix<RatFunc>),
}

impl SigmaDeltaSystem {
    pub fn new(a: Matrix<RatFunc>, b: Matrix<RatFunc>, h: Poly) -> Result<Self> {
        if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
            return Err(Error::ShapeError(format!(
                "A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.det()?.is_zero() {
            return Err(Error::InvalidSystem("det(A) = 0".into()));
        }
        if h.is_zero() {
            return Err(Error::InvalidSystem("denominator witness h = 0".into()));
        }
        Ok(SigmaDeltaSystem {
            n: a.rows(),
            a,
            b,
            h,
        })
    }

    /// Substitutes x = v into a matrix over Q(x,t).
    fn subst_x(m: &Matrix<RatFunc>, v: &Rat) -> Result<Matrix<RatFunc>> {
        m.try_map(&|f: &RatFunc| f.eval_var("x", v))
    }

    fn subst_t(m: &Matrix<RatFunc>, v: &Rat) -> Result<Matrix<RatFunc>> {
        m.try_map(&|f: &RatFunc| f.eval_var("t", v))
    }
}

/// Pass iff σ(B)·A − δ(A) − A·B = 0 identically.
pub fn check_integrability(s: &SigmaDeltaSystem) -> Result<IntegrabilityOutcome> {
    let sigma_b = s.b.map(&|f: &RatFunc| f.sigma());
    let delta_a = s.a.map(&|f: &RatFunc| f.delta());
    let residual = sigma_b
        .mul(&s.a)?
        .sub(&delta_a)?
        .sub(&s.a.mul(&s.b)?)?;
    if residual == Matrix::zero(s.n, s.n) {
        Ok(IntegrabilityOutcome::Pass)
    } else {
        Ok(IntegrabilityOutcome::Fail(residual))
    }
}

/// t ↦ c1 in A. Requires h(c1) nonzero and the specialized A nonsingular.
pub fn specialize_t(s: &SigmaDeltaSystem, c1: &Rat) -> Result<DifferenceSystem> {
    let h_spec = s.h.subst_var("t", &Poly::constant(c1.clone()));
    if h_spec.is_zero() {
        return Err(Error::InvalidSpecialization(format!(
            "denominator witness {} vanishes at t = {}",
            s.h, c1
        )));
    }
    let a_spec = SigmaDeltaSystem::subst_t(&s.a, c1).map_err(|e| match e {
        Error::SingularSpecialization(m) => Error::InvalidSpecialization(m),
        e => e,
    })?;
    if a_spec.det()?.is_zero() {
        return Err(Error::SingularSpecialization(format!(
            "det(A) vanishes at t = {}",
            c1
        )));
    }
    Ok(DifferenceSystem {
        n: s.n,
        a_spec,
    })
}

/// x ↦ c2 in B. Requires h(c2 + i) ≠ 0 for every integer i.
pub fn specialize_x(s: &SigmaDeltaSystem, c2: &Rat) -> Result<DifferentialSystem> {
    if !shift_orbit_nonvanishing(&s.h, c2)? {
        return Err(Error::InvalidSpecialization(format!(
            "denominator witness {} vanishes on the shift orbit of x = {}",
            s.h, c2
        )));
    }
    let b_spec = SigmaDeltaSystem::subst_x(&s.b, c2).map_err(|e| match e {
        Error::SingularSpecialization(m) => Error::InvalidSpecialization(m),
        e => e,
    })?;
    Ok(DifferentialSystem {
        n: s.n,
        b_spec,
    })
}

/// True iff h(c2 + i) ≠ 0 (as an element of Q[t]) for every integer i.
/// An x-root r of h kills the orbit only when h(x=r) vanishes identically in
/// t, so it suffices to find the common rational x-roots and test r − c2 ∈ ℤ.
pub fn shift_orbit_nonvanishing(h: &Poly, c2: &Rat) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.degree_in("x") == 0 {
        return Ok(true);
    }
    // candidate roots: specialize t until the x-polynomial is nonzero
    let mut t0 = rat(0);
    let candidates = loop {
        let p = h.subst_var("t", &Poly::constant(t0.clone()));
        if !p.is_zero() {
            break p.rational_roots()?;
        }
        t0 += rat(1);
    };
    for r in candidates {
        let at_root = h.subst_var("x", &Poly::constant(r.clone()));
        if at_root.is_zero() {
            let diff = &r - c2;
            if diff.is_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For 1 ≤ s ≤ s_max, with P_s = A(c+s−1)···A(c), verifies the conjugation
/// identity B(c+s)·P_s = δ(P_s) + P_s·B(c) exactly over Q(t).
pub fn conjugation_shift_check(
    s: &SigmaDeltaSystem,
    c: &Rat,
    s_max: u32,
) -> Result<ConjugationOutcome> {
    let b_c = SigmaDeltaSystem::subst_x(&s.b, c).map_err(invalid)?;
    let mut p = Matrix::<RatFunc>::identity(s.n);
    for step in 1..=s_max {
        let at = c + rat(step as i64 - 1);
        let a_i = SigmaDeltaSystem::subst_x(&s.a, &at).map_err(invalid)?;
        if a_i.det()?.is_zero() {
            return Err(Error::InvalidSpecialization(format!(
                "det(A) vanishes at x = {}",
                at
            )));
        }
        p = a_i.mul(&p)?;
        let b_cs = SigmaDeltaSystem::subst_x(&s.b, &(c + rat(step as i64))).map_err(invalid)?;
        let delta_p = p.map(&|f: &RatFunc| f.delta());
        let residual = b_cs.mul(&p)?.sub(&delta_p)?.sub(&p.mul(&b_c)?)?;
        if residual != Matrix::zero(s.n, s.n) {
            return Ok(ConjugationOutcome::Fail(step, residual));
        }
    }
    Ok(ConjugationOutcome::Pass)
}

fn invalid(e: Error) -> Error {
    match e {
        Error::SingularSpecialization(m) => Error::InvalidSpecialization(m),
        e => e,
    }
}

/// The second-order system satisfied by consecutive Chebyshev polynomials
/// Y = (T_{x−1}, T_x)ᵗ:
///   A = [[0, 1], [−1, 2t]]
///   B = (1/(1−t²))·[[(x−1)t, −(x−1)], [x, −xt]]
///   h = 1 − t²
pub fn chebyshev_system() -> SigmaDeltaSystem {
    let t = RatFunc::var("t");
    let x = RatFunc::var("x");
    let one = RatFunc::one();
    let h_rf = one.sub(&t.mul(&t)); // 1 - t²
    let hinv = h_rf.try_inv().expect("1-t^2 is nonzero");
    let xm1 = x.sub(&one);
    let a = Matrix::from_rows(vec![
        vec![RatFunc::zero(), one.clone()],
        vec![one.neg(), t.add(&t)],
    ])
    .expect("2x2");
    let b = Matrix::from_rows(vec![
        vec![xm1.mul(&t).mul(&hinv), xm1.neg().mul(&hinv)],
        vec![x.mul(&hinv), x.neg().mul(&t).mul(&hinv)],
    ])
    .expect("2x2");
    let h = Poly::one().sub(&Poly::var("t").pow(2));
    SigmaDeltaSystem::new(a, b, h).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    fn rf(n: i64) -> RatFunc {
        RatFunc::int(n)
    }

    #[test]
    fn chebyshev_is_integrable() {
        let s = chebyshev_system();
        assert_eq!(check_integrability(&s).unwrap(), IntegrabilityOutcome::Pass);
    }

    #[test]
    fn trivial_and_failing_integrability() {
        // A = I, B = 0 passes
        let s = SigmaDeltaSystem::new(
            Matrix::identity(2),
            Matrix::zero(2, 2),
            Poly::one(),
        )
        .unwrap();
        assert_eq!(check_integrability(&s).unwrap(), IntegrabilityOutcome::Pass);
        // A = I, B = diag(x, 0) fails with residual diag(1, 0)
        let b = Matrix::from_rows(vec![
            vec![RatFunc::var("x"), rf(0)],
            vec![rf(0), rf(0)],
        ])
        .unwrap();
        let s = SigmaDeltaSystem::new(Matrix::identity(2), b, Poly::one()).unwrap();
        match check_integrability(&s).unwrap() {
            IntegrabilityOutcome::Fail(r) => {
                let expect = Matrix::from_rows(vec![
                    vec![rf(1), rf(0)],
                    vec![rf(0), rf(0)],
                ])
                .unwrap();
                assert_eq!(r, expect);
            }
            _ => panic!("expected Fail"),
        }
    }

    #[test]
    fn specialize_t_examples() {
        let s = chebyshev_system();
        let d = specialize_t(&s, &rat(2)).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![rf(0), rf(1)],
            vec![rf(-1), rf(4)],
        ])
        .unwrap();
        assert_eq!(d.a_spec, expect);
        assert!(matches!(
            specialize_t(&s, &rat(1)),
            Err(Error::InvalidSpecialization(_))
        ));
        // det(A) vanishing at the point
        let a = Matrix::from_rows(vec![
            vec![RatFunc::var("t"), rf(0)],
            vec![rf(0), rf(1)],
        ])
        .unwrap();
        let s2 = SigmaDeltaSystem::new(a, Matrix::zero(2, 2), Poly::one()).unwrap();
        assert!(matches!(
            specialize_t(&s2, &rat(0)),
            Err(Error::SingularSpecialization(_))
        ));
    }

    #[test]
    fn specialize_x_examples() {
        let s = chebyshev_system();
        let d = specialize_x(&s, &rat_frac(1, 3)).unwrap();
        // first entry: (1/3 − 1)t/(1−t²)
        let t = RatFunc::var("t");
        let hinv = RatFunc::one().sub(&t.mul(&t)).try_inv().unwrap();
        let expect00 = RatFunc::constant(rat_frac(-2, 3)).mul(&t).mul(&hinv);
        assert_eq!(*d.b_spec.at(0, 0), expect00);
        let expect10 = RatFunc::constant(rat_frac(1, 3)).mul(&hinv);
        assert_eq!(*d.b_spec.at(1, 0), expect10);
        // h = x(x−1), c2 = 5 hits the orbit
        let h = Poly::var("x").mul(&Poly::var("x").sub(&Poly::one()));
        let s2 = SigmaDeltaSystem::new(
            Matrix::identity(2),
            Matrix::zero(2, 2),
            h,
        )
        .unwrap();
        assert!(matches!(
            specialize_x(&s2, &rat(5)),
            Err(Error::InvalidSpecialization(_))
        ));
        // h = x − 3, c2 = 1/2 misses the orbit
        let s3 = SigmaDeltaSystem::new(
            Matrix::identity(2),
            Matrix::zero(2, 2),
            Poly::var("x").sub(&Poly::int(3)),
        )
        .unwrap();
        assert!(specialize_x(&s3, &rat_frac(1, 2)).is_ok());
    }

    #[test]
    fn orbit_condition() {
        let x2m2 = Poly::var("x").pow(2).sub(&Poly::int(2));
        assert!(shift_orbit_nonvanishing(&x2m2, &rat(0)).unwrap());
        let xxm1 = Poly::var("x").mul(&Poly::var("x").sub(&Poly::one()));
        assert!(!shift_orbit_nonvanishing(&xxm1, &rat(5)).unwrap());
        let h_t = Poly::one().sub(&Poly::var("t").pow(2));
        assert!(shift_orbit_nonvanishing(&h_t, &rat_frac(7, 2)).unwrap());
        assert!(shift_orbit_nonvanishing(&Poly::zero(), &rat(0)).is_err());
        // stability under c2 -> c2 + 1
        assert_eq!(
            shift_orbit_nonvanishing(&xxm1, &rat(5)).unwrap(),
            shift_orbit_nonvanishing(&xxm1, &rat(6)).unwrap()
        );
    }

    #[test]
    fn conjugation_check_chebyshev() {
        let s = chebyshev_system();
        assert_eq!(
            conjugation_shift_check(&s, &rat(0), 5).unwrap(),
            ConjugationOutcome::Pass
        );
    }

    #[test]
    fn conjugation_check_trivial_and_corrupted() {
        // A = I, B constant in x
        let t = RatFunc::var("t");
        let b = Matrix::from_rows(vec![
            vec![t.clone(), rf(1)],
            vec![rf(0), t.clone()],
        ])
        .unwrap();
        let s = SigmaDeltaSystem::new(Matrix::identity(2), b, Poly::one()).unwrap();
        assert_eq!(
            conjugation_shift_check(&s, &rat_frac(3, 7), 4).unwrap(),
            ConjugationOutcome::Pass
        );
        // sign-flipped Chebyshev B fails at s = 1
        let c = chebyshev_system();
        let s2 = SigmaDeltaSystem::new(c.a.clone(), c.b.neg(), c.h.clone()).unwrap();
        match conjugation_shift_check(&s2, &rat(0), 3).unwrap() {
            ConjugationOutcome::Fail(1, _) => {}
            o => panic!("expected Fail at s=1, got {:?}", o),
        }
    }
}
