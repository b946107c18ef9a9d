//! Galois groups of the Chebyshev family: the full group G, the specialized
//! stabilizers stab(𝐦) (difference side) and stab(𝐧) (differential side),
//! Picard-Vessiot relation checks, and the product decomposition
//! G = stab(𝐦)·stab(𝐧).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::quadext::QuadExt;
use crate::ratfunc::RatFunc;
use crate::rational::{rat, Rat};
use crate::ring::Ring;
use crate::system::{chebyshev_system, specialize_t};
use crate::tower::{t_minus_s, t_plus_s, TowerElem};

// ---------------------------------------------------------------------------
// the symbolic parameter ring Q[ξ, ξ⁻¹], optionally modulo ξ^q = 1

/// Laurent polynomial in one unit parameter ξ; a declared modulus folds
/// exponents modulo q (the relation ξ^q = 1).
#[derive(Clone, Debug)]
pub struct LaurentXi {
    coeffs: BTreeMap<i64, Rat>,
    modulus: Option<u32>,
}

impl LaurentXi {
    pub fn constant(c: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !Ring::is_zero(&c) {
            coeffs.insert(0, c);
        }
        LaurentXi {
            coeffs,
            modulus: None,
        }
    }

    pub fn xi_pow(k: i64, modulus: Option<u32>) -> Self {
        LaurentXi {
            coeffs: BTreeMap::from([(k, rat(1))]),
            modulus,
        }
        .normalize()
    }

    pub fn xi(modulus: Option<u32>) -> Self {
        Self::xi_pow(1, modulus)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    fn normalize(mut self) -> Self {
        if let Some(q) = self.modulus {
            let mut folded: BTreeMap<i64, Rat> = BTreeMap::new();
            for (k, c) in std::mem::take(&mut self.coeffs) {
                let e = folded.entry(k.rem_euclid(q as i64)).or_insert_with(|| rat(0));
                *e += c;
            }
            self.coeffs = folded;
        }
        self.coeffs.retain(|_, c| !Ring::is_zero(c));
        self
    }

    fn join_modulus(&self, other: &Self) -> Option<u32> {
        match (self.modulus, other.modulus) {
            (Some(a), Some(b)) => {
                debug_assert_eq!(a, b, "mixed xi moduli");
                Some(a)
            }
            (Some(a), None) => Some(a),
            (None, m) => m,
        }
    }
}

impl PartialEq for LaurentXi {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Ring for LaurentXi {
    fn zero() -> Self {
        LaurentXi::constant(rat(0))
    }
    fn one() -> Self {
        LaurentXi::constant(rat(1))
    }
    fn add(&self, other: &Self) -> Self {
        let modulus = self.join_modulus(other);
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            let e = coeffs.entry(*k).or_insert_with(|| rat(0));
            *e += c;
        }
        LaurentXi { coeffs, modulus }.normalize()
    }
    fn neg(&self) -> Self {
        LaurentXi {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            modulus: self.modulus,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let modulus = self.join_modulus(other);
        let mut coeffs: BTreeMap<i64, Rat> = BTreeMap::new();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let e = coeffs.entry(ka + kb).or_insert_with(|| rat(0));
                *e += ca * cb;
            }
        }
        LaurentXi { coeffs, modulus }.normalize()
    }
    fn try_inv(&self) -> Result<Self> {
        if self.coeffs.len() != 1 {
            return Err(Error::NotAUnit);
        }
        let (&k, c) = self.coeffs.iter().next().unwrap();
        Ok(LaurentXi {
            coeffs: BTreeMap::from([(-k, c.recip())]),
            modulus: self.modulus,
        }
        .normalize())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl std::fmt::Display for LaurentXi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if c < &rat(0) {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (*k, mag == rat(1)) {
                (0, _) => write!(f, "{}", crate::rational::rat_to_string(&mag))?,
                (1, true) => write!(f, "xi")?,
                (1, false) => write!(f, "{}*xi", crate::rational::rat_to_string(&mag))?,
                (e, true) => write!(f, "xi^{}", e)?,
                (e, false) => write!(f, "{}*xi^{}", crate::rational::rat_to_string(&mag), e)?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// algebraic subgroups of GL₂

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatalogTag {
    FullG,
    DiagTorus,
    DiagTorusMuQ(u32),
    DihedralMuQ(u32),
    Trivial,
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TemplateShape {
    Diag,
    Anti,
}

/// A one-parameter matrix template: diag(ξ, ξ⁻¹) or antidiag(ξ, ξ⁻¹),
/// with ξ free or constrained by ξ^q = 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Template {
    pub shape: TemplateShape,
    pub order: Option<u32>,
}

impl Template {
    pub fn matrix(&self) -> Matrix<LaurentXi> {
        let xi = LaurentXi::xi(self.order);
        let xi_inv = LaurentXi::xi_pow(-1, self.order);
        match self.shape {
            TemplateShape::Diag => Matrix::from_rows(vec![
                vec![xi, LaurentXi::zero()],
                vec![LaurentXi::zero(), xi_inv],
            ]),
            TemplateShape::Anti => Matrix::from_rows(vec![
                vec![LaurentXi::zero(), xi],
                vec![xi_inv, LaurentXi::zero()],
            ]),
        }
        .expect("2x2")
    }
}

/// Defining equations in g₁₁, g₁₂, g₂₁, g₂₂ (membership = all vanish and the
/// determinant is a unit), plus the parametric catalog form.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgSubgroup {
    pub tag: CatalogTag,
    pub equations: Vec<Poly>,
    pub templates: Vec<Template>,
}

fn g(name: &str) -> Poly {
    Poly::var(name)
}

fn full_g_equations() -> Vec<Poly> {
    vec![
        g("g11").mul(&g("g12")),
        g("g21").mul(&g("g22")),
        g("g11").mul(&g("g22")).add(&g("g12").mul(&g("g21"))).sub(&Poly::one()),
    ]
}

/// G = {diag(ξ, ξ⁻¹)} ∪ {antidiag(ξ, ξ⁻¹)}.
pub fn chebyshev_full_group() -> AlgSubgroup {
    AlgSubgroup {
        tag: CatalogTag::FullG,
        equations: full_g_equations(),
        templates: vec![
            Template {
                shape: TemplateShape::Diag,
                order: None,
            },
            Template {
                shape: TemplateShape::Anti,
                order: None,
            },
        ],
    }
}

pub fn diag_torus() -> AlgSubgroup {
    AlgSubgroup {
        tag: CatalogTag::DiagTorus,
        equations: vec![
            g("g12"),
            g("g21"),
            g("g11").mul(&g("g22")).sub(&Poly::one()),
        ],
        templates: vec![Template {
            shape: TemplateShape::Diag,
            order: None,
        }],
    }
}

pub fn diag_torus_muq(q: u32) -> AlgSubgroup {
    let mut eqs = diag_torus().equations;
    eqs.push(g("g11").pow(q).sub(&Poly::one()));
    AlgSubgroup {
        tag: CatalogTag::DiagTorusMuQ(q),
        equations: eqs,
        templates: vec![Template {
            shape: TemplateShape::Diag,
            order: Some(q),
        }],
    }
}

pub fn dihedral_muq(q: u32) -> AlgSubgroup {
    let mut eqs = full_g_equations();
    eqs.push(g("g11").add(&g("g12")).pow(q).sub(&Poly::one()));
    AlgSubgroup {
        tag: CatalogTag::DihedralMuQ(q),
        equations: eqs,
        templates: vec![
            Template {
                shape: TemplateShape::Diag,
                order: Some(q),
            },
            Template {
                shape: TemplateShape::Anti,
                order: Some(q),
            },
        ],
    }
}

pub fn trivial_group() -> AlgSubgroup {
    AlgSubgroup {
        tag: CatalogTag::Trivial,
        equations: vec![
            g("g12"),
            g("g21"),
            g("g11").sub(&Poly::one()),
            g("g22").sub(&Poly::one()),
        ],
        templates: vec![Template {
            shape: TemplateShape::Diag,
            order: Some(1),
        }],
    }
}

// ---------------------------------------------------------------------------
// group elements and membership

#[derive(Clone, PartialEq, Debug)]
pub enum GroupElement {
    Rational(Matrix<Rat>),
    Symbolic(Matrix<LaurentXi>),
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::Rational(Matrix::identity(2))
    }

    pub fn diag(a: Rat) -> Result<Self> {
        let inv = Ring::try_inv(&a)?;
        Ok(GroupElement::Rational(
            Matrix::from_rows(vec![vec![a, rat(0)], vec![rat(0), inv]]).expect("2x2"),
        ))
    }

    pub fn anti(a: Rat) -> Result<Self> {
        let inv = Ring::try_inv(&a)?;
        Ok(GroupElement::Rational(
            Matrix::from_rows(vec![vec![rat(0), a], vec![inv, rat(0)]]).expect("2x2"),
        ))
    }

    pub fn symbolic_template(t: &Template) -> Self {
        GroupElement::Symbolic(t.matrix())
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupElement::Rational(m) => write!(f, "{}", m),
            GroupElement::Symbolic(m) => write!(f, "{}", m),
        }
    }
}

fn eval_equations<F: Ring>(eqs: &[Poly], m: &Matrix<F>) -> bool {
    let assign = |name: &str| -> F {
        match name {
            "g11" => m.at(0, 0).clone(),
            "g12" => m.at(0, 1).clone(),
            "g21" => m.at(1, 0).clone(),
            "g22" => m.at(1, 1).clone(),
            other => panic!("unexpected variable {}", other),
        }
    };
    eqs.iter().all(|p| p.eval_ring(&assign).is_zero())
}

/// True iff every defining equation vanishes at g and det(g) is a unit.
pub fn membership(gel: &GroupElement, h: &AlgSubgroup) -> bool {
    match gel {
        GroupElement::Rational(m) => {
            m.det().map(|d| !Ring::is_zero(&d)).unwrap_or(false)
                && eval_equations(&h.equations, m)
        }
        GroupElement::Symbolic(m) => {
            m.det().map(|d| d.try_inv().is_ok()).unwrap_or(false)
                && eval_equations(&h.equations, m)
        }
    }
}

// ---------------------------------------------------------------------------
// root-of-unity classification and the stab catalog

/// Multiplicative order of α = c1 + √(c1²−1) when finite. For rational c1
/// the finite cases are exactly c1 ∈ {0, ±1/2, ±1}, all of order ≤ 6, so
/// testing n ≤ 12 exactly in Q(√(c1²−1)) decides.
pub fn root_of_unity_order(c1: &Rat) -> Option<u32> {
    let a = crate::quotient::alpha(c1);
    let mut p = a.clone();
    for n in 1..=12u32 {
        if p == QuadExt::one() {
            return Some(n);
        }
        p = p.mul(&a);
    }
    None
}

/// stab(𝐦) for the difference system at t = c1: the diagonal torus, cut to
/// μ_q when α is a q-th root of unity.
pub fn stab_sigma(c1: &Rat) -> Result<AlgSubgroup> {
    specialize_t(&chebyshev_system(), c1)?;
    Ok(match root_of_unity_order(c1) {
        None => diag_torus(),
        Some(q) => diag_torus_muq(q),
    })
}

/// Marker for a specialization point known only to be irrational.
#[derive(Clone, PartialEq, Debug)]
pub enum C2 {
    Rational(Rat),
    NonRational,
}

/// stab(𝐧) for the differential system at x = c2: all of G when c2 ∉ ℚ,
/// otherwise the dihedral group over μ_q for c2 = p/q in lowest terms.
pub fn stab_delta(c2: &C2) -> AlgSubgroup {
    match c2 {
        C2::NonRational => chebyshev_full_group(),
        C2::Rational(r) => {
            let q = u32::try_from(r.denom().clone()).expect("small denominator");
            dihedral_muq(q)
        }
    }
}

// ---------------------------------------------------------------------------
// Picard-Vessiot relations in the tower

#[derive(Clone, PartialEq, Debug)]
pub enum PvOutcome {
    Pass,
    Fail(String, String),
}

/// The fundamental matrix W = U·d^{x} in tower coordinates:
/// W₁₁ = η⁻¹, W₁₂ = η, W₂₁ = (t−s)η⁻¹, W₂₂ = (t+s)η.
pub fn pv_fundamental_matrix() -> Matrix<TowerElem> {
    Matrix::from_rows(vec![
        vec![TowerElem::eta_pow(-1), TowerElem::eta()],
        vec![
            TowerElem::from_coeff(-1, t_minus_s()),
            TowerElem::from_coeff(1, t_plus_s()),
        ],
    ])
    .expect("2x2")
}

/// Verifies f₁(W) = f₂(W) = f₃(W) = 0 for the ideal generators
/// f₁ = X₁₁X₁₂ − 1, f₂ = X₂₁X₂₂ − 1, f₃ = (X₁₁X₂₂)² − 2t·X₁₁X₂₂ + 1,
/// and that σ(W) = A·W, δ(W) = B·W entrywise in the tower.
pub fn verify_pv_relations_on(w: &Matrix<TowerElem>) -> Result<PvOutcome> {
    let one = TowerElem::one();
    let two_t = TowerElem::scalar(QuadExt::scalar(RatFunc::var("t").mul(&RatFunc::int(2))));
    let f1 = w.at(0, 0).mul(w.at(0, 1)).sub(&one);
    if !f1.is_zero() {
        return Ok(PvOutcome::Fail("f1".into(), f1.to_string()));
    }
    let f2 = w.at(1, 0).mul(w.at(1, 1)).sub(&one);
    if !f2.is_zero() {
        return Ok(PvOutcome::Fail("f2".into(), f2.to_string()));
    }
    let p = w.at(0, 0).mul(w.at(1, 1));
    let f3 = p.mul(&p).sub(&two_t.mul(&p)).add(&one);
    if !f3.is_zero() {
        return Ok(PvOutcome::Fail("f3".into(), f3.to_string()));
    }
    let sys = chebyshev_system();
    let lift = |m: &Matrix<RatFunc>| -> Matrix<TowerElem> {
        m.map(&|f: &RatFunc| TowerElem::scalar(QuadExt::scalar(f.clone())))
    };
    let sigma_w = w.map(&|e: &TowerElem| e.sigma());
    let r_sigma = sigma_w.sub(&lift(&sys.a).mul(w)?)?;
    if r_sigma != Matrix::zero(2, 2) {
        return Ok(PvOutcome::Fail("sigma(W)=AW".into(), r_sigma.to_string()));
    }
    let delta_w = w.map(&|e: &TowerElem| e.delta());
    let r_delta = delta_w.sub(&lift(&sys.b).mul(w)?)?;
    if r_delta != Matrix::zero(2, 2) {
        return Ok(PvOutcome::Fail("delta(W)=BW".into(), r_delta.to_string()));
    }
    Ok(PvOutcome::Pass)
}

pub fn verify_pv_relations() -> Result<PvOutcome> {
    verify_pv_relations_on(&pv_fundamental_matrix())
}

// ---------------------------------------------------------------------------
// product decomposition G = stab(𝐦)·stab(𝐧)

#[derive(Clone, PartialEq, Debug)]
enum GShape<F: Ring> {
    Diag(F),
    Anti(F),
}

fn g_shape<F: Ring>(m: &Matrix<F>) -> Result<GShape<F>> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::NotInG);
    }
    let (a, b, c, d) = (m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
    if b.is_zero() && c.is_zero() {
        if let Ok(inv) = a.try_inv() {
            if inv == *d {
                return Ok(GShape::Diag(a.clone()));
            }
        }
    }
    if a.is_zero() && d.is_zero() {
        if let Ok(inv) = b.try_inv() {
            if inv == *c {
                return Ok(GShape::Anti(b.clone()));
            }
        }
    }
    Err(Error::NotInG)
}

fn template_instance<F: Ring>(shape: TemplateShape, v: &F) -> Matrix<F> {
    let inv = v.try_inv().expect("template parameter is a unit");
    match shape {
        TemplateShape::Diag => Matrix::from_rows(vec![
            vec![v.clone(), F::zero()],
            vec![F::zero(), inv],
        ]),
        TemplateShape::Anti => Matrix::from_rows(vec![
            vec![F::zero(), v.clone()],
            vec![inv, F::zero()],
        ]),
    }
    .expect("2x2")
}

fn satisfies_order<F: Ring>(v: &F, order: Option<u32>) -> bool {
    match order {
        None => true,
        Some(q) => v.pow(q).is_one(),
    }
}

/// Rational q-th roots of unity: {1} for odd q, {1, −1} for even q.
fn mu_q_rational<F: Ring>(q: u32) -> Vec<F> {
    if q % 2 == 0 {
        vec![F::one(), F::one().neg()]
    } else {
        vec![F::one()]
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Decomposition {
    Factors(GroupElement, GroupElement),
    NotDecomposable(String),
}

fn decompose_generic<F: Ring>(
    m: &Matrix<F>,
    h: &AlgSubgroup,
    hp: &AlgSubgroup,
) -> Result<Option<(Matrix<F>, Matrix<F>)>> {
    let target = g_shape(m)?;
    let (tshape, v) = match &target {
        GShape::Diag(v) => (TemplateShape::Diag, v.clone()),
        GShape::Anti(v) => (TemplateShape::Anti, v.clone()),
    };
    for th in &h.templates {
        for tp in &hp.templates {
            // shape algebra: diag·diag = diag, anti·anti = diag, mixed = anti
            let prod_shape = if th.shape == tp.shape {
                TemplateShape::Diag
            } else {
                TemplateShape::Anti
            };
            if prod_shape != tshape {
                continue;
            }
            // parameter equations:
            //   diag(a)·diag(b) = diag(a·b)     diag(a)·anti(b) = anti(a·b)
            //   anti(a)·diag(b) = anti(a·b⁻¹)   anti(a)·anti(b) = diag(a·b⁻¹)
            let b_inverted = th.shape == TemplateShape::Anti;
            let solved: Option<(F, F)> = match (th.order, tp.order) {
                (None, _) => {
                    // b = 1 satisfies any constraint; a = v
                    Some((v.clone(), F::one()))
                }
                (Some(_), None) => {
                    // a = 1; solve b
                    let b = if b_inverted {
                        v.try_inv().map_err(|_| Error::NotInG)?
                    } else {
                        v.clone()
                    };
                    if satisfies_order(&F::one(), th.order) {
                        Some((F::one(), b))
                    } else {
                        None
                    }
                }
                (Some(qa), Some(qb)) => {
                    let mut found = None;
                    'search: for a in mu_q_rational::<F>(qa) {
                        for b in mu_q_rational::<F>(qb) {
                            let rhs = if b_inverted {
                                a.mul(&b.try_inv().expect("unit"))
                            } else {
                                a.mul(&b)
                            };
                            if rhs == v {
                                found = Some((a, b));
                                break 'search;
                            }
                        }
                    }
                    found
                }
            };
            if let Some((a, b)) = solved {
                if satisfies_order(&a, th.order) && satisfies_order(&b, tp.order) {
                    return Ok(Some((
                        template_instance(th.shape, &a),
                        template_instance(tp.shape, &b),
                    )));
                }
            }
        }
    }
    Ok(None)
}

/// Factors g as h·h′ with h ∈ H, h′ ∈ Hp, by case analysis on the
/// diagonal/antidiagonal shape; errors with NotInG when g ∉ G.
pub fn product_decompose(
    gel: &GroupElement,
    h: &AlgSubgroup,
    hp: &AlgSubgroup,
) -> Result<Decomposition> {
    match gel {
        GroupElement::Rational(m) => Ok(match decompose_generic(m, h, hp)? {
            Some((a, b)) => {
                debug_assert_eq!(a.mul(&b).unwrap(), *m);
                Decomposition::Factors(GroupElement::Rational(a), GroupElement::Rational(b))
            }
            None => Decomposition::NotDecomposable(format!("no factorization of\n{}", m)),
        }),
        GroupElement::Symbolic(m) => Ok(match decompose_generic(m, h, hp)? {
            Some((a, b)) => {
                debug_assert_eq!(a.mul(&b).unwrap(), *m);
                Decomposition::Factors(GroupElement::Symbolic(a), GroupElement::Symbolic(b))
            }
            None => Decomposition::NotDecomposable(format!("no factorization of\n{}", m)),
        }),
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum ProductOutcome {
    /// Symbolic factorizations of the diagonal and antidiagonal templates.
    Pass(Vec<(GroupElement, GroupElement, GroupElement)>),
    Fail(GroupElement),
}

/// Pass iff both parametric templates of G decompose symbolically as
/// H·Hp; a failing template is witnessed by its instance at ξ = 2.
pub fn check_product_equal(h: &AlgSubgroup, hp: &AlgSubgroup) -> Result<ProductOutcome> {
    let mut witnesses = Vec::new();
    for t in chebyshev_full_group().templates {
        let free = Template {
            shape: t.shape,
            order: None,
        };
        let gel = GroupElement::symbolic_template(&free);
        match product_decompose(&gel, h, hp)? {
            Decomposition::Factors(a, b) => witnesses.push((gel, a, b)),
            Decomposition::NotDecomposable(_) => {
                let concrete = match t.shape {
                    TemplateShape::Diag => GroupElement::diag(rat(2))?,
                    TemplateShape::Anti => GroupElement::anti(rat(2))?,
                };
                return Ok(ProductOutcome::Fail(concrete));
            }
        }
    }
    Ok(ProductOutcome::Pass(witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::alpha;
    use crate::rational::rat_frac;

    #[test]
    fn full_group_membership() {
        let full = chebyshev_full_group();
        assert!(membership(&GroupElement::diag(rat(3)).unwrap(), &full));
        assert!(membership(&GroupElement::anti(rat(5)).unwrap(), &full));
        assert!(membership(&GroupElement::identity(), &full));
        let upper = GroupElement::Rational(
            Matrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]).unwrap(),
        );
        assert!(!membership(&upper, &full));
    }

    #[test]
    fn symbolic_membership() {
        let torus = diag_torus();
        let diag = GroupElement::symbolic_template(&torus.templates[0]);
        assert!(membership(&diag, &torus));
        assert!(membership(&diag, &chebyshev_full_group()));
        // antidiag(5, 1/5) not in DihedralMuQ(3): 5³ ≠ 1
        assert!(!membership(
            &GroupElement::anti(rat(5)).unwrap(),
            &dihedral_muq(3)
        ));
        // but anti(1) is
        assert!(membership(&GroupElement::anti(rat(1)).unwrap(), &dihedral_muq(3)));
    }

    #[test]
    fn identity_in_every_catalog_group() {
        for h in [
            chebyshev_full_group(),
            diag_torus(),
            diag_torus_muq(4),
            dihedral_muq(3),
            trivial_group(),
        ] {
            assert!(membership(&GroupElement::identity(), &h), "{:?}", h.tag);
        }
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(root_of_unity_order(&rat(0)), Some(4));
        assert_eq!(root_of_unity_order(&rat_frac(1, 2)), Some(6));
        assert_eq!(root_of_unity_order(&rat_frac(-1, 2)), Some(3));
        assert_eq!(root_of_unity_order(&rat(1)), Some(1));
        assert_eq!(root_of_unity_order(&rat(-1)), Some(2));
        for c in [rat(2), rat(3), rat_frac(5, 2), rat_frac(1, 3)] {
            assert_eq!(root_of_unity_order(&c), None, "c1 = {}", c);
        }
        // oracle sharpness: alpha^q = 1 and alpha^j != 1 for 0 < j < q
        for (c, q) in [(rat(0), 4u32), (rat_frac(1, 2), 6), (rat_frac(-1, 2), 3)] {
            let a = alpha(&c);
            assert!(a.pow(q).is_one());
            for j in 1..q {
                assert!(!a.pow(j).is_one());
            }
        }
    }

    #[test]
    fn stab_sigma_classification() {
        assert_eq!(stab_sigma(&rat(2)).unwrap().tag, CatalogTag::DiagTorus);
        assert_eq!(
            stab_sigma(&rat(0)).unwrap().tag,
            CatalogTag::DiagTorusMuQ(4)
        );
        assert_eq!(
            stab_sigma(&rat_frac(1, 2)).unwrap().tag,
            CatalogTag::DiagTorusMuQ(6)
        );
        assert_eq!(
            stab_sigma(&rat_frac(-1, 2)).unwrap().tag,
            CatalogTag::DiagTorusMuQ(3)
        );
        assert!(matches!(
            stab_sigma(&rat(1)),
            Err(Error::InvalidSpecialization(_))
        ));
    }

    #[test]
    fn stab_delta_classification() {
        assert_eq!(
            stab_delta(&C2::Rational(rat_frac(1, 3))).tag,
            CatalogTag::DihedralMuQ(3)
        );
        assert_eq!(stab_delta(&C2::NonRational).tag, CatalogTag::FullG);
        assert_eq!(
            stab_delta(&C2::Rational(rat(0))).tag,
            CatalogTag::DihedralMuQ(1)
        );
        assert_eq!(
            stab_delta(&C2::Rational(rat_frac(7, 5))).tag,
            CatalogTag::DihedralMuQ(5)
        );
        // equation-for-equation agreement with the full group
        assert_eq!(
            stab_delta(&C2::NonRational).equations,
            chebyshev_full_group().equations
        );
    }

    #[test]
    fn pv_relations() {
        assert_eq!(verify_pv_relations().unwrap(), PvOutcome::Pass);
        // entry-swapped W corrupts f3
        let w = pv_fundamental_matrix();
        let swapped = Matrix::from_rows(vec![
            vec![w.at(0, 1).clone(), w.at(0, 0).clone()],
            vec![w.at(1, 0).clone(), w.at(1, 1).clone()],
        ])
        .unwrap();
        match verify_pv_relations_on(&swapped).unwrap() {
            PvOutcome::Fail(_, _) => {}
            o => panic!("expected Fail, got {:?}", o),
        }
    }

    #[test]
    fn decomposition_examples() {
        // antidiag(c, c⁻¹) = diag(c, c⁻¹)·antidiag(1, 1)
        let gel = GroupElement::anti(rat_frac(7, 3)).unwrap();
        match product_decompose(&gel, &diag_torus(), &dihedral_muq(3)).unwrap() {
            Decomposition::Factors(hh, hp) => {
                assert_eq!(hh, GroupElement::diag(rat_frac(7, 3)).unwrap());
                assert_eq!(hp, GroupElement::anti(rat(1)).unwrap());
            }
            d => panic!("expected Factors, got {:?}", d),
        }
        // (g, I) for H = FullG, Hp = Trivial
        let gel = GroupElement::diag(rat(9)).unwrap();
        match product_decompose(&gel, &chebyshev_full_group(), &trivial_group()).unwrap() {
            Decomposition::Factors(hh, hp) => {
                assert_eq!(hh, gel);
                assert_eq!(hp, GroupElement::identity());
            }
            d => panic!("expected Factors, got {:?}", d),
        }
        // diag(2, 1/2) not in DiagTorusMuQ(2)·DihedralMuQ(2)
        let gel = GroupElement::diag(rat(2)).unwrap();
        match product_decompose(&gel, &diag_torus_muq(2), &dihedral_muq(2)).unwrap() {
            Decomposition::NotDecomposable(_) => {}
            d => panic!("expected NotDecomposable, got {:?}", d),
        }
        // non-member of G
        let bad = GroupElement::Rational(
            Matrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]).unwrap(),
        );
        assert!(matches!(
            product_decompose(&bad, &diag_torus(), &dihedral_muq(3)),
            Err(Error::NotInG)
        ));
    }

    #[test]
    fn product_decomposition_grid() {
        for c1 in [rat(2), rat(3), rat_frac(5, 2)] {
            for c2 in [rat(0), rat_frac(1, 3), rat_frac(1, 2), rat_frac(7, 5)] {
                let h = stab_sigma(&c1).unwrap();
                let hp = stab_delta(&C2::Rational(c2.clone()));
                match check_product_equal(&h, &hp).unwrap() {
                    ProductOutcome::Pass(ws) => {
                        assert_eq!(ws.len(), 2);
                        for (gel, a, b) in &ws {
                            // recheck h·h′ = g and memberships
                            assert!(membership(a, &h));
                            assert!(membership(b, &hp));
                            let (GroupElement::Symbolic(ga), GroupElement::Symbolic(gb),
                                 GroupElement::Symbolic(gm)) = (a, b, gel)
                            else {
                                panic!("expected symbolic witnesses")
                            };
                            assert_eq!(ga.mul(gb).unwrap(), *gm);
                        }
                    }
                    o => panic!("expected Pass for ({}, {}), got {:?}", c1, c2, o),
                }
            }
        }
        // negative control
        match check_product_equal(&diag_torus_muq(2), &dihedral_muq(2)).unwrap() {
            ProductOutcome::Fail(w) => {
                assert_eq!(w, GroupElement::diag(rat(2)).unwrap());
            }
            o => panic!("expected Fail, got {:?}", o),
        }
    }

    #[test]
    fn parametric_closure() {
        // free groups: closure verified symbolically in two parameters
        let xi = RatFunc::var("xi");
        let zeta = RatFunc::var("zeta");
        for h in [chebyshev_full_group(), diag_torus()] {
            for t1 in &h.templates {
                for t2 in &h.templates {
                    let m1 = template_instance(t1.shape, &xi);
                    let m2 = template_instance(t2.shape, &zeta);
                    let prod = m1.mul(&m2).unwrap();
                    assert!(eval_equations(&h.equations, &prod), "{:?}", h.tag);
                    let inv = m1.inverse().unwrap();
                    assert!(eval_equations(&h.equations, &inv));
                }
            }
        }
    }
}
