//! Linear dependence over the σδ-constants: determinant certificates of
//! independence, explicit-constant certificates of dependence.
//!
//! The criterion: a₁,…,a_m are dependent over the constants iff every m×m
//! determinant det(θᵢ(a_j)) vanishes — the "iff" needs a simple ring, so the
//! decision procedure only ever asserts dependence with a symbolically
//! verified certificate, which is sound in any ring.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{rat, Rat};
use crate::ring::Ring;
use crate::theta::{enumerate_theta, SigmaDeltaRing, ThetaWord};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingMode {
    /// Q(x,t) or the η-tower: the determinant criterion is two-sided.
    SimpleRing,
    /// Declared generators with a σ-action that is not simple (Example-style
    /// counterexample ring); vanishing determinants certify nothing.
    NonSimpleFixture,
}

#[derive(Clone, PartialEq, Debug)]
pub enum DependenceVerdict<F: Ring> {
    Independent(Vec<ThetaWord>, F),
    Dependent(Vec<Rat>),
    Inconclusive(u32),
}

/// Rings whose elements embed into a finite-dimensional Q-vector space,
/// jointly across a finite family (used to solve for rational constants).
pub trait QVector: Sized {
    /// Coordinates of each element with respect to a shared Q-basis.
    /// All returned vectors have equal length.
    fn q_coordinates(items: &[Self]) -> Vec<Vec<Rat>>;
}

impl QVector for crate::ratfunc::RatFunc {
    fn q_coordinates(items: &[Self]) -> Vec<Vec<Rat>> {
        use crate::poly::Poly;
        // common denominator via gcd-based lcm
        let mut common = Poly::one();
        for f in items {
            let g = common.gcd(f.den());
            common = common.div_exact(&g).unwrap().mul(f.den());
        }
        let nums: Vec<Poly> = items
            .iter()
            .map(|f| {
                let extra = common.div_exact(f.den()).expect("lcm divides");
                f.num().mul(&extra)
            })
            .collect();
        // joint monomial basis keyed by var -> exponent
        let mut keys: Vec<BTreeMap<String, u32>> = Vec::new();
        let key_of = |vars: &[String], e: &[u32]| -> BTreeMap<String, u32> {
            vars.iter()
                .cloned()
                .zip(e.iter().copied())
                .filter(|(_, p)| *p > 0)
                .collect()
        };
        for n in &nums {
            for (e, _) in n.terms() {
                let k = key_of(n.vars(), e);
                if !keys.contains(&k) {
                    keys.push(k);
                }
            }
        }
        nums.iter()
            .map(|n| {
                let mut row = vec![rat(0); keys.len()];
                for (e, c) in n.terms() {
                    let k = key_of(n.vars(), e);
                    let idx = keys.iter().position(|kk| *kk == k).unwrap();
                    row[idx] = c.clone();
                }
                row
            })
            .collect()
    }
}

impl QVector for crate::tower::TowerElem {
    fn q_coordinates(items: &[Self]) -> Vec<Vec<Rat>> {
        // joint eta-support; each coefficient contributes its a and b parts
        let mut support: Vec<i64> = Vec::new();
        for e in items {
            for k in e.support() {
                if !support.contains(&k) {
                    support.push(k);
                }
            }
        }
        support.sort();
        let mut parts: Vec<crate::ratfunc::RatFunc> = Vec::new();
        for e in items {
            for &k in &support {
                let c = e.coeff(k);
                parts.push(c.a.clone());
                parts.push(c.b.clone());
            }
        }
        let coords = crate::ratfunc::RatFunc::q_coordinates(&parts);
        let width = coords.first().map(|r| r.len()).unwrap_or(0);
        let per = 2 * support.len();
        items
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let mut row = Vec::with_capacity(per * width);
                for j in 0..per {
                    row.extend(coords[i * per + j].iter().cloned());
                }
                row
            })
            .collect()
    }
}

/// Abstract counterexample ring Q[y, z] with σ(y) = 2y, σ(z) = 2z, δ = 0.
/// Not σ-simple: (y·z − ...) — the ideal generated by yz−zy-type relations
/// aside, any σ-stable ideal like (y−z) is proper and nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct FixtureElem {
    // exponent pair (deg_y, deg_z) -> coefficient
    terms: BTreeMap<(u32, u32), Rat>,
}

impl FixtureElem {
    pub fn y() -> Self {
        FixtureElem {
            terms: BTreeMap::from([((1, 0), rat(1))]),
        }
    }

    pub fn z() -> Self {
        FixtureElem {
            terms: BTreeMap::from([((0, 1), rat(1))]),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Ring::is_zero(&c) {
            terms.insert((0, 0), c);
        }
        FixtureElem { terms }
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| !Ring::is_zero(c));
        self
    }
}

impl Ring for FixtureElem {
    fn zero() -> Self {
        FixtureElem {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        FixtureElem::constant(rat(1))
    }
    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let e = terms.entry(*k).or_insert_with(|| rat(0));
            *e += c;
        }
        FixtureElem { terms }.normalize()
    }
    fn neg(&self) -> Self {
        FixtureElem {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(u32, u32), Rat> = BTreeMap::new();
        for ((ay, az), ca) in &self.terms {
            for ((by, bz), cb) in &other.terms {
                let e = terms.entry((ay + by, az + bz)).or_insert_with(|| rat(0));
                *e += ca * cb;
            }
        }
        FixtureElem { terms }.normalize()
    }
    fn try_inv(&self) -> Result<Self> {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Ok(FixtureElem::constant(c.recip()));
            }
        }
        Err(Error::NotAUnit)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl SigmaDeltaRing for FixtureElem {
    fn sigma(&self) -> Self {
        FixtureElem {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), c * rat(2).pow((a + b) as i32)))
                .collect(),
        }
    }
    fn sigma_inv(&self) -> Self {
        FixtureElem {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), c / rat(2).pow((a + b) as i32)))
                .collect(),
        }
    }
    fn delta(&self) -> Self {
        FixtureElem::zero()
    }
}

impl QVector for FixtureElem {
    fn q_coordinates(items: &[Self]) -> Vec<Vec<Rat>> {
        let mut keys: Vec<(u32, u32)> = Vec::new();
        for e in items {
            for k in e.terms.keys() {
                if !keys.contains(k) {
                    keys.push(*k);
                }
            }
        }
        keys.sort();
        items
            .iter()
            .map(|e| {
                keys.iter()
                    .map(|k| e.terms.get(k).cloned().unwrap_or_else(|| rat(0)))
                    .collect()
            })
            .collect()
    }
}

/// Entry (i,j) = θᵢ(a_j).
pub fn wronskian_matrix<F: SigmaDeltaRing>(
    elems: &[F],
    thetas: &[ThetaWord],
) -> Result<Matrix<F>> {
    if elems.len() != thetas.len() {
        return Err(Error::ShapeError(format!(
            "{} elements vs {} theta words",
            elems.len(),
            thetas.len()
        )));
    }
    let rows = thetas
        .iter()
        .map(|w| elems.iter().map(|a| a.apply_theta(*w)).collect())
        .collect();
    Matrix::from_rows(rows)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClassicalKind {
    Wronskian,
    Casoratian,
}

/// Wronskian uses θ = δ^0..δ^{m−1}; Casoratian uses σ^0..σ^{m−1}.
pub fn classical_determinant<F: SigmaDeltaRing>(
    elems: &[F],
    kind: ClassicalKind,
) -> Result<F> {
    let m = elems.len() as u32;
    let thetas: Vec<ThetaWord> = (0..m)
        .map(|k| match kind {
            ClassicalKind::Wronskian => ThetaWord::new(0, k),
            ClassicalKind::Casoratian => ThetaWord::new(k, 0),
        })
        .collect();
    wronskian_matrix(elems, &thetas)?.det()
}

pub fn verify_dependence_certificate<F: Ring>(elems: &[F], constants: &[Rat]) -> bool {
    if elems.len() != constants.len() || constants.iter().all(|c| Ring::is_zero(c)) {
        return false;
    }
    let mut acc = F::zero();
    for (a, c) in elems.iter().zip(constants) {
        let scaled = a.mul(&crate::ring::from_rat::<F>(c));
        acc = acc.add(&scaled);
    }
    acc.is_zero()
}

/// Exact nullspace basis of the linear map given by `rows` (each row one
/// equation over `ncols` unknowns), via rational Gaussian elimination.
pub fn nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !Ring::is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !Ring::is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![rat(0); ncols];
        v[free] = rat(1);
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Integer-normalizes a rational vector: clears denominators, divides by the
/// content, and makes the first nonzero entry positive.
fn normalize_constants(v: &[Rat]) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
    }
    ints.into_iter().map(Rat::from_integer).collect()
}

/// Ordered m-subsets (by index) of 0..n that contain index 0.
fn subsets_with_identity(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    if m == 0 || m > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    rec(1, n, m - 1, &mut cur, &mut out);
    out
}

/// Bounded-search decision procedure. For each L ≤ L_max: look for a nonzero
/// θ-determinant (independence certificate, θ₁ = id, lexicographically first
/// tuple wins), then for rational constants annihilating the family under
/// every θ-word of weight ≤ L (dependence certificate, rechecked
/// symbolically). Falls through to Inconclusive(L_max).
pub fn decide_dependence<F: SigmaDeltaRing + QVector>(
    elems: &[F],
    mode: RingMode,
    l_max: u32,
) -> Result<DependenceVerdict<F>> {
    if elems.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = elems.len();
    let _ = mode; // dependence verdicts are certificate-checked, sound in both modes
    for l in 0..=l_max {
        let words = enumerate_theta(l);
        if words.len() >= m {
            for subset in subsets_with_identity(words.len(), m) {
                let thetas: Vec<ThetaWord> = subset.iter().map(|&i| words[i]).collect();
                let det = wronskian_matrix(elems, &thetas)?.det()?;
                if !det.is_zero() {
                    return Ok(DependenceVerdict::Independent(thetas, det));
                }
            }
        }
        // dependence attempt: stack θ(a_j) for all words of weight ≤ L
        let mut images: Vec<F> = Vec::with_capacity(words.len() * m);
        for w in &words {
            for a in elems {
                images.push(a.apply_theta(*w));
            }
        }
        let coords = F::q_coordinates(&images);
        let width = coords.first().map(|r| r.len()).unwrap_or(0);
        // equations: one per (word, basis coordinate); unknowns: m constants
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (wi, _) in words.iter().enumerate() {
            for b in 0..width {
                let row: Vec<Rat> = (0..m).map(|j| coords[wi * m + j][b].clone()).collect();
                if row.iter().any(|c| !Ring::is_zero(c)) {
                    rows.push(row);
                }
            }
        }
        for v in nullspace(rows, m) {
            let constants = normalize_constants(&v);
            if verify_dependence_certificate(elems, &constants) {
                return Ok(DependenceVerdict::Dependent(constants));
            }
        }
    }
    Ok(DependenceVerdict::Inconclusive(l_max))
}
