//! Sparse multivariate polynomials over Q.
//!
//! Variables are ordered x < t < s < eta < (everything else alphabetically);
//! the monomial order used for leading terms and denominator normalization is
//! graded lexicographic over that variable order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, rat_to_string, Rat};

fn var_rank(name: &str) -> (u8, &str) {
    match name {
        "x" => (0, name),
        "t" => (1, name),
        "s" => (2, name),
        "eta" => (3, name),
        _ => (4, name),
    }
}

fn var_cmp(a: &str, b: &str) -> Ordering {
    var_rank(a).cmp(&var_rank(b))
}

/// A polynomial in finitely many named variables with rational coefficients.
/// Invariants: `vars` is sorted, every stored coefficient is nonzero, every
/// variable in `vars` appears in some term, exponent vectors match `vars`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: vec![],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        Poly { vars: vec![], terms }
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1u32], rat(1));
        Poly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&p| p == 0))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&p| p == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| rat(0))
    }

    /// If the polynomial is constant, its value.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Drops variables that no longer occur and zero coefficients.
    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let kept: Vec<usize> = (0..self.vars.len()).filter(|&i| used[i]).collect();
        let vars: Vec<String> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| (kept.iter().map(|&i| e[i]).collect(), c))
            .collect();
        Poly { vars, terms }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    fn remap(&self, vars: &[String]) -> BTreeMap<Vec<u32>, Rat> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("var superset"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; vars.len()];
                for (j, &p) in e.iter().enumerate() {
                    ne[idx[j]] = p;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &Poly) -> Vec<String> {
        let mut vars: Vec<String> = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort_by(|a, b| var_cmp(a, b));
        vars
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let vars = self.merged_vars(other);
        let mut terms = self.remap(&vars);
        for (e, c) in other.remap(&vars) {
            let entry = terms.entry(e).or_insert_with(|| rat(0));
            *entry += c;
        }
        Poly { vars, terms }.normalize()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let vars = self.merged_vars(other);
        let a = self.remap(&vars);
        let b = other.remap(&vars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(p, q)| p + q).collect();
                let entry = terms.entry(e).or_insert_with(|| rat(0));
                *entry += ca * cb;
            }
        }
        Poly { vars, terms }.normalize()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes a polynomial for one variable.
    pub fn subst_var(&self, var: &str, value: &Poly) -> Poly {
        let i = match self.vars.iter().position(|v| v == var) {
            None => return self.clone(),
            Some(i) => i,
        };
        let mut acc = Poly::zero();
        // cache powers of `value`
        let maxdeg = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(maxdeg as usize + 1);
        powers.push(Poly::one());
        for _ in 0..maxdeg {
            powers.push(powers.last().unwrap().mul(value));
        }
        for (e, c) in &self.terms {
            let mut rest_e = e.clone();
            let p = rest_e[i];
            rest_e[i] = 0;
            let base = Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(rest_e, c.clone())]),
            }
            .normalize();
            acc = acc.add(&base.mul(&powers[p as usize]));
        }
        acc
    }

    /// Partial derivative with respect to a variable.
    pub fn derivative(&self, var: &str) -> Poly {
        let i = match self.vars.iter().position(|v| v == var) {
            None => return Poly::zero(),
            Some(i) => i,
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            terms.insert(ne, c * rat(e[i] as i64));
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
        .normalize()
    }

    /// Graded-lex comparison of exponent vectors (over this poly's vars).
    fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| a.cmp(b))
    }

    /// Leading (monomial, coefficient) under grlex.
    pub fn leading_term(&self) -> Option<(Vec<u32>, Rat)> {
        self.terms
            .iter()
            .max_by(|(e1, _), (e2, _)| Self::grlex_cmp(e1, e2))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c).unwrap_or_else(|| rat(0))
    }

    /// Views the polynomial as univariate in `var`, returning coefficients
    /// (polynomials in the remaining variables) by ascending degree.
    pub fn coeffs_in(&self, var: &str) -> Vec<Poly> {
        let i = match self.vars.iter().position(|v| v == var) {
            None => return vec![self.clone()],
            Some(i) => i,
        };
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let d = e[i] as usize;
            let mut ne = e.clone();
            ne[i] = 0;
            let part = Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(ne, c.clone())]),
            }
            .normalize();
            out[d] = out[d].add(&part);
        }
        out
    }

    /// Rebuilds a polynomial from univariate coefficients in `var`.
    pub fn from_coeffs_in(var: &str, coeffs: &[Poly]) -> Poly {
        let v = Poly::var(var);
        let mut acc = Poly::zero();
        for (d, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&v.pow(d as u32)));
        }
        acc
    }

    /// Exact multivariate division; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let vars = self.merged_vars(divisor);
        let mut rem: BTreeMap<Vec<u32>, Rat> = self.remap(&vars);
        let div: BTreeMap<Vec<u32>, Rat> = divisor.remap(&vars);
        let (dlead, dc) = div
            .iter()
            .max_by(|(a, _), (b, _)| Self::grlex_cmp(a, b))
            .map(|(e, c)| (e.clone(), c.clone()))
            .unwrap();
        let mut quot: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        loop {
            rem.retain(|_, c| !c.is_zero());
            let (rlead, rc) = match rem.iter().max_by(|(a, _), (b, _)| Self::grlex_cmp(a, b)) {
                None => {
                    return Some(
                        Poly {
                            vars,
                            terms: quot,
                        }
                        .normalize(),
                    )
                }
                Some((e, c)) => (e.clone(), c.clone()),
            };
            if rlead.iter().zip(&dlead).any(|(r, d)| r < d) {
                return None;
            }
            let qe: Vec<u32> = rlead.iter().zip(&dlead).map(|(r, d)| r - d).collect();
            let qc = &rc / &dc;
            for (e, c) in &div {
                let te: Vec<u32> = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let entry = rem.entry(te).or_insert_with(|| rat(0));
                *entry -= &qc * c;
            }
            quot.insert(qe, qc);
        }
    }

    /// GCD over Q[vars], normalized so the grlex-leading coefficient is 1.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let g = gcd_inner(self, other);
        if g.is_zero() {
            return g;
        }
        let lc = g.leading_coeff();
        g.scale(&lc.recip())
    }

    /// Rational roots (with multiplicity) of a nonzero univariate polynomial.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.vars.len() > 1 {
            return Err(Error::ShapeError("polynomial is not univariate".into()));
        }
        if self.vars.is_empty() {
            return Ok(vec![]);
        }
        let var = self.vars[0].clone();
        let mut coeffs: Vec<Rat> = self
            .coeffs_in(&var)
            .iter()
            .map(|p| p.as_constant().expect("univariate"))
            .collect();
        // clear denominators
        let mut lcm = BigInt::one();
        for c in &coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        coeffs.clear();
        let mut roots = Vec::new();
        // strip x^k factor -> root 0
        while !ints.is_empty() && ints[0].is_zero() {
            ints.remove(0);
            roots.push(rat(0));
        }
        while ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let mut found = None;
            'search: for p in divisors(&a0) {
                for q in divisors(&an) {
                    for sign in [1i64, -1] {
                        let cand = Rat::new(&p * BigInt::from(sign), q.clone());
                        if eval_int_poly(&ints, &cand).is_zero() {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            match found {
                None => break,
                Some(r) => {
                    ints = deflate(&ints, &r);
                    roots.push(r);
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Evaluates at a full rational assignment for every variable present.
    pub fn eval(&self, assign: &dyn Fn(&str) -> Rat) -> Rat {
        let mut acc = rat(0);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                let v = assign(&self.vars[i]);
                for _ in 0..p {
                    term *= &v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluates in an arbitrary ring containing Q.
    pub fn eval_ring<F: crate::ring::Ring>(&self, assign: &dyn Fn(&str) -> F) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = crate::ring::from_rat::<F>(c);
            for (i, &p) in e.iter().enumerate() {
                term = term.mul(&assign(&self.vars[i]).pow(p));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Terms as (exponent vector, coefficient) pairs, paired with the var list.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }
}

fn eval_int_poly(coeffs: &[BigInt], at: &Rat) -> Rat {
    let mut acc = rat(0);
    for c in coeffs.iter().rev() {
        acc = acc * at + Rat::from_integer(c.clone());
    }
    acc
}

/// Divides an integer-coefficient polynomial (ascending) by (x - r), r a root.
fn deflate(coeffs: &[BigInt], r: &Rat) -> Vec<BigInt> {
    // synthetic division over Q, then re-clear denominators
    let mut quo: Vec<Rat> = vec![rat(0); coeffs.len() - 1];
    let mut carry = rat(0);
    for i in (0..coeffs.len() - 1).rev() {
        let c = Rat::from_integer(coeffs[i + 1].clone()) + &carry;
        quo[i] = c.clone();
        carry = c * r;
    }
    let mut lcm = BigInt::one();
    for c in &quo {
        lcm = lcm.lcm(c.denom());
    }
    quo.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn gcd_inner(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    // main variable: highest-ranked variable present in either
    let vars = f.merged_vars(g);
    let main = vars.last().unwrap().clone();
    // effectively univariate: monic Euclid beats the PRS
    if effective_vars(f) <= 1 && effective_vars(g) <= 1 {
        if f.degree_in(&main) > 0 && g.degree_in(&main) > 0 {
            return univariate_gcd(f, g, &main);
        }
        // polynomials in different single variables are coprime
        return Poly::one();
    }
    // coprimality fast path: a degree-preserving specialization of every
    // variable but `main` bounds deg_main(gcd) from above
    if let Some(bound) = specialized_gcd_degree(f, g, &main) {
        if bound == 0 {
            let cont = |p: &Poly| -> Poly {
                let mut acc = Poly::zero();
                for c in p.coeffs_in(&main) {
                    acc = gcd_inner(&acc, &c);
                }
                acc
            };
            return gcd_inner(&cont(f), &cont(g));
        }
    }
    let fc = f.coeffs_in(&main);
    let gc = g.coeffs_in(&main);
    let cont = |cs: &[Poly]| -> Poly {
        let mut acc = Poly::zero();
        for c in cs {
            acc = gcd_inner(&acc, c);
        }
        acc
    };
    let cont_f = cont(&fc);
    let cont_g = cont(&gc);
    let pp_f = f.div_exact(&cont_f).expect("content divides");
    let pp_g = g.div_exact(&cont_g).expect("content divides");
    let cont_gcd = gcd_inner(&cont_f, &cont_g);

    // primitive PRS in `main`
    let (mut a, mut b) = if pp_f.degree_in(&main) >= pp_g.degree_in(&main) {
        (pp_f, pp_g)
    } else {
        (pp_g, pp_f)
    };
    loop {
        if b.is_zero() {
            break;
        }
        let r = pseudo_rem(&a, &b, &main);
        let r = if r.is_zero() {
            r
        } else {
            let rc = cont(&r.coeffs_in(&main));
            r.div_exact(&rc).expect("content divides")
        };
        a = b;
        b = r;
    }
    if a.degree_in(&main) == 0 {
        // primitive parts are coprime in main var
        return cont_gcd;
    }
    cont_gcd.mul(&a)
}

/// Number of variables actually occurring with positive exponent.
fn effective_vars(p: &Poly) -> usize {
    (0..p.vars().len())
        .filter(|&j| p.terms().any(|(e, _)| e[j] > 0))
        .count()
}

/// Dense coefficient vector of a univariate polynomial in `var`.
fn coeff_vec(p: &Poly, var: &str) -> Vec<Rat> {
    p.coeffs_in(var)
        .iter()
        .map(|c| c.as_constant().expect("univariate"))
        .collect()
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Monic Euclidean gcd of univariate polynomials over Q.
fn univariate_gcd(f: &Poly, g: &Poly, var: &str) -> Poly {
    let mut a = coeff_vec(f, var);
    let mut b = coeff_vec(g, var);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b, with b made monic first to limit coefficient growth
        let lead = b.last().unwrap().clone();
        for c in &mut b {
            *c /= &lead;
        }
        while a.len() >= b.len() {
            let q = a.last().unwrap().clone();
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] -= &q * c;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    let lead = a.last().expect("nonzero gcd").clone();
    let x = Poly::var(var);
    let mut acc = Poly::zero();
    for (i, c) in a.iter().enumerate() {
        acc = acc.add(&x.pow(i as u32).scale(&(c / &lead)));
    }
    acc
}

/// Degree in `main` of gcd(f|φ, g|φ) for a random small-integer
/// specialization φ of the other variables that preserves both leading
/// coefficients; None when no such point is found. Since the gcd divides
/// both inputs and φ preserves their degrees, deg_main(gcd) is at most the
/// returned value.
fn specialized_gcd_degree(f: &Poly, g: &Poly, main: &str) -> Option<u32> {
    let vars = f.merged_vars(g);
    let others: Vec<&String> = vars.iter().filter(|v| v.as_str() != main).collect();
    'point: for trial in 0..4i64 {
        let mut fs = f.clone();
        let mut gs = g.clone();
        for (j, v) in others.iter().enumerate() {
            let value = Poly::int(2 + trial + j as i64);
            fs = fs.subst_var(v, &value);
            gs = gs.subst_var(v, &value);
        }
        if fs.degree_in(main) != f.degree_in(main) || gs.degree_in(main) != g.degree_in(main) {
            continue 'point;
        }
        if fs.is_zero() || gs.is_zero() {
            continue 'point;
        }
        let d = univariate_gcd(&fs, &gs, main).degree_in(main);
        return Some(d);
    }
    None
}

/// Pseudo-remainder of `f` by `g` as univariate polynomials in `main`.
fn pseudo_rem(f: &Poly, g: &Poly, main: &str) -> Poly {
    let n = g.degree_in(main);
    let gc = g.coeffs_in(main);
    let glc = gc.last().unwrap().clone();
    let mut r = f.clone();
    loop {
        let m = r.degree_in(main);
        if r.is_zero() || m < n {
            return r;
        }
        let rc = r.coeffs_in(main);
        let rlc = rc.last().unwrap().clone();
        let shift = Poly::var(main).pow(m - n);
        r = r.mul(&glc).sub(&g.mul(&rlc).mul(&shift));
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| Poly::grlex_cmp(b, a));
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&p| p == 0) {
                factors.push(rat_to_string(&mag));
            }
            for (j, &p) in e.iter().enumerate() {
                if p == 1 {
                    factors.push(self.vars[j].clone());
                } else if p > 1 {
                    factors.push(format!("{}^{}", self.vars[j], p));
                }
            }
            out.push_str(&factors.join("*"));
        }
        write!(f, "{}", out)
    }
}
