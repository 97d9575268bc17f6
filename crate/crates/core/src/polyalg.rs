//! Sparse exact polynomials and vector-valued polynomial maps.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic (`x_0 > x_1 > …` within a degree). All bases in the
//! crate that are "echelon" or "canonical" refer to this order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::liecore::LieAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{FieldTag, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Exponent vector with `x_i` removed once, if present.
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }

    pub fn raise(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// `∏ α_i!`.
    pub fn factorial(&self) -> Scalar {
        let mut acc = Scalar::one();
        for &e in &self.0 {
            for k in 2..=e as i64 {
                acc = &acc * &Scalar::from_int(k);
            }
        }
        acc
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::one();
        for (xi, &e) in x.iter().zip(&self.0) {
            if e > 0 {
                acc = &acc * &xi.pow(e as u32);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

/// All monomials of total degree `d` in `n` variables, ascending.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if cur.len() == n - 1 {
            cur.push(left as u16);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// Index of the degree-`d` monomials in ascending graded-lex order.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(n: usize, d: usize) -> Self {
        let monos = monomials_of_degree(n, d);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monos.iter()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c}){m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Monomial::var(nvars, i), Scalar::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<usize, Poly> {
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Poly::zero(self.nvars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn field(&self) -> FieldTag {
        if self.terms.values().all(Scalar::is_real) {
            FieldTag::Rational
        } else {
            FieldTag::Gaussian
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.conj())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            acc.add_mul(c, &m.eval(x));
        }
        acc
    }

    /// Evaluation of the real part of the coefficients at a float point.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(x)
                    .fold(c.to_f64(), |acc, (&e, xi)| acc * xi.powi(e as i32))
            })
            .sum()
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(l) = m.lower(i) {
                out.add_term(l, &(c * &Scalar::from_int(m.exponents()[i] as i64)));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shift(&mut self, other: &Poly, c: &Scalar, m: &Monomial) {
        for (mo, x) in &other.terms {
            self.add_term(mo.mul(m), &(x * c));
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                acc.entry(m1.mul(m2)).or_default().add_mul(c1, c2);
            }
        }
        Poly::from_terms(self.nvars, acc)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

/// A polynomial map `g → V`, one [`Poly`] per coordinate of `V`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    domain_dim: usize,
    components: Vec<Poly>,
}

impl std::fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl PolyMap {
    pub fn new(domain_dim: usize, components: Vec<Poly>) -> Self {
        assert!(components.iter().all(|p| p.nvars() == domain_dim));
        PolyMap {
            domain_dim,
            components,
        }
    }

    pub fn zero(domain_dim: usize, target_dim: usize) -> Self {
        PolyMap::new(domain_dim, vec![Poly::zero(domain_dim); target_dim])
    }

    pub fn identity(n: usize) -> Self {
        PolyMap::new(n, (0..n).map(|i| Poly::var(n, i)).collect())
    }

    pub fn constant(domain_dim: usize, v: &[Scalar]) -> Self {
        PolyMap::new(
            domain_dim,
            v.iter().map(|c| Poly::constant(domain_dim, c.clone())).collect(),
        )
    }

    /// The map `x ↦ A x` for a `target × domain` matrix.
    pub fn linear(a: &Matrix) -> Self {
        PolyMap::new(
            a.ncols(),
            (0..a.nrows()).map(|i| Poly::linear(a.row(i))).collect(),
        )
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(Poly::degree).max().unwrap_or(0)
    }

    /// True iff all nonzero components are homogeneous of one common degree.
    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.components
            .iter()
            .all(|p| p.terms().keys().all(|m| m.degree() == d))
    }

    pub fn field(&self) -> FieldTag {
        if self.components.iter().all(|p| p.field() == FieldTag::Rational) {
            FieldTag::Rational
        } else {
            FieldTag::Gaussian
        }
    }

    pub fn homogeneous_part(&self, d: usize) -> PolyMap {
        PolyMap::new(
            self.domain_dim,
            self.components.iter().map(|p| p.homogeneous_part(d)).collect(),
        )
    }

    /// Nonzero homogeneous parts keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<usize, PolyMap> {
        let mut degrees: Vec<usize> = self
            .components
            .iter()
            .flat_map(|p| p.terms().keys().map(Monomial::degree))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        degrees
            .into_iter()
            .map(|d| (d, self.homogeneous_part(d)))
            .collect()
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: x.len(),
            });
        }
        Ok(self.components.iter().map(|p| p.eval(x)).collect())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(x)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> PolyMap {
        PolyMap::new(
            self.domain_dim,
            self.components.iter().map(|p| p.scale(c)).collect(),
        )
    }

    /// `q · P` for a scalar polynomial `q`.
    pub fn scale_poly(&self, q: &Poly) -> PolyMap {
        PolyMap::new(self.domain_dim, self.components.iter().map(|p| q * p).collect())
    }

    pub fn conj(&self) -> PolyMap {
        PolyMap::new(
            self.domain_dim,
            self.components.iter().map(Poly::conj).collect(),
        )
    }

    /// `x ↦ A · P(x)` for a square matrix acting on the target.
    pub fn apply_matrix(&self, a: &Matrix) -> PolyMap {
        assert_eq!(a.ncols(), self.target_dim());
        let comps = (0..a.nrows())
            .map(|i| {
                let mut acc = Poly::zero(self.domain_dim);
                for (j, p) in self.components.iter().enumerate() {
                    let c = a.get(i, j);
                    if !c.is_zero() {
                        acc = &acc + &p.scale(c);
                    }
                }
                acc
            })
            .collect();
        PolyMap::new(self.domain_dim, comps)
    }

    /// Leading term: largest monomial in graded-lex order; among components
    /// sharing it, the lowest component index wins.
    pub fn leading(&self) -> Option<(Monomial, usize, Scalar)> {
        let mut best: Option<(Monomial, usize, Scalar)> = None;
        for (c, p) in self.components.iter().enumerate() {
            if let Some((m, x)) = p.leading() {
                let better = match &best {
                    None => true,
                    Some((bm, _, _)) => m > bm,
                };
                if better {
                    best = Some((m.clone(), c, x.clone()));
                }
            }
        }
        best
    }

    /// Rescales so the leading coefficient is 1. Zero maps are unchanged.
    pub fn normalized(&self) -> PolyMap {
        match self.leading() {
            Some((_, _, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        self.components
            .iter()
            .map(poly_to_text)
            .collect::<Vec<_>>()
            .join("---\n")
    }

    /// Parses blocks of `coeff : e1 … en` lines separated by `---`.
    pub fn parse(text: &str, domain_dim: usize) -> Result<PolyMap> {
        let mut blocks: Vec<Vec<&str>> = vec![Vec::new()];
        for line in text.lines() {
            let l = line.split('#').next().unwrap().trim();
            if l == "---" {
                blocks.push(Vec::new());
            } else if !l.is_empty() {
                blocks.last_mut().unwrap().push(l);
            }
        }
        let comps = blocks
            .into_iter()
            .map(|b| parse_poly_lines(&b, domain_dim))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap::new(domain_dim, comps))
    }
}

impl<'a> Add<&'a PolyMap> for &'a PolyMap {
    type Output = PolyMap;
    fn add(self, o: &PolyMap) -> PolyMap {
        assert_eq!(self.target_dim(), o.target_dim());
        PolyMap::new(
            self.domain_dim,
            self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect(),
        )
    }
}

impl<'a> Sub<&'a PolyMap> for &'a PolyMap {
    type Output = PolyMap;
    fn sub(self, o: &PolyMap) -> PolyMap {
        assert_eq!(self.target_dim(), o.target_dim());
        PolyMap::new(
            self.domain_dim,
            self.components.iter().zip(&o.components).map(|(a, b)| a - b).collect(),
        )
    }
}

fn poly_to_text(p: &Poly) -> String {
    let mut s = String::new();
    for (m, c) in p.terms().iter().rev() {
        let e: Vec<String> = m.exponents().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{c} : {}", e.join(" "));
    }
    s
}

fn parse_poly_lines(lines: &[&str], nvars: usize) -> Result<Poly> {
    let mut p = Poly::zero(nvars);
    for l in lines {
        let (c, e) = l
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `coeff : exponents`, got `{l}`")))?;
        let c: Scalar = c.trim().parse()?;
        let exps = e
            .split_whitespace()
            .map(|t| {
                t.parse::<u16>()
                    .map_err(|_| Error::Parse(format!("bad exponent `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if exps.len() != nvars {
            return Err(Error::Parse(format!(
                "term `{l}` has {} exponents, expected {nvars}",
                exps.len()
            )));
        }
        p.add_term(Monomial::new(exps), &c);
    }
    Ok(p)
}

impl Poly {
    pub fn to_text(&self) -> String {
        poly_to_text(self)
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let lines: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty())
            .collect();
        parse_poly_lines(&lines, nvars)
    }
}

/// Exact evaluation `P(x)`.
pub fn evaluate(p: &PolyMap, x: &[Scalar]) -> Result<Vec<Scalar>> {
    p.evaluate(x)
}

/// `x ↦ dP_x(direction(x))`.
pub fn directional_derivative(p: &PolyMap, direction: &PolyMap) -> Result<PolyMap> {
    if direction.domain_dim() != p.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.domain_dim(),
            found: direction.domain_dim(),
        });
    }
    if direction.target_dim() != p.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.domain_dim(),
            found: direction.target_dim(),
        });
    }
    Ok(PolyMap::new(
        p.domain_dim(),
        p.components()
            .iter()
            .map(|f| derive_along(f, direction.components()))
            .collect(),
    ))
}

fn derive_along(f: &Poly, field: &[Poly]) -> Poly {
    let mut acc = Poly::zero(f.nvars());
    for (i, xi) in field.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let d = f.partial(i);
        if !d.is_zero() {
            acc = &acc + &(&d * xi);
        }
    }
    acc
}

/// Derivation of a scalar polynomial along a polynomial vector field.
pub fn apply_field(field: &PolyMap, f: &Poly) -> Result<Poly> {
    if field.target_dim() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: field.target_dim(),
        });
    }
    Ok(derive_along(f, field.components()))
}

/// Componentwise derivation of a polynomial map along a vector field.
pub fn apply_field_map(field: &PolyMap, f: &PolyMap) -> Result<PolyMap> {
    directional_derivative(f, field)
}

/// `∇p` with respect to κ: the map with `κ(∇p(x), y) = dp_x(y)`.
pub fn kappa_gradient(g: &LieAlgebra, p: &Poly) -> PolyMap {
    let grad = PolyMap::new(g.dim(), p.gradient());
    grad.apply_matrix(g.gram_inverse())
}

/// Adjoint vector field `τ(ξ)(x) = [x, ξ]`.
pub fn tau_field(g: &LieAlgebra, xi: &[Scalar]) -> PolyMap {
    let n = g.dim();
    let mut comps = vec![Poly::zero(n); n];
    for (j, xj) in xi.iter().enumerate() {
        if xj.is_zero() {
            continue;
        }
        for i in 0..n {
            for (k, c) in g.structure(i, j) {
                comps[*k].add_term(Monomial::var(n, i), &(c * xj));
            }
        }
    }
    PolyMap::new(n, comps)
}

/// Pointwise bracket `x ↦ [A(x), B(x)]` of two `g`-valued maps.
pub fn bracket_maps(g: &LieAlgebra, a: &PolyMap, b: &PolyMap) -> PolyMap {
    let n = g.dim();
    assert_eq!(a.target_dim(), n);
    assert_eq!(b.target_dim(), n);
    let mut comps = vec![Poly::zero(a.domain_dim()); n];
    for (i, ai) in a.components().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.components().iter().enumerate() {
            let s = g.structure(i, j);
            if bj.is_zero() || s.is_empty() {
                continue;
            }
            let prod = ai * bj;
            for (k, c) in s {
                comps[*k] = &comps[*k] + &prod.scale(c);
            }
        }
    }
    PolyMap::new(a.domain_dim(), comps)
}

/// The scalar polynomial `x ↦ κ(A(x), B(x))`.
pub fn kappa_pairing(g: &LieAlgebra, a: &PolyMap, b: &PolyMap) -> Poly {
    let gram = g.gram();
    let mut acc = Poly::zero(a.domain_dim());
    for (i, ai) in a.components().iter().enumerate() {
        for (j, bj) in b.components().iter().enumerate() {
            let k = gram.get(i, j);
            if k.is_zero() || ai.is_zero() || bj.is_zero() {
                continue;
            }
            acc = &acc + &(ai * bj).scale(k);
        }
    }
    acc
}

/// `κ(x, x)` as a polynomial in the coordinates.
pub fn killing_quadratic(g: &LieAlgebra) -> Poly {
    let id = PolyMap::identity(g.dim());
    kappa_pairing(g, &id, &id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::sl;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0, 0]);
        let b = Monomial::new(vec![1, 1, 0]);
        let c = Monomial::new(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms.last().unwrap(), &a);
        assert_eq!(monomials_of_degree(8, 3).len(), 120);
    }

    #[test]
    fn trace_square_on_sl2() {
        // x = a h + b e + c f, tr(x^2) = 2a^2 + 2bc
        let n = 3;
        let tr2 = &(&x(n, 0) * &x(n, 0)).scale(&s(2)) + &(&x(n, 1) * &x(n, 2)).scale(&s(2));
        assert_eq!(tr2.eval(&[s(1), s(0), s(0)]), s(2));
        let g = sl(2).unwrap();
        assert_eq!(killing_quadratic(&g), tr2.scale(&s(4)));
    }

    #[test]
    fn evaluate_basic_maps() {
        let id = PolyMap::identity(3);
        let v = vec![s(3), s(-2), Scalar::from_ratio(1, 2)];
        assert_eq!(evaluate(&id, &v).unwrap(), v);
        assert_eq!(evaluate(&PolyMap::zero(3, 2), &v).unwrap(), vec![s(0), s(0)]);
        assert!(evaluate(&id, &v[..2]).is_err());
    }

    #[test]
    fn directional_derivative_cases() {
        let g = sl(2).unwrap();
        let n = 3;
        let lin = PolyMap::new(n, vec![&x(n, 0) + &x(n, 1).scale(&s(3))]);
        let v = PolyMap::constant(n, &[s(1), s(2), s(5)]);
        assert_eq!(
            directional_derivative(&lin, &v).unwrap(),
            PolyMap::constant(n, &[s(7)])
        );
        let c = PolyMap::constant(n, &[s(4)]);
        assert!(directional_derivative(&c, &v).unwrap().is_zero());
        // d/dv κ(x,x) = 2 κ(x, v)
        let q = PolyMap::new(n, vec![killing_quadratic(&g)]);
        let vv = [s(1), s(2), s(5)];
        let dq = directional_derivative(&q, &v).unwrap();
        let expected = kappa_pairing(&g, &PolyMap::identity(n), &PolyMap::constant(n, &vv)).scale(&s(2));
        assert_eq!(dq.component(0), &expected);
        assert!(directional_derivative(&q, &PolyMap::constant(n, &[s(1)])).is_err());
    }

    #[test]
    fn gradients_and_fields() {
        let g = sl(2).unwrap();
        let n = 3;
        let tr2 = killing_quadratic(&g).scale(&Scalar::from_ratio(1, 4));
        assert_eq!(
            kappa_gradient(&g, &tr2),
            PolyMap::identity(n).scale(&Scalar::from_ratio(1, 2))
        );
        assert_eq!(
            kappa_gradient(&g, &killing_quadratic(&g)),
            PolyMap::identity(n).scale(&s(2))
        );
        assert!(kappa_gradient(&g, &Poly::constant(n, s(9))).is_zero());

        let h = [s(1), s(0), s(0)];
        let tau = tau_field(&g, &h);
        assert!(tau_field(&g, &g.zero()).is_zero());
        assert_eq!(tau.evaluate(&[s(0), s(1), s(0)]).unwrap(), vec![s(0), s(-2), s(0)]);
        let ad_inv = apply_field(&tau, &killing_quadratic(&g)).unwrap();
        assert!(ad_inv.is_zero());
        assert!(apply_field(&tau, &Poly::constant(n, s(2))).unwrap().is_zero());
    }

    #[test]
    fn text_format_round_trip() {
        let n = 3;
        let p = PolyMap::new(
            n,
            vec![
                &x(n, 0).scale(&Scalar::from_ratio(-3, 7)) + &(&x(n, 1) * &x(n, 2)),
                Poly::zero(n),
                Poly::constant(n, "1/2+3 i".parse().unwrap()),
            ],
        );
        let txt = p.to_text();
        assert_eq!(PolyMap::parse(&txt, n).unwrap(), p);
        assert!(PolyMap::parse("1 : 1 0", 3).is_err());
        assert!(PolyMap::parse("1 1 0 0", 3).is_err());
    }
}
