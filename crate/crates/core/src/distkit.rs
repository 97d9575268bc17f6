//! Point-supported distributions paired with polynomial test maps.
//!
//! A [`PointDistribution`] with values in `V` is a finite sum of terms
//! `c · ∂^α δ_p · v_k`; it pairs with a scalar polynomial `f` to give the
//! vector `Σ c (∂^α f)(p) v_k`. Point-supported distributions extend
//! canonically from compactly supported test functions to polynomials, so
//! every identity is checked exactly against monomials.
//!
//! At the origin a distribution is equivalently its table of moments
//! `m_k(x^β) = ⟨T, x^β⟩_k = β! c_{β,k}`. Covariance, factorization and
//! the spaces of covariant distributions are solved in moment coordinates,
//! one homogeneous degree at a time.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::covariants::tau_terms;
use crate::error::{Error, Result};
use crate::graded::{TermSpace, WeightFilter};
use crate::liecore::LieAlgebra;
use crate::linalg::{Echelon, Inserted, SparseVec};
use crate::polyalg::{apply_field, monomials_of_degree, tau_field, Monomial, Poly, PolyMap};
use crate::rep::{adjoint_rep, trivial_rep, Representation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistTerm {
    pub point: Vec<Scalar>,
    pub alpha: Monomial,
    pub component: usize,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDistribution {
    nvars: usize,
    target_dim: usize,
    terms: Vec<DistTerm>,
}

fn binomial_multi(a: &Monomial, g: &Monomial) -> Scalar {
    a.factorial() / (g.factorial() * a.div(g).unwrap().factorial())
}

fn derivative(f: &Poly, alpha: &Monomial) -> Poly {
    let mut out = f.clone();
    for (i, &e) in alpha.exponents().iter().enumerate() {
        for _ in 0..e {
            out = out.partial(i);
        }
    }
    out
}

/// All monomials dividing `m`.
fn divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(m.nvars())];
    for (i, &e) in m.exponents().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = cur.raise(i);
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out
}

impl PointDistribution {
    pub fn zero(nvars: usize, target_dim: usize) -> Self {
        PointDistribution {
            nvars,
            target_dim,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(nvars: usize, target_dim: usize, terms: Vec<DistTerm>) -> Result<Self> {
        for t in &terms {
            if t.point.len() != nvars || t.alpha.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: t.point.len(),
                });
            }
            if t.component >= target_dim {
                return Err(Error::DimensionMismatch {
                    expected: target_dim,
                    found: t.component + 1,
                });
            }
        }
        let mut d = PointDistribution {
            nvars,
            target_dim,
            terms,
        };
        d.simplify();
        Ok(d)
    }

    /// `c · ∂^α δ_p · v_k`.
    pub fn term(point: Vec<Scalar>, alpha: Monomial, component: usize, target_dim: usize, coeff: Scalar) -> Self {
        let nvars = point.len();
        Self::from_terms(
            nvars,
            target_dim,
            vec![DistTerm {
                point,
                alpha,
                component,
                coeff,
            }],
        )
        .expect("consistent term")
    }

    pub fn delta(point: Vec<Scalar>) -> Self {
        let n = point.len();
        Self::term(point, Monomial::one(n), 0, 1, Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn terms(&self) -> &[DistTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.alpha.degree()).max().unwrap_or(0)
    }

    pub fn is_at_origin(&self) -> bool {
        self.terms.iter().all(|t| t.point.iter().all(Scalar::is_zero))
    }

    fn simplify(&mut self) {
        let mut acc: HashMap<(Vec<Scalar>, Monomial, usize), Scalar> = HashMap::new();
        for t in self.terms.drain(..) {
            *acc.entry((t.point, t.alpha, t.component)).or_default() += &t.coeff;
        }
        let mut terms: Vec<DistTerm> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((point, alpha, component), coeff)| DistTerm {
                point,
                alpha,
                component,
                coeff,
            })
            .collect();
        terms.sort_by(|a, b| {
            let pa: Vec<String> = a.point.iter().map(Scalar::to_string).collect();
            let pb: Vec<String> = b.point.iter().map(Scalar::to_string).collect();
            (a.alpha.degree(), &a.alpha, a.component, pa).cmp(&(b.alpha.degree(), &b.alpha, b.component, pb))
        });
        self.terms = terms;
    }

    pub fn add(&self, o: &PointDistribution) -> PointDistribution {
        assert_eq!((self.nvars, self.target_dim), (o.nvars, o.target_dim));
        let mut d = self.clone();
        d.terms.extend(o.terms.iter().cloned());
        d.simplify();
        d
    }

    pub fn scale(&self, c: &Scalar) -> PointDistribution {
        let mut d = self.clone();
        for t in &mut d.terms {
            t.coeff = &t.coeff * c;
        }
        d.simplify();
        d
    }

    /// `⟨T, f⟩ ∈ V` for a scalar test polynomial.
    pub fn pair(&self, f: &Poly) -> Result<Vec<Scalar>> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let mut out = vec![Scalar::zero(); self.target_dim];
        for t in &self.terms {
            let v = derivative(f, &t.alpha).eval(&t.point);
            out[t.component].add_mul(&t.coeff, &v);
        }
        Ok(out)
    }

    /// Scalar pairing `Σ c (∂^α f_k)(p)` with a `V`-valued test map.
    pub fn pair_map(&self, f: &PolyMap) -> Result<Scalar> {
        if f.domain_dim() != self.nvars || f.target_dim() != self.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: f.target_dim(),
            });
        }
        let mut out = Scalar::zero();
        for t in &self.terms {
            let v = derivative(f.component(t.component), &t.alpha).eval(&t.point);
            out.add_mul(&t.coeff, &v);
        }
        Ok(out)
    }

    /// Moments `m_k(x^β)` of an origin-supported distribution at degree `d`.
    pub fn moments(&self, d: usize) -> SparseVec {
        let space = TermSpace::new(self.nvars, d, self.target_dim);
        let mut v = SparseVec::new();
        for t in &self.terms {
            if t.alpha.degree() == d {
                debug_assert!(t.point.iter().all(Scalar::is_zero));
                v.insert(space.index_of(&t.alpha, t.component), &t.coeff * &t.alpha.factorial());
            }
        }
        v
    }

    fn from_moments(space: &TermSpace, m: &SparseVec) -> Vec<DistTerm> {
        m.iter()
            .map(|(idx, x)| {
                let (alpha, c) = space.decode(*idx);
                DistTerm {
                    point: vec![Scalar::zero(); space.nvars()],
                    alpha: alpha.clone(),
                    component: c,
                    coeff: x / &alpha.factorial(),
                }
            })
            .collect()
    }

    /// Agreement of all pairings with monomials up to `degree`.
    pub fn agrees_with(&self, o: &PointDistribution, degree: usize) -> Result<bool> {
        for d in 0..=degree {
            for m in monomials_of_degree(self.nvars, d) {
                let f = Poly::monomial(self.nvars, m, Scalar::one());
                if self.pair(&f)? != o.pair(&f)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Line format `point | alpha | component | coeff`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.terms {
            let p: Vec<String> = t.point.iter().map(Scalar::to_string).collect();
            let a: Vec<String> = t.alpha.exponents().iter().map(u16::to_string).collect();
            let _ = writeln!(s, "{} | {} | {} | {}", p.join(" "), a.join(" "), t.component, t.coeff);
        }
        s
    }

    pub fn parse(text: &str, nvars: usize, target_dim: usize) -> Result<Self> {
        let mut terms = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            let bad = |what: &str| Error::Parse(format!("line {}: {what}", ln + 1));
            if fields.len() != 4 {
                return Err(bad("expected `point | alpha | component | coeff`"));
            }
            let point = fields[0]
                .split_whitespace()
                .map(str::parse::<Scalar>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("bad point"))?;
            let alpha = fields[1]
                .split_whitespace()
                .map(str::parse::<u16>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("bad multi-index"))?;
            let component = fields[2].parse::<usize>().map_err(|_| bad("bad component"))?;
            let coeff = fields[3].parse::<Scalar>().map_err(|_| bad("bad coefficient"))?;
            if point.len() != nvars || alpha.len() != nvars {
                return Err(bad("wrong number of coordinates"));
            }
            terms.push(DistTerm {
                point,
                alpha: Monomial::new(alpha),
                component,
                coeff,
            });
        }
        Self::from_terms(nvars, target_dim, terms)
    }
}

/// `⟨θχ, f⟩ = Σ_k ⟨θ, f χ_k⟩ v_k`, expanded by the Leibniz rule.
pub fn theta_chi(theta: &PointDistribution, chi: &PolyMap) -> Result<PointDistribution> {
    if theta.target_dim != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: theta.target_dim,
        });
    }
    if chi.domain_dim() != theta.nvars {
        return Err(Error::DimensionMismatch {
            expected: theta.nvars,
            found: chi.domain_dim(),
        });
    }
    let mut terms = Vec::new();
    for t in &theta.terms {
        for gamma in divisors(&t.alpha) {
            let rest = t.alpha.div(&gamma).unwrap();
            let b = binomial_multi(&t.alpha, &gamma);
            for (k, ck) in chi.components().iter().enumerate() {
                let v = derivative(ck, &rest).eval(&t.point);
                if v.is_zero() {
                    continue;
                }
                terms.push(DistTerm {
                    point: t.point.clone(),
                    alpha: gamma.clone(),
                    component: k,
                    coeff: &(&t.coeff * &b) * &v,
                });
            }
        }
    }
    PointDistribution::from_terms(theta.nvars, chi.target_dim(), terms)
}

/// Nonzero values of `π(ξ_j)·⟨T, f⟩ - ⟨T, τ(ξ_j)·f⟩` over monomial tests,
/// the derivative of `⟨g·T, f⟩ = π(g)·⟨T, f∘Ad(g)⟩` at the identity.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CovarianceDefect {
    pub entries: Vec<(usize, Monomial, Vec<Scalar>)>,
}

impl CovarianceDefect {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn covariance_defect(t: &PointDistribution, rho: &Representation, test_degree: usize) -> Result<CovarianceDefect> {
    let g = rho.algebra();
    if t.nvars != g.dim() || t.target_dim != rho.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.target_dim(),
            found: t.target_dim,
        });
    }
    let n = g.dim();
    let taus: Vec<PolyMap> = (0..n).map(|j| tau_field(g, &g.basis_element(j))).collect();
    let tests: Vec<Monomial> = (0..=test_degree).flat_map(|d| monomials_of_degree(n, d)).collect();
    let entries: Vec<Result<Vec<(usize, Monomial, Vec<Scalar>)>>> = tests
        .par_iter()
        .map(|m| {
            let f = Poly::monomial(n, m.clone(), Scalar::one());
            let base = t.pair(&f)?;
            let mut out = Vec::new();
            for (j, tau) in taus.iter().enumerate() {
                let mut v = rho.matrix(j).mul_vec(&base);
                for (a, b) in v.iter_mut().zip(t.pair(&apply_field(tau, &f)?)?) {
                    *a -= &b;
                }
                if !v.iter().all(Scalar::is_zero) {
                    out.push((j, m.clone(), v));
                }
            }
            Ok(out)
        })
        .collect();
    let mut d = CovarianceDefect::default();
    for e in entries {
        d.entries.extend(e?);
    }
    Ok(d)
}

pub fn is_covariant(t: &PointDistribution, rho: &Representation) -> Result<bool> {
    Ok(covariance_defect(t, rho, t.order() + 1)?.is_zero())
}

/// `⟨T, f⟩` for `f(x) = [x, φ(x)]`, with `g*` identified with `g` by κ.
pub fn kernel_orthogonality_check(t: &PointDistribution, g: &Arc<LieAlgebra>, phi: &PolyMap) -> Result<Scalar> {
    let ad = adjoint_rep(g);
    if !is_covariant(t, &ad)? {
        return Err(Error::NotCovariant { basis_index: 0 });
    }
    pair_bracket(t, g, phi)
}

/// The pairing of [`kernel_orthogonality_check`] without the covariance
/// precheck.
pub fn pair_bracket(t: &PointDistribution, g: &LieAlgebra, phi: &PolyMap) -> Result<Scalar> {
    let f = crate::polyalg::bracket_maps(g, &PolyMap::identity(g.dim()), phi);
    t.pair_map(&f.apply_matrix(g.gram()))
}

/// Moments `m_c(x^β)` of a covariant distribution vanish unless
/// `wt(v_c) + Σ β_i wt(e_i) = 0`.
fn moment_filter(rho: &Representation) -> Option<WeightFilter> {
    let gw = adjoint_rep(rho.algebra()).weights()?;
    let neg = gw.into_iter().map(|w| w.into_iter().map(|x| -x).collect()).collect();
    Some(WeightFilter::new(neg, rho.weights()?))
}

/// Moment-space kernel at degree `k`: covariant distributions at the origin
/// homogeneous of order exactly `k`, as moment vectors.
fn point_space_degree(rho: &Representation, k: usize) -> (TermSpace, Vec<SparseVec>) {
    let g = rho.algebra();
    let n = g.dim();
    let t = rho.target_dim();
    let space = TermSpace::new(n, k, t);
    let filter = moment_filter(rho);
    let taus = tau_terms(g);
    let block = space.len();
    let unknowns: Vec<usize> = (0..space.len())
        .filter(|&u| {
            let (m, c) = space.decode(u);
            filter.as_ref().is_none_or(|f| f.admits(m, c))
        })
        .collect();
    let columns: Vec<SparseVec> = unknowns
        .par_iter()
        .map(|&u| {
            let (beta, c) = space.decode(u);
            let mut col = SparseVec::new();
            let mut bump = |idx: usize, x: Scalar| {
                let e = col.entry(idx).or_default();
                *e += &x;
                if e.is_zero() {
                    col.remove(&idx);
                }
            };
            for (j, terms) in taus.iter().enumerate() {
                let pj = rho.matrix(j);
                for a in 0..t {
                    let x = pj.get(a, c);
                    if !x.is_zero() {
                        bump(j * block + space.index_of(beta, a), x.clone());
                    }
                }
                // x^β appears in τ(ξ_j)·x^γ for γ = β - e_k + e_i with weight γ_i
                for (kk, i, coef) in terms {
                    let Some(low) = beta.lower(*kk) else { continue };
                    let gamma = low.raise(*i);
                    let w = Scalar::from_int(-(gamma.exponents()[*i] as i64));
                    bump(j * block + space.index_of(&gamma, c), &w * coef);
                }
            }
            col
        })
        .collect();
    let mut ech = Echelon::tracked();
    let mut kernel = Vec::new();
    for (u, col) in unknowns.iter().zip(columns) {
        if let Inserted::Dependent(combo) = ech.insert(col, *u) {
            kernel.push(combo);
        }
    }
    kernel.reverse();
    (space, kernel)
}

/// Basis of the covariant distributions supported at the origin of order
/// at most `order`, homogeneous in the order of derivatives.
pub fn covariant_point_space(rho: &Representation, order: usize) -> Vec<PointDistribution> {
    let n = rho.algebra().dim();
    let t = rho.target_dim();
    let mut out = Vec::new();
    for k in 0..=order {
        let (space, kernel) = point_space_degree(rho, k);
        for m in kernel {
            out.push(PointDistribution {
                nvars: n,
                target_dim: t,
                terms: PointDistribution::from_moments(&space, &m),
            });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub thetas: Vec<PointDistribution>,
    /// every θ_i is invariant
    pub invariant: bool,
    /// whether some factorization with invariant θ_i exists, when searched
    pub invariant_solution_exists: Option<bool>,
}

impl Factorization {
    pub fn reconstruct(&self, chis: &[PolyMap], target_dim: usize) -> Result<PointDistribution> {
        let n = chis.first().map_or(0, PolyMap::domain_dim);
        let mut acc = PointDistribution::zero(n, target_dim);
        for (th, chi) in self.thetas.iter().zip(chis) {
            acc = acc.add(&theta_chi(th, chi)?);
        }
        Ok(acc)
    }
}

/// Solves `⟨T, x^β⟩_c = Σ_i ⟨θ_i, x^β χ_{i,c}⟩` degree by degree. With
/// `invariant`, each `θ_i` is sought in the span of the invariant scalar
/// distributions; otherwise only torus-invariant moments are used, which
/// loses no solutions since the equations commute with the torus.
fn factor_impl(
    t: &PointDistribution,
    g: &Arc<LieAlgebra>,
    chis: &[PolyMap],
    invariant: bool,
) -> Result<Option<Vec<PointDistribution>>> {
    let n = g.dim();
    let tdim = t.target_dim;
    let scalar = trivial_rep(g);
    let scalar_filter: Option<WeightFilter> = moment_filter(&scalar);
    let degs: Vec<usize> = chis.iter().map(PolyMap::degree).collect();
    let mut thetas: Vec<Vec<DistTerm>> = vec![Vec::new(); chis.len()];
    for k in 0..=t.order() {
        let target_space = TermSpace::new(n, k, tdim);
        let rhs = t.moments(k);
        // unknown blocks per generator: either moments at degree k + e_i or
        // coefficients over invariant moment vectors
        let mut labels: Vec<(usize, SparseVec)> = Vec::new();
        let mut spaces: Vec<TermSpace> = Vec::with_capacity(chis.len());
        for (i, &e) in degs.iter().enumerate() {
            let sp = TermSpace::new(n, k + e, 1);
            if invariant {
                let (_, basis) = point_space_degree(&scalar, k + e);
                for b in basis {
                    labels.push((i, b));
                }
            } else {
                for u in 0..sp.len() {
                    let (m, _) = sp.decode(u);
                    if scalar_filter.as_ref().is_none_or(|f| f.admits(m, 0)) {
                        labels.push((i, SparseVec::from([(u, Scalar::one())])));
                    }
                }
            }
            spaces.push(sp);
        }
        let columns: Vec<SparseVec> = labels
            .par_iter()
            .map(|(i, moments)| {
                let sp = &spaces[*i];
                let mut col = SparseVec::new();
                for (u, w) in moments {
                    let (gamma, _) = sp.decode(*u);
                    for (c, comp) in chis[*i].components().iter().enumerate() {
                        for (m, coef) in comp.terms() {
                            let Some(beta) = gamma.div(m) else { continue };
                            let idx = target_space.index_of(&beta, c);
                            let e = col.entry(idx).or_default();
                            e.add_mul(w, coef);
                            if e.is_zero() {
                                col.remove(&idx);
                            }
                        }
                    }
                }
                col
            })
            .collect();
        let mut ech = Echelon::tracked();
        for (id, c) in columns.into_iter().enumerate() {
            ech.insert(c, id);
        }
        let Some(sol) = ech.solve(&rhs) else {
            return Ok(None);
        };
        let mut per: Vec<SparseVec> = vec![SparseVec::new(); chis.len()];
        for (id, c) in sol {
            let (i, moments) = &labels[id];
            for (u, w) in moments {
                let e = per[*i].entry(*u).or_default();
                e.add_mul(&c, w);
            }
        }
        for (i, mut m) in per.into_iter().enumerate() {
            m.retain(|_, x| !x.is_zero());
            thetas[i].extend(PointDistribution::from_moments(&spaces[i], &m));
        }
    }
    let out = thetas
        .into_iter()
        .map(|terms| PointDistribution::from_terms(n, 1, terms))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(out))
}

/// Writes a covariant origin-supported `T` as `Σ θ_i χ_i`. With
/// `require_invariant` the `θ_i` must be invariant; otherwise the existence
/// of an invariant solution is also reported.
pub fn factor_point_distribution(
    t: &PointDistribution,
    rho: &Representation,
    chis: &[PolyMap],
    require_invariant: bool,
) -> Result<Factorization> {
    let g = rho.algebra();
    if !t.is_at_origin() {
        return Err(Error::InvalidRepresentation(
            "factorization needs a distribution supported at the origin".into(),
        ));
    }
    for chi in chis {
        if chi.target_dim() != t.target_dim || !chi.is_homogeneous() {
            return Err(Error::DimensionMismatch {
                expected: t.target_dim,
                found: chi.target_dim(),
            });
        }
    }
    if !is_covariant(t, rho)? {
        return Err(Error::NotCovariant { basis_index: 0 });
    }
    let inv = factor_impl(t, g, chis, true)?;
    if require_invariant {
        let thetas = inv.ok_or(Error::NoFactorization { degree: t.order() })?;
        return Ok(Factorization {
            thetas,
            invariant: true,
            invariant_solution_exists: Some(true),
        });
    }
    let found = inv.is_some();
    let thetas = factor_impl(t, g, chis, false)?.ok_or(Error::NoFactorization { degree: t.order() })?;
    let scalar = trivial_rep(g);
    let mut all_inv = true;
    for th in &thetas {
        all_inv &= is_covariant(th, &scalar)?;
    }
    Ok(Factorization {
        thetas,
        invariant: all_inv,
        invariant_solution_exists: Some(found),
    })
}

/// Groups the terms of a distribution by base point.
pub fn support(t: &PointDistribution) -> Vec<Vec<Scalar>> {
    let mut pts: BTreeMap<Vec<String>, Vec<Scalar>> = BTreeMap::new();
    for term in &t.terms {
        pts.entry(term.point.iter().map(Scalar::to_string).collect())
            .or_insert_with(|| term.point.clone());
    }
    pts.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::{invariant_generators, kostant_basis};
    use crate::liecore::catalog;

    fn sl2() -> Arc<LieAlgebra> {
        Arc::new(catalog("sl2").unwrap())
    }

    fn zero3() -> Vec<Scalar> {
        vec![Scalar::zero(); 3]
    }

    #[test]
    fn pairing_examples() {
        let f = Poly::parse("3 : 0 0 0\n1 : 1 0 0\n-2 : 0 2 0", 3).unwrap();
        assert_eq!(PointDistribution::delta(zero3()).pair(&f).unwrap(), vec![Scalar::from_int(3)]);
        let d0 = PointDistribution::term(zero3(), Monomial::var(3, 0), 0, 1, Scalar::one());
        assert_eq!(d0.pair(&Poly::var(3, 0)).unwrap(), vec![Scalar::one()]);
        assert_eq!(d0.pair(&Poly::one(3)).unwrap(), vec![Scalar::zero()]);
    }

    #[test]
    fn theta_chi_examples() {
        let g = sl2();
        let d0 = PointDistribution::term(zero3(), Monomial::var(3, 0), 0, 1, Scalar::one());
        let tc = theta_chi(&d0, &PolyMap::identity(3)).unwrap();
        assert_eq!(tc.pair(&Poly::one(3)).unwrap(), vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
        let delta = theta_chi(&PointDistribution::delta(zero3()), &PolyMap::identity(3)).unwrap();
        assert!(delta.is_zero());
        assert!(is_covariant(&PointDistribution::delta(zero3()), &trivial_rep(&g)).unwrap());
        assert!(!is_covariant(&d0, &trivial_rep(&g)).unwrap());
    }

    #[test]
    fn sl2_point_spaces_and_factorization() {
        let g = sl2();
        let ad = adjoint_rep(&g);
        let basis = kostant_basis(&ad, 4).unwrap();
        let order1 = covariant_point_space(&ad, 1);
        assert_eq!(order1.len(), 1);
        for t in covariant_point_space(&ad, 4) {
            let f = factor_point_distribution(&t, &ad, &basis.generators, true).unwrap();
            assert!(f.reconstruct(&basis.generators, 3).unwrap().agrees_with(&t, 5).unwrap());
        }
        assert_eq!(covariant_point_space(&trivial_rep(&g), 0).len(), 1);
        let gens = invariant_generators(&g, 4).unwrap();
        let zero = PointDistribution::zero(3, 3);
        let f = factor_point_distribution(&zero, &ad, &gens.qmaps, false).unwrap();
        assert!(f.thetas.iter().all(PointDistribution::is_zero));
    }

    #[test]
    fn text_round_trip() {
        let t = PointDistribution::term(
            vec![Scalar::one(), Scalar::zero(), Scalar::from_ratio(1, 2)],
            Monomial::new(vec![1, 0, 2]),
            2,
            3,
            Scalar::from_ratio(-3, 4),
        );
        assert_eq!(PointDistribution::parse(&t.to_text(), 3, 3).unwrap(), t);
    }
}
