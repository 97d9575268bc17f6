//! Decomposition over the invariant ring and division of tangent fields.
//!
//! Both problems are linear and graded. A covariant `P` of degree `D` is
//! written in the span of `{Q·P_i : deg Q + deg P_i = D}` with `Q` running
//! through an invariant basis, and a field `X` homogeneous of degree `D`
//! is divided by solving `[x, Y(x)] = X(x)` for `Y` homogeneous of degree
//! `D - 1`. The per-degree eliminations are cached, so repeated calls with
//! the same basis only pay for a back substitution.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::covariants::{first_defect, invariant_generators, default_degree_bound, CovariantBasis, InvariantGenerators, InvariantRing};
use crate::error::{Error, Result};
use crate::graded::TermSpace;
use crate::liecore::LieAlgebra;
use crate::linalg::{Echelon, SparseVec};
use crate::polyalg::{bracket_maps, kappa_pairing, Poly, PolyMap};
use crate::rep::{adjoint_rep, Representation};

pub const TOL_INPUT: f64 = 1e-6;
pub const TOL_RESIDUAL: f64 = 1e-9;

/// Unique invariant coefficients of a covariant.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub coefficients: Vec<Poly>,
    pub basis: Arc<CovariantBasis>,
}

impl Decomposition {
    pub fn reconstruct(&self) -> PolyMap {
        let g = self.basis.algebra();
        let mut acc = PolyMap::zero(g.dim(), self.basis.rep.target_dim());
        for (q, p) in self.coefficients.iter().zip(&self.basis.generators) {
            acc = &acc + &p.scale_poly(q);
        }
        acc
    }
}

struct ModuleDegree {
    space: TermSpace,
    echelon: Echelon,
    // (generator, invariant) per column id
    labels: Vec<(usize, Poly)>,
}

/// Cached graded solver for decompositions over a fixed basis.
pub struct Decomposer {
    basis: Arc<CovariantBasis>,
    ring: Arc<InvariantRing>,
    cache: Mutex<BTreeMap<usize, Arc<ModuleDegree>>>,
}

impl Decomposer {
    pub fn new(basis: Arc<CovariantBasis>) -> Self {
        let ring = Arc::new(InvariantRing::new(basis.algebra().clone()));
        Self::with_ring(basis, ring)
    }

    pub fn with_ring(basis: Arc<CovariantBasis>, ring: Arc<InvariantRing>) -> Self {
        Decomposer {
            basis,
            ring,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn basis(&self) -> &Arc<CovariantBasis> {
        &self.basis
    }

    pub fn ring(&self) -> &Arc<InvariantRing> {
        &self.ring
    }

    fn degree(&self, d: usize) -> Arc<ModuleDegree> {
        if let Some(m) = self.cache.lock().unwrap().get(&d) {
            return m.clone();
        }
        let n = self.basis.algebra().dim();
        let space = TermSpace::new(n, d, self.basis.rep.target_dim());
        let mut labels = Vec::new();
        let mut cols = Vec::new();
        for (i, (p, &e)) in self.basis.generators.iter().zip(&self.basis.degrees).enumerate() {
            if e > d {
                continue;
            }
            for q in self.ring.degree(d - e).iter() {
                cols.push(space.vectorize(&p.scale_poly(q)));
                labels.push((i, q.clone()));
            }
        }
        let mut echelon = Echelon::tracked();
        for (id, c) in cols.into_iter().enumerate() {
            echelon.insert(c, id);
        }
        let m = Arc::new(ModuleDegree {
            space,
            echelon,
            labels,
        });
        self.cache.lock().unwrap().insert(d, m.clone());
        m
    }

    pub fn decompose(&self, p: &PolyMap) -> Result<Decomposition> {
        let rho = &self.basis.rep;
        if let Some(j) = first_defect(p, rho)? {
            return Err(Error::NotCovariant { basis_index: j });
        }
        let n = self.basis.algebra().dim();
        let mut coeffs = vec![Poly::zero(n); self.basis.rank()];
        for (d, part) in p.homogeneous_parts() {
            let sys = self.degree(d);
            let target = sys.space.vectorize(&part);
            let sol = sys
                .echelon
                .solve(&target)
                .ok_or(Error::NotInModule { degree: d })?;
            for (id, c) in sol {
                let (i, q) = &sys.labels[id];
                coeffs[*i] = &coeffs[*i] + &q.scale(&c);
            }
        }
        Ok(Decomposition {
            coefficients: coeffs,
            basis: self.basis.clone(),
        })
    }
}

/// One-shot decomposition; prefer [`Decomposer`] for repeated calls.
pub fn kostant_decompose(p: &PolyMap, basis: &CovariantBasis) -> Result<Decomposition> {
    Decomposer::new(Arc::new(basis.clone())).decompose(p)
}

/// Components `x ↦ κ(q_i(x), X(x))`.
pub fn tangency_defect(x: &PolyMap, gens: &InvariantGenerators, g: &LieAlgebra) -> Result<Vec<Poly>> {
    if x.domain_dim() != g.dim() || x.target_dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: if x.domain_dim() != g.dim() {
                x.domain_dim()
            } else {
                x.target_dim()
            },
        });
    }
    Ok(gens.qmaps.iter().map(|q| kappa_pairing(g, q, x)).collect())
}

struct DivisionDegree {
    source: TermSpace,
    target: TermSpace,
    echelon: Echelon,
}

/// Cached solver for `π(x)·Y(x) = X(x)`, degree by degree. With the adjoint
/// representation this is division of vector fields, `[x, Y(x)] = X(x)`.
pub struct Divider {
    rho: Representation,
    gens: Option<InvariantGenerators>,
    cache: Mutex<BTreeMap<usize, Arc<DivisionDegree>>>,
}

impl Divider {
    /// Adjoint divider with the tangency precheck.
    pub fn adjoint(g: &Arc<LieAlgebra>) -> Result<Self> {
        let gens = invariant_generators(g, default_degree_bound(g))?;
        Ok(Self::adjoint_with(g, gens))
    }

    pub fn adjoint_with(g: &Arc<LieAlgebra>, gens: InvariantGenerators) -> Self {
        Divider {
            rho: adjoint_rep(g),
            gens: Some(gens),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Divider for an arbitrary representation, without any precheck.
    pub fn generalized(rho: Representation) -> Self {
        Divider {
            rho,
            gens: None,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn generators(&self) -> Option<&InvariantGenerators> {
        self.gens.as_ref()
    }

    /// `Y` of degree `e` maps into degree `e + 1`.
    fn degree(&self, e: usize) -> Arc<DivisionDegree> {
        if let Some(m) = self.cache.lock().unwrap().get(&e) {
            return m.clone();
        }
        let g = self.rho.algebra();
        let n = g.dim();
        let t = self.rho.target_dim();
        let source = TermSpace::new(n, e, t);
        let target = TermSpace::new(n, e + 1, t);
        let cols: Vec<SparseVec> = (0..source.len())
            .into_par_iter()
            .map(|u| {
                let (m, c) = source.decode(u);
                let mut col = SparseVec::new();
                for k in 0..n {
                    let pk = self.rho.matrix(k);
                    let mk = m.raise(k);
                    for a in 0..t {
                        let x = pk.get(a, c);
                        if x.is_zero() {
                            continue;
                        }
                        let idx = target.index_of(&mk, a);
                        let e = col.entry(idx).or_default();
                        *e += x;
                        if e.is_zero() {
                            col.remove(&idx);
                        }
                    }
                }
                col
            })
            .collect();
        let mut echelon = Echelon::tracked();
        for (u, c) in cols.into_iter().enumerate() {
            echelon.insert(c, u);
        }
        let m = Arc::new(DivisionDegree {
            source,
            target,
            echelon,
        });
        self.cache.lock().unwrap().insert(e, m.clone());
        m
    }

    /// `π(x)·Y(x)` as a map.
    pub fn apply(&self, y: &PolyMap) -> PolyMap {
        let n = self.rho.algebra().dim();
        let mut acc = PolyMap::zero(n, self.rho.target_dim());
        for k in 0..n {
            let shifted = y.apply_matrix(self.rho.matrix(k)).scale_poly(&Poly::var(n, k));
            acc = &acc + &shifted;
        }
        acc
    }

    pub fn divide(&self, x: &PolyMap, degree_bound: usize) -> Result<PolyMap> {
        let g = self.rho.algebra();
        let n = g.dim();
        let t = self.rho.target_dim();
        if x.domain_dim() != n || x.target_dim() != t {
            return Err(Error::DimensionMismatch {
                expected: t,
                found: x.target_dim(),
            });
        }
        if let Some(gens) = &self.gens {
            for (i, d) in tangency_defect(x, gens, g)?.into_iter().enumerate() {
                if !d.is_zero() {
                    return Err(Error::NotTangent {
                        component: i,
                        defect: d.to_text(),
                    });
                }
            }
        }
        let mut y = PolyMap::zero(n, t);
        for (d, part) in x.homogeneous_parts() {
            if d == 0 || d - 1 > degree_bound {
                return Err(Error::DegreeBoundExceeded {
                    bound: degree_bound,
                    what: format!("no polynomial quotient for the degree-{d} part"),
                });
            }
            let sys = self.degree(d - 1);
            let sol = sys
                .echelon
                .solve(&sys.target.vectorize(&part))
                .ok_or_else(|| Error::DegreeBoundExceeded {
                    bound: degree_bound,
                    what: format!("no polynomial quotient for the degree-{d} part"),
                })?;
            y = &y + &sys.source.to_map(&sol);
        }
        if &self.apply(&y) != x {
            return Err(Error::ConsistencyFailure("division check failed".into()));
        }
        Ok(y)
    }
}

/// Finds `Y` with `[x, Y(x)] = X(x)` exactly.
pub fn dixmier_divide(g: &Arc<LieAlgebra>, x: &PolyMap, degree_bound: usize) -> Result<PolyMap> {
    Divider::adjoint(g)?.divide(x, degree_bound)
}

/// Experimental: finds `Y` with `π(x)·Y(x) = X(x)` for any representation.
/// No existence guarantee is known.
pub fn generalized_divide(rho: &Representation, x: &PolyMap, degree_bound: usize) -> Result<PolyMap> {
    Divider::generalized(rho.clone()).divide(x, degree_bound)
}

/// A sampled value `f(x)` of a covariant function.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub input: f64,
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            input: TOL_INPUT,
            residual: TOL_RESIDUAL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseDecomposition {
    pub points: Vec<Vec<f64>>,
    pub coeff_values: Vec<Vec<f64>>,
    pub residuals: Vec<f64>,
}

fn to_dmatrix(m: &crate::linalg::Matrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m.get(i, j).to_f64())
}

/// Centralizer of `x` as an orthonormal basis of the numerical null space
/// of `ad(x)`.
fn float_centralizer(ads: &[DMatrix<f64>], x: &[f64]) -> Vec<DVector<f64>> {
    let n = x.len();
    let mut a = DMatrix::zeros(n, n);
    for (m, &xi) in ads.iter().zip(x) {
        a += m * xi;
    }
    let svd = a.svd(false, true);
    let smax = svd.singular_values.max().max(1.0);
    let vt = svd.v_t.unwrap();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= 1e-9 * smax)
        .map(|(i, _)| vt.row(i).transpose())
        .collect()
}

/// Least-squares coefficients of `samples` against the basis values, with
/// the columns taken in `order`.
fn pointwise_impl(
    samples: &[Sample],
    basis: &CovariantBasis,
    tol: Tolerances,
    order: &[usize],
) -> Result<PointwiseDecomposition> {
    let g = basis.algebra();
    let n = g.dim();
    let t = basis.rep.target_dim();
    let r = basis.rank();
    if basis.generators.iter().any(|p| !(p.field() == crate::scalar::FieldTag::Rational)) {
        return Err(Error::InvalidRepresentation(
            "pointwise decomposition needs a real basis".into(),
        ));
    }
    let ads: Vec<DMatrix<f64>> = (0..n).map(|i| to_dmatrix(g.ad_basis(i))).collect();
    let pis: Vec<DMatrix<f64>> = basis.rep.matrices().iter().map(to_dmatrix).collect();
    let solved: Vec<Result<(Vec<f64>, f64)>> = samples
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            if s.point.len() != n || s.value.len() != t {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.point.len(),
                });
            }
            let cent = float_centralizer(&ads, &s.point);
            if cent.len() != g.rank() {
                return Err(Error::NotRegular {
                    centralizer_dim: cent.len(),
                    rank: g.rank(),
                });
            }
            let v = DVector::from_column_slice(&s.value);
            let vnorm = v.norm();
            for z in &cent {
                let mut pz = DMatrix::zeros(t, t);
                for (m, &zi) in pis.iter().zip(z.iter()) {
                    pz += m * zi;
                }
                let scale = pz.norm() * vnorm;
                let violation = if scale > 0.0 { (&pz * &v).norm() / scale } else { 0.0 };
                if violation > tol.input {
                    return Err(Error::NotPointwiseFixed {
                        index: k,
                        violation,
                        tolerance: tol.input,
                    });
                }
            }
            let cols: Vec<Vec<f64>> = order
                .iter()
                .map(|&i| basis.generators[i].eval_f64(&s.point))
                .collect();
            let a = DMatrix::from_fn(t, r, |i, j| cols[j][i]);
            let c = if r == 0 {
                DVector::zeros(0)
            } else {
                a.clone()
                    .svd(true, true)
                    .solve(&v, 1e-14)
                    .map_err(|e| Error::ConsistencyFailure(e.to_string()))?
            };
            let residual = (&a * &c - &v).norm();
            let limit = tol.residual * (1.0 + vnorm);
            if residual > limit {
                return Err(Error::ResidualExceeded {
                    index: k,
                    residual,
                    tolerance: limit,
                });
            }
            let mut out = vec![0.0; r];
            for (j, &i) in order.iter().enumerate() {
                out[i] = c[j];
            }
            Ok((out, residual))
        })
        .collect();
    let mut res = PointwiseDecomposition {
        points: Vec::with_capacity(samples.len()),
        coeff_values: Vec::with_capacity(samples.len()),
        residuals: Vec::with_capacity(samples.len()),
    };
    for (s, out) in samples.iter().zip(solved) {
        let (c, r) = out?;
        res.points.push(s.point.clone());
        res.coeff_values.push(c);
        res.residuals.push(r);
    }
    Ok(res)
}

/// Coefficients `f_i(x_k)` with `f(x_k) = Σ f_i(x_k) P_i(x_k)` at each
/// sample, after checking regularity and `π(z)·f(x) = 0` for `z` in the
/// centralizer.
pub fn pointwise_decompose(
    samples: &[Sample],
    basis: &CovariantBasis,
    tol: Tolerances,
) -> Result<PointwiseDecomposition> {
    let order: Vec<usize> = (0..basis.rank()).collect();
    pointwise_impl(samples, basis, tol, &order)
}

/// Same solve with the basis columns in a permuted order; the result is
/// reported in the original order.
pub fn pointwise_decompose_permuted(
    samples: &[Sample],
    basis: &CovariantBasis,
    tol: Tolerances,
    order: &[usize],
) -> Result<PointwiseDecomposition> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..basis.rank()).collect::<Vec<_>>() {
        return Err(Error::DimensionMismatch {
            expected: basis.rank(),
            found: order.len(),
        });
    }
    pointwise_impl(samples, basis, tol, order)
}

/// Exact bracket identity check `[x, Y(x)] = X(x)`.
pub fn check_division(g: &LieAlgebra, x: &PolyMap, y: &PolyMap) -> bool {
    &bracket_maps(g, &PolyMap::identity(g.dim()), y) == x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::covariants::kostant_basis;
    use crate::liecore::catalog;
    use crate::polyalg::{killing_quadratic, tau_field};

    fn setup(name: &str) -> (Arc<LieAlgebra>, CovariantBasis) {
        let g = Arc::new(catalog(name).unwrap());
        let b = kostant_basis(&adjoint_rep(&g), 6).unwrap();
        (g, b)
    }

    #[test]
    fn decompose_examples() {
        let (g, b) = setup("sl2");
        let tr = killing_quadratic(&g);
        let d = kostant_decompose(&b.generators[0].scale_poly(&tr), &b).unwrap();
        assert_eq!(d.coefficients, vec![tr]);
        let z = kostant_decompose(&PolyMap::zero(3, 3), &b).unwrap();
        assert!(z.coefficients[0].is_zero());
        let bad = PolyMap::constant(3, &[Scalar::one(), Scalar::zero(), Scalar::zero()]);
        assert!(matches!(kostant_decompose(&bad, &b), Err(Error::NotCovariant { .. })));
    }

    #[test]
    fn divide_examples() {
        let (g, _) = setup("sl2");
        let div = Divider::adjoint(&g).unwrap();
        assert!(div.divide(&PolyMap::zero(3, 3), 3).unwrap().is_zero());
        let xi = vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(-3)];
        let x = tau_field(&g, &xi);
        let y = div.divide(&x, 3).unwrap();
        assert!(check_division(&g, &x, &y));
        match div.divide(&PolyMap::identity(3), 3) {
            Err(Error::NotTangent { component: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        let gens = div.generators().unwrap();
        let dfx = tangency_defect(&x, gens, &g).unwrap();
        assert!(dfx.iter().all(Poly::is_zero));
    }

    #[test]
    fn pointwise_from_generator() {
        let (g, b) = setup("sl3");
        let x = g.random_regular(5).unwrap();
        let xf: Vec<f64> = x.iter().map(Scalar::to_f64).collect();
        let v = b.generators[0].eval_f64(&xf);
        let s = vec![Sample { point: xf.clone(), value: v }, Sample { point: xf, value: vec![0.0; 8] }];
        let out = pointwise_decompose(&s, &b, Tolerances::default()).unwrap();
        assert!((out.coeff_values[0][0] - 1.0).abs() < 1e-12);
        assert!(out.coeff_values[0][1].abs() < 1e-12);
        assert!(out.residuals[0] <= 1e-12);
        assert_eq!(out.coeff_values[1], vec![0.0, 0.0]);
        let p = pointwise_decompose_permuted(&s, &b, Tolerances::default(), &[1, 0]).unwrap();
        assert!((p.coeff_values[0][0] - 1.0).abs() < 1e-10);
    }
}
