//! Covariant polynomial maps and Kostant module bases.
//!
//! A polynomial map `P: g → V` is covariant when `P(Ad(g) x) = π(g) P(x)`.
//! Differentiating at the identity gives the test used throughout:
//!
//! ```text
//! defect_j(x) = dP_x([x, ξ_j]) + π(ξ_j) P(x)     (≡ 0 for all basis ξ_j)
//! ```
//!
//! which is equivalent to covariance because the adjoint group is connected.
//! Spaces of homogeneous covariants are kernels of this linear map, solved
//! degree by degree with exact sparse elimination. When the Cartan matrices
//! are diagonal in both bases only zero-weight terms are admitted as
//! unknowns, which shrinks the systems by roughly the number of weights.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{TermSpace, WeightFilter};
use crate::liecore::{Element, LieAlgebra};
use crate::linalg::{rank_of, Echelon, Inserted, SparseVec};
use crate::polyalg::{directional_derivative, kappa_gradient, tau_field, Poly, PolyMap};
use crate::rep::{adjoint_rep, trivial_rep, Representation};
use crate::scalar::Scalar;

/// Default degree bound for catalog algebras.
pub fn default_degree_bound(g: &LieAlgebra) -> usize {
    match g.name() {
        "sl2" | "so3" => 4,
        "sl3" => 6,
        "sl4" => 8,
        _ => 2 * g.dim(),
    }
}

/// Infinitesimal equivariance defects, one per basis element `ξ_j`.
pub fn equivariance_defect(p: &PolyMap, rho: &Representation) -> Result<Vec<PolyMap>> {
    let g = rho.algebra();
    if p.target_dim() != rho.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.target_dim(),
            found: p.target_dim(),
        });
    }
    if p.domain_dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: p.domain_dim(),
        });
    }
    (0..g.dim())
        .map(|j| {
            let along = directional_derivative(p, &tau_field(g, &g.basis_element(j)))?;
            Ok(&along + &p.apply_matrix(rho.matrix(j)))
        })
        .collect()
}

pub fn is_covariant(p: &PolyMap, rho: &Representation) -> Result<bool> {
    Ok(equivariance_defect(p, rho)?.iter().all(PolyMap::is_zero))
}

/// Index of the first nonzero defect, if any.
pub fn first_defect(p: &PolyMap, rho: &Representation) -> Result<Option<usize>> {
    Ok(equivariance_defect(p, rho)?.iter().position(|d| !d.is_zero()))
}

/// Terms `(k, i, c)` with `[e_k, e_j] ∋ c e_i`, per basis element `j`: the
/// coefficients of the adjoint field `τ(e_j)`, component `i`, along `x_k`.
pub(crate) fn tau_terms(g: &LieAlgebra) -> Vec<Vec<(usize, usize, Scalar)>> {
    (0..g.dim())
        .map(|j| {
            let mut out = Vec::new();
            for k in 0..g.dim() {
                for (i, c) in g.structure(k, j) {
                    out.push((k, *i, c.clone()));
                }
            }
            out
        })
        .collect()
}

/// Zero-weight term filter for homogeneous maps into `rho`.
pub(crate) fn term_filter(rho: &Representation) -> Option<WeightFilter> {
    let gw = adjoint_rep(rho.algebra()).weights()?;
    Some(WeightFilter::new(gw, rho.weights()?))
}

/// Exact basis (reduced echelon form, leading terms descending) of the
/// homogeneous degree-`d` covariants `g → V`.
pub fn covariant_space(rho: &Representation, d: usize) -> Vec<PolyMap> {
    let g = rho.algebra();
    let n = g.dim();
    let t = rho.target_dim();
    let space = TermSpace::new(n, d, t);
    let filter = term_filter(rho);
    let unknowns: Vec<usize> = (0..space.len())
        .filter(|&u| {
            let (m, c) = space.decode(u);
            filter.as_ref().is_none_or(|f| f.admits(m, c))
        })
        .collect();
    let taus = tau_terms(g);
    let block = space.len();
    let columns: Vec<SparseVec> = unknowns
        .par_iter()
        .map(|&u| {
            let (m, c) = space.decode(u);
            let mut col = SparseVec::new();
            let mut bump = |idx: usize, x: Scalar| {
                let e = col.entry(idx).or_default();
                *e += &x;
                if e.is_zero() {
                    col.remove(&idx);
                }
            };
            for (j, terms) in taus.iter().enumerate() {
                // dP_x(τ(e_j)(x)) on x^m v_c
                for (k, i, coef) in terms {
                    let Some(low) = m.lower(*i) else { continue };
                    let mult = Scalar::from_int(m.exponents()[*i] as i64);
                    let out = low.raise(*k);
                    bump(j * block + space.index_of(&out, c), &mult * coef);
                }
                // π(e_j) v_c
                let pj = rho.matrix(j);
                for a in 0..t {
                    let x = pj.get(a, c);
                    if !x.is_zero() {
                        bump(j * block + space.index_of(m, a), x.clone());
                    }
                }
            }
            col
        })
        .collect();
    let mut ech = Echelon::tracked();
    let mut kernel = Vec::new();
    for (u, col) in unknowns.iter().zip(columns) {
        if let Inserted::Dependent(combo) = ech.insert(col, *u) {
            kernel.push(space.to_map(&combo));
        }
    }
    kernel.reverse();
    kernel
}

/// Basis of the homogeneous degree-`d` invariant polynomials.
pub fn invariant_space(g: &Arc<LieAlgebra>, d: usize) -> Vec<Poly> {
    covariant_space(&trivial_rep(g), d)
        .into_iter()
        .map(|p| p.into_components().pop().unwrap())
        .collect()
}

/// Lazily computed, shared table of invariant spaces by degree.
#[derive(Debug)]
pub struct InvariantRing {
    algebra: Arc<LieAlgebra>,
    cache: Mutex<BTreeMap<usize, Arc<Vec<Poly>>>>,
}

impl InvariantRing {
    pub fn new(algebra: Arc<LieAlgebra>) -> Self {
        InvariantRing {
            algebra,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn degree(&self, d: usize) -> Arc<Vec<Poly>> {
        if let Some(v) = self.cache.lock().unwrap().get(&d) {
            return v.clone();
        }
        let v = Arc::new(invariant_space(&self.algebra, d));
        self.cache.lock().unwrap().insert(d, v.clone());
        v
    }
}

/// Homogeneous generators `p_1, …, p_ℓ` of the invariant ring and their
/// κ-gradients `q_i = ∇p_i`.
#[derive(Debug, Clone)]
pub struct InvariantGenerators {
    pub gens: Vec<Poly>,
    pub qmaps: Vec<PolyMap>,
}

impl InvariantGenerators {
    pub fn degrees(&self) -> Vec<usize> {
        self.gens.iter().map(Poly::degree).collect()
    }
}

/// Products `∏ gens^a` of weighted degree exactly `d`.
fn products_of_degree(gens: &[Poly], nvars: usize, d: usize) -> Vec<Poly> {
    fn rec(gens: &[Poly], left: usize, acc: Poly, out: &mut Vec<Poly>) {
        let Some((first, rest)) = gens.split_first() else {
            if left == 0 {
                out.push(acc);
            }
            return;
        };
        let e = first.degree();
        let mut cur = acc;
        let mut used = 0;
        loop {
            rec(rest, left - used, cur.clone(), out);
            if e == 0 || used + e > left {
                break;
            }
            cur = &cur * first;
            used += e;
        }
    }
    let mut out = Vec::new();
    rec(gens, d, Poly::one(nvars), &mut out);
    out
}

/// Greedy degree-by-degree search for `ℓ` homogeneous invariants, each not
/// in the subalgebra generated by the earlier ones.
pub fn invariant_generators(g: &Arc<LieAlgebra>, degree_bound: usize) -> Result<InvariantGenerators> {
    let n = g.dim();
    let l = g.rank();
    let mut gens: Vec<Poly> = Vec::new();
    for d in 1..=degree_bound {
        if gens.len() == l {
            break;
        }
        let inv = invariant_space(g, d);
        if inv.is_empty() {
            continue;
        }
        let space = TermSpace::new(n, d, 1);
        let mut ech = Echelon::new();
        for p in products_of_degree(&gens, n, d) {
            ech.push(space.vectorize_poly(&p));
        }
        for p in inv {
            if ech.push(space.vectorize_poly(&p)) {
                gens.push(PolyMap::new(n, vec![p]).normalized().into_components().pop().unwrap());
            }
        }
        if gens.len() > l {
            return Err(Error::RankMismatch {
                expected: l,
                found: gens.len(),
            });
        }
    }
    if gens.len() < l {
        return Err(Error::DegreeBoundExceeded {
            bound: degree_bound,
            what: format!("found {} of {l} invariant generators", gens.len()),
        });
    }
    let qmaps = gens.iter().map(|p| kappa_gradient(g, p)).collect();
    Ok(InvariantGenerators { gens, qmaps })
}

/// Homogeneous free-module basis of the covariants `g → V` over the
/// invariant ring.
#[derive(Debug, Clone)]
pub struct CovariantBasis {
    pub rep: Representation,
    pub generators: Vec<PolyMap>,
    pub degrees: Vec<usize>,
    pub degree_bound_used: usize,
}

impl CovariantBasis {
    /// Wraps externally supplied homogeneous generators (e.g. a scrambled
    /// or complex basis) without searching.
    pub fn from_generators(rep: Representation, generators: Vec<PolyMap>) -> Result<Self> {
        for (i, p) in generators.iter().enumerate() {
            if !p.is_homogeneous() || p.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "generator {i} is not a nonzero homogeneous map"
                )));
            }
            if let Some(j) = first_defect(p, &rep)? {
                let _ = i;
                return Err(Error::NotCovariant { basis_index: j });
            }
        }
        let degrees: Vec<usize> = generators.iter().map(PolyMap::degree).collect();
        let used = degrees.iter().copied().max().unwrap_or(0);
        Ok(CovariantBasis {
            rep,
            generators,
            degrees,
            degree_bound_used: used,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.rep.algebra()
    }

    /// Generator values `P_i(x)`.
    pub fn values_at(&self, x: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        self.generators.iter().map(|p| p.evaluate(x)).collect()
    }
}

/// Degree-by-degree greedy Kostant basis: within each degree, covariants
/// independent of `{Q·P : P selected earlier, Q invariant of positive
/// degree}` are selected (in echelon order) and normalized to leading
/// coefficient 1. The search stops once `r` generators are found; by graded
/// Nakayama no further generators can appear after that.
pub fn kostant_basis(rho: &Representation, degree_bound: usize) -> Result<CovariantBasis> {
    let ring = InvariantRing::new(rho.algebra().clone());
    kostant_basis_with(rho, degree_bound, &ring, false)
}

/// Like [`kostant_basis`], optionally continuing to `degree_bound` after `r`
/// generators are found to confirm that none appear later.
pub fn kostant_basis_with(
    rho: &Representation,
    degree_bound: usize,
    ring: &InvariantRing,
    exhaustive: bool,
) -> Result<CovariantBasis> {
    let r = rho.zero_weight_multiplicity();
    let n = rho.algebra().dim();
    let t = rho.target_dim();
    let mut gens: Vec<PolyMap> = Vec::new();
    let mut degrees: Vec<usize> = Vec::new();
    let mut used = 0;
    for d in 0..=degree_bound {
        if gens.len() == r && !exhaustive {
            break;
        }
        used = d;
        let cov = covariant_space(rho, d);
        if cov.is_empty() {
            continue;
        }
        let space = TermSpace::new(n, d, t);
        let mut ech = Echelon::new();
        for (p, &e) in gens.iter().zip(&degrees) {
            for q in ring.degree(d - e).iter() {
                ech.push(space.vectorize(&p.scale_poly(q)));
            }
        }
        // quotient dimension first; nothing new when the products fill the space
        if ech.rank() == cov.len() {
            continue;
        }
        for c in cov {
            if ech.push(space.vectorize(&c)) {
                gens.push(c.normalized());
                degrees.push(d);
            }
        }
        if gens.len() > r {
            return Err(Error::RankMismatch {
                expected: r,
                found: gens.len(),
            });
        }
    }
    if gens.len() < r {
        return Err(Error::DegreeBoundExceeded {
            bound: degree_bound,
            what: format!("found {} of {r} module generators", gens.len()),
        });
    }
    Ok(CovariantBasis {
        rep: rho.clone(),
        generators: gens,
        degrees,
        degree_bound_used: used,
    })
}

/// Pointwise basis property at a regular element: the values `P_i(x)` are
/// independent and span `V^{g^x}`, the joint kernel of the centralizer.
pub fn verify_k2(basis: &CovariantBasis, x: &Element) -> Result<bool> {
    let g = basis.algebra();
    let cent = g.centralizer(x);
    if cent.len() != g.rank() {
        return Err(Error::NotRegular {
            centralizer_dim: cent.len(),
            rank: g.rank(),
        });
    }
    let values = basis.values_at(x)?;
    if rank_of(&values) != values.len() {
        return Ok(false);
    }
    let fixed = basis.rep.joint_kernel(&cent);
    if fixed.len() != values.len() {
        return Ok(false);
    }
    for z in &cent {
        let pz = basis.rep.action_matrix(z);
        for v in &values {
            if !pz.mul_vec(v).iter().all(Scalar::is_zero) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks that `{Q · P_i}` with `Q` running over an invariant basis is
/// linearly independent in every degree up to `max_degree`, i.e. that
/// there is no relation `Σ Q_i P_i = 0` with nonzero invariant `Q_i`.
/// Returns the first degree carrying a relation.
pub fn freeness_probe(basis: &CovariantBasis, ring: &InvariantRing, max_degree: usize) -> Option<usize> {
    let n = basis.algebra().dim();
    let t = basis.rep.target_dim();
    for d in 0..=max_degree {
        let space = TermSpace::new(n, d, t);
        let mut ech = Echelon::new();
        for (p, &e) in basis.generators.iter().zip(&basis.degrees) {
            if e > d {
                continue;
            }
            for q in ring.degree(d - e).iter() {
                if !ech.push(space.vectorize(&p.scale_poly(q))) {
                    return Some(d);
                }
            }
        }
    }
    None
}
