//! Finite-dimensional representations given by one matrix per basis element.
//!
//! Only infinitesimal data is stored. Group actions are never formed: the
//! adjoint group is connected, so equivariance under `g` is the same as
//! equivariance under the group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liecore::LieAlgebra;
use crate::linalg::Matrix;
use crate::polyalg::{monomials_of_degree, MonomialIndex};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    label: String,
    target_dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    /// Wraps matrices `π(e_i)` after checking the homomorphism identity.
    pub fn new(algebra: Arc<LieAlgebra>, label: &str, matrices: Vec<Matrix>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for an algebra of dimension {}",
                matrices.len(),
                algebra.dim()
            )));
        }
        let target_dim = matrices.first().map_or(0, Matrix::nrows);
        if matrices
            .iter()
            .any(|m| m.nrows() != target_dim || m.ncols() != target_dim)
        {
            return Err(Error::InvalidRepresentation("matrices are not square of one size".into()));
        }
        let rep = Representation {
            algebra,
            label: label.to_string(),
            target_dim,
            matrices,
        };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    /// `π([e_i, e_j]) = [π(e_i), π(e_j)]` on all basis pairs.
    pub fn check_homomorphism(&self) -> Result<()> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                let lhs = self.action_matrix_sparse(self.algebra.structure(i, j));
                let rhs = self.matrices[i].commutator(&self.matrices[j]);
                if lhs != rhs {
                    return Err(Error::InvalidRepresentation(format!(
                        "homomorphism identity fails on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    fn action_matrix_sparse(&self, xi: &[(usize, Scalar)]) -> Matrix {
        let mut m = Matrix::zeros(self.target_dim, self.target_dim);
        for (k, c) in xi {
            m = m.add(&self.matrices[*k].scale(c));
        }
        m
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// `π(ξ)`.
    pub fn action_matrix(&self, xi: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.target_dim, self.target_dim);
        for (k, c) in xi.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.matrices[k].scale(c));
            }
        }
        m
    }

    /// `π(ξ) · v`.
    pub fn apply(&self, xi: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if xi.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                found: xi.len(),
            });
        }
        if v.len() != self.target_dim {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim,
                found: v.len(),
            });
        }
        Ok(self.action_matrix(xi).mul_vec(v))
    }

    /// Weights of the basis vectors when every Cartan matrix is diagonal:
    /// entry `[v][a]` is the eigenvalue of the `a`-th Cartan element on `v`.
    pub fn weights(&self) -> Option<Vec<Vec<Scalar>>> {
        let cartan = self.algebra.cartan_indices();
        if !cartan.iter().all(|&h| self.matrices[h].is_diagonal()) {
            return None;
        }
        Some(
            (0..self.target_dim)
                .map(|v| cartan.iter().map(|&h| self.matrices[h].get(v, v).clone()).collect())
                .collect(),
        )
    }

    /// Dimension of the joint kernel of the Cartan matrices.
    pub fn zero_weight_multiplicity(&self) -> usize {
        let parts: Vec<&Matrix> = self
            .algebra
            .cartan_indices()
            .iter()
            .map(|&h| &self.matrices[h])
            .collect();
        if parts.is_empty() {
            return self.target_dim;
        }
        self.target_dim - Matrix::vstack(&parts).rank()
    }

    /// Basis of the joint kernel of `π(z)` for `z` in `zs`.
    pub fn joint_kernel(&self, zs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        if zs.is_empty() {
            return (0..self.target_dim)
                .map(|i| {
                    let mut v = vec![Scalar::zero(); self.target_dim];
                    v[i] = Scalar::one();
                    v
                })
                .collect();
        }
        let mats: Vec<Matrix> = zs.iter().map(|z| self.action_matrix(z)).collect();
        let refs: Vec<&Matrix> = mats.iter().collect();
        Matrix::vstack(&refs).kernel()
    }

    pub fn is_trivial(&self) -> bool {
        self.matrices.iter().all(Matrix::is_zero)
    }

    /// Serializes in the representation file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.target_dim);
        for m in &self.matrices {
            s.push('\n');
            for i in 0..m.nrows() {
                let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
        s
    }

    /// Parses `dim`, then one `dim × dim` row-major block per basis element.
    /// Entries are whitespace separated; `#` starts a comment.
    pub fn parse(algebra: Arc<LieAlgebra>, label: &str, text: &str) -> Result<Self> {
        let toks: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap())
            .flat_map(str::split_whitespace)
            .collect();
        let (first, rest) = toks
            .split_first()
            .ok_or_else(|| Error::Parse("empty representation file".into()))?;
        let d: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension `{first}`")))?;
        let n = algebra.dim();
        if rest.len() != n * d * d {
            return Err(Error::Parse(format!(
                "expected {} matrix entries, found {}",
                n * d * d,
                rest.len()
            )));
        }
        let mut matrices = Vec::with_capacity(n);
        for k in 0..n {
            let mut m = Matrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    m.set(i, j, rest[k * d * d + i * d + j].parse()?);
                }
            }
            matrices.push(m);
        }
        Representation::new(algebra, label, matrices)
    }
}

pub fn adjoint_rep(g: &Arc<LieAlgebra>) -> Representation {
    let matrices = (0..g.dim()).map(|i| g.ad_basis(i).clone()).collect();
    Representation::new(g.clone(), "adjoint", matrices).expect("Jacobi identity was checked at load")
}

pub fn trivial_rep(g: &Arc<LieAlgebra>) -> Representation {
    Representation {
        algebra: g.clone(),
        label: "trivial".into(),
        target_dim: 1,
        matrices: vec![Matrix::zeros(1, 1); g.dim()],
    }
}

/// `π* (ξ) = -π(ξ)^T`.
pub fn dual_rep(rho: &Representation) -> Representation {
    Representation {
        algebra: rho.algebra.clone(),
        label: format!("dual({})", rho.label),
        target_dim: rho.target_dim,
        matrices: rho.matrices.iter().map(|m| m.transpose().scale(&-Scalar::one())).collect(),
    }
}

fn is_sl2_triple(g: &LieAlgebra) -> bool {
    let s = |i: usize, j: usize| g.structure(i, j).to_vec();
    g.dim() == 3
        && s(0, 1) == vec![(1, Scalar::from_int(2))]
        && s(0, 2) == vec![(2, Scalar::from_int(-2))]
        && s(1, 2) == vec![(0, Scalar::one())]
}

/// The irreducible `sl(2)`-module of dimension `2m + 1` in its weight basis
/// `v_0, …, v_{2m}` with `h v_k = (2m - 2k) v_k`, `f v_k = v_{k+1}` and
/// `e v_k = k (2m - k + 1) v_{k-1}`. Requires the `(h, e, f)` basis.
pub fn irreducible_sl2(g: &Arc<LieAlgebra>, m: usize) -> Result<Representation> {
    if !is_sl2_triple(g) {
        return Err(Error::InvalidRepresentation(
            "irreducible_sl2 needs sl(2) in the (h, e, f) basis".into(),
        ));
    }
    let top = 2 * m;
    let d = top + 1;
    let (mut h, mut e, mut f) = (Matrix::zeros(d, d), Matrix::zeros(d, d), Matrix::zeros(d, d));
    for k in 0..d {
        h.set(k, k, Scalar::from_int(top as i64 - 2 * k as i64));
        if k + 1 < d {
            f.set(k + 1, k, Scalar::one());
        }
        if k > 0 {
            e.set(k - 1, k, Scalar::from_int((k * (top - k + 1)) as i64));
        }
    }
    Representation::new(g.clone(), &format!("irrep{m}"), vec![h, e, f])
}

/// Defining representation of a matrix algebra.
pub fn standard_rep(g: &Arc<LieAlgebra>) -> Result<Representation> {
    let mats = g.matrix_basis().ok_or_else(|| {
        Error::InvalidRepresentation(format!("{} has no defining matrices", g.name()))
    })?;
    Representation::new(g.clone(), "standard", mats.to_vec())
}

/// `Sym^k V` in the monomial basis (ascending graded-lex order).
pub fn symmetric_power(rho: &Representation, k: usize) -> Result<Representation> {
    let n = rho.target_dim;
    let idx = MonomialIndex::new(n, k);
    let d = idx.len();
    let mut matrices = Vec::with_capacity(rho.matrices.len());
    for a in &rho.matrices {
        let mut m = Matrix::zeros(d, d);
        for (col, mono) in monomials_of_degree(n, k).iter().enumerate() {
            // derivation: y_j ↦ Σ_i a_ij y_i
            for j in 0..n {
                let Some(low) = mono.lower(j) else { continue };
                let mult = Scalar::from_int(mono.exponents()[j] as i64);
                for i in 0..n {
                    let aij = a.get(i, j);
                    if aij.is_zero() {
                        continue;
                    }
                    let row = idx.get(&low.raise(i)).unwrap();
                    m.get_mut(row, col).add_mul(&mult, aij);
                }
            }
        }
        matrices.push(m);
    }
    Representation::new(rho.algebra.clone(), &format!("sym{k}({})", rho.label), matrices)
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.algebra.as_ref() != b.algebra.as_ref() {
        return Err(Error::InvalidRepresentation("direct sum over different algebras".into()));
    }
    let (m, n) = (a.target_dim, b.target_dim);
    let matrices = a
        .matrices
        .iter()
        .zip(&b.matrices)
        .map(|(x, y)| {
            let mut z = Matrix::zeros(m + n, m + n);
            for i in 0..m {
                for j in 0..m {
                    z.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..n {
                for j in 0..n {
                    z.set(m + i, m + j, y.get(i, j).clone());
                }
            }
            z
        })
        .collect();
    Representation::new(a.algebra.clone(), &format!("{}+{}", a.label, b.label), matrices)
}

/// Catalog lookup by identifier: `adjoint`, `trivial`, `standard`,
/// `dual-adjoint`, `irrep<m>` (sl2, m ≤ 4), `sym<k>` (symmetric power of the
/// defining representation).
pub fn catalog_rep(g: &Arc<LieAlgebra>, id: &str) -> Result<Representation> {
    match id {
        "adjoint" => Ok(adjoint_rep(g)),
        "trivial" => Ok(trivial_rep(g)),
        "standard" => standard_rep(g),
        "dual-adjoint" => Ok(dual_rep(&adjoint_rep(g))),
        _ => {
            if let Some(m) = id.strip_prefix("irrep") {
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::InvalidRepresentation(format!("bad irrep id `{id}`")))?;
                if m > 4 {
                    return Err(Error::InvalidRepresentation("catalog irreps stop at m = 4".into()));
                }
                irreducible_sl2(g, m)
            } else if let Some(k) = id.strip_prefix("sym") {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidRepresentation(format!("bad symmetric power `{id}`")))?;
                symmetric_power(&standard_rep(g)?, k)
            } else {
                Err(Error::InvalidRepresentation(format!("unknown representation `{id}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{catalog, sl};

    fn arc(name: &str) -> Arc<LieAlgebra> {
        Arc::new(catalog(name).unwrap())
    }

    fn sorted_weights(r: &Representation) -> Vec<i64> {
        let mut w: Vec<i64> = r
            .weights()
            .unwrap()
            .iter()
            .map(|v| v[0].re().to_integer().try_into().unwrap())
            .collect();
        w.sort();
        w
    }

    #[test]
    fn adjoint_and_irreps() {
        let g = arc("sl2");
        let ad = adjoint_rep(&g);
        assert_eq!(ad.target_dim(), 3);
        assert_eq!(adjoint_rep(&arc("sl3")).target_dim(), 8);
        assert_eq!(sorted_weights(&ad), vec![-2, 0, 2]);
        let v1 = irreducible_sl2(&g, 1).unwrap();
        assert_eq!(sorted_weights(&v1), sorted_weights(&ad));
        let v0 = irreducible_sl2(&g, 0).unwrap();
        assert!(v0.is_trivial());
        assert_eq!(v0.target_dim(), 1);
        let v2 = irreducible_sl2(&g, 2).unwrap();
        assert_eq!(sorted_weights(&v2), vec![-4, -2, 0, 2, 4]);
        assert!(irreducible_sl2(&arc("so3"), 1).is_err());
    }

    #[test]
    fn duals() {
        let g = arc("sl2");
        let t = trivial_rep(&g);
        assert!(dual_rep(&t).is_trivial());
        let v1 = irreducible_sl2(&g, 1).unwrap();
        let dd = dual_rep(&dual_rep(&v1));
        assert_eq!(dd.matrices(), v1.matrices());
        assert_eq!(sorted_weights(&dual_rep(&v1)), sorted_weights(&v1));
        dual_rep(&v1).check_homomorphism().unwrap();
    }

    #[test]
    fn zero_weight_multiplicities() {
        assert_eq!(adjoint_rep(&arc("sl2")).zero_weight_multiplicity(), 1);
        assert_eq!(adjoint_rep(&arc("sl3")).zero_weight_multiplicity(), 2);
        assert_eq!(adjoint_rep(&arc("sl4")).zero_weight_multiplicity(), 3);
        assert_eq!(adjoint_rep(&arc("so3")).zero_weight_multiplicity(), 1);
        assert_eq!(trivial_rep(&arc("sl3")).zero_weight_multiplicity(), 1);
        let g3 = arc("sl3");
        let s3 = catalog_rep(&g3, "sym3").unwrap();
        assert_eq!(s3.target_dim(), 10);
        assert_eq!(s3.zero_weight_multiplicity(), 1);
        assert_eq!(catalog_rep(&g3, "sym2").unwrap().zero_weight_multiplicity(), 0);
    }

    #[test]
    fn apply_matches_bracket_and_homomorphism() {
        let g = Arc::new(sl(3).unwrap());
        let ad = adjoint_rep(&g);
        let xi = g.random_regular(1).unwrap();
        let eta = g.random_regular(2).unwrap();
        let v = g.random_regular(3).unwrap();
        assert_eq!(ad.apply(&xi, &v).unwrap(), g.bracket(&xi, &v).unwrap());
        assert!(ad.apply(&g.zero(), &v).unwrap().iter().all(Scalar::is_zero));
        let lhs = ad.apply(&g.bracket(&xi, &eta).unwrap(), &v).unwrap();
        let a = ad.apply(&xi, &ad.apply(&eta, &v).unwrap()).unwrap();
        let b = ad.apply(&eta, &ad.apply(&xi, &v).unwrap()).unwrap();
        let rhs: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        assert_eq!(lhs, rhs);
        assert!(matches!(ad.apply(&xi, &v[..3]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn file_round_trip_and_bad_input() {
        let g = arc("sl2");
        let v2 = irreducible_sl2(&g, 2).unwrap();
        let back = Representation::parse(g.clone(), "irrep2", &v2.to_text()).unwrap();
        assert_eq!(back.matrices(), v2.matrices());
        // h acting by diag(1,1) with e, f zero violates [e,f] = h
        let bad = "2\n1 0 0 1\n0 0 0 0\n0 0 0 0\n";
        assert!(Representation::parse(g.clone(), "bad", bad).is_err());
        assert!(Representation::parse(g, "short", "2\n1 0").is_err());
    }
}
