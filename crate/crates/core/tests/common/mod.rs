#![allow(dead_code)]

// Reference computations written directly over BigRational, sharing no
// code with the library's elimination or weight machinery.

use liecov::liecore::LieAlgebra;
use liecov::polyalg::{Monomial, Poly, PolyMap};
use liecov::rep::Representation;
use liecov::scalar::Scalar;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(s: &Scalar) -> Q {
    assert!(s.is_real(), "oracle works over the rationals");
    s.re().clone()
}

/// Row-reduces in place and returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let v = rows[r][j].clone() * f.clone();
                    rows[i][j] = rows[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Null space of the matrix with the given rows.
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

fn matrix_rows(rho: &Representation, i: usize) -> Vec<Vec<Q>> {
    let m = rho.matrix(i);
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| q(m.get(r, c))).collect())
        .collect()
}

/// Dimension of the joint kernel of the Cartan matrices.
pub fn zero_weight_dim(rho: &Representation) -> usize {
    let g = rho.algebra();
    let mut rows = Vec::new();
    for &h in g.cartan_indices() {
        rows.extend(matrix_rows(rho, h));
    }
    rho.target_dim() - rank(&rows)
}

/// `[a, b]` from structure constants.
pub fn bracket(g: &LieAlgebra, a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = g.dim();
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if a[i].is_zero() || b[j].is_zero() {
                continue;
            }
            for (k, c) in g.structure(i, j) {
                out[*k] = out[*k].clone() + a[i].clone() * b[j].clone() * q(c);
            }
        }
    }
    out
}

pub fn scalars(v: &[Q]) -> Vec<Scalar> {
    v.iter().cloned().map(Scalar::from_rational).collect()
}

pub fn rationals(v: &[Scalar]) -> Vec<Q> {
    v.iter().map(q).collect()
}

/// Centralizer of `x` from the bracket table.
pub fn centralizer(g: &LieAlgebra, x: &[Q]) -> Vec<Vec<Q>> {
    let n = g.dim();
    // rows of ad(x): column j is [x, e_j]
    let mut cols = Vec::new();
    for j in 0..n {
        let mut e = vec![Q::zero(); n];
        e[j] = Q::one();
        cols.push(bracket(g, x, &e));
    }
    let rows: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    kernel(&rows, n)
}

/// Killing-type trace form `tr(ad a ad b)` from the bracket table.
pub fn trace_form(g: &LieAlgebra, a: &[Q], b: &[Q]) -> Q {
    let n = g.dim();
    let mut t = Q::zero();
    for j in 0..n {
        let mut e = vec![Q::zero(); n];
        e[j] = Q::one();
        t = t + bracket(g, a, &bracket(g, b, &e))[j].clone();
    }
    t
}

/// Dimension of the degree-`d` covariants by brute force over all terms.
pub fn covariant_dim(rho: &Representation, d: usize) -> usize {
    let g = rho.algebra();
    let n = g.dim();
    let t = rho.target_dim();
    let monos = liecov::polyalg::monomials_of_degree(n, d);
    // unknown u = (mono, comp); the defect of x^β v_c, flattened
    let mut columns: Vec<Vec<Q>> = Vec::new();
    let out_monos = liecov::polyalg::monomials_of_degree(n, d);
    let idx = |m: &Monomial| out_monos.iter().position(|o| o == m).unwrap();
    for m in &monos {
        for c in 0..t {
            let mut col = vec![Q::zero(); n * out_monos.len() * t];
            for j in 0..n {
                let base = j * out_monos.len() * t;
                // π(e_j) x^β v_c
                for a in 0..t {
                    col[base + idx(m) * t + a] += q(rho.matrix(j).get(a, c));
                }
                // ∂_i x^β · [x, e_j]_i
                for i in 0..n {
                    let bi = m.exponents()[i];
                    if bi == 0 {
                        continue;
                    }
                    let low = m.lower(i).unwrap();
                    for k in 0..n {
                        for (kk, coef) in g.structure(k, j) {
                            if *kk == i {
                                let out = low.raise(k);
                                col[base + idx(&out) * t + c] += q(coef) * Q::from_integer(bi.into());
                            }
                        }
                    }
                }
            }
            columns.push(col);
        }
    }
    let ncols = columns.len();
    let nrows = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Q>> = (0..nrows).map(|r| (0..ncols).map(|c| columns[c][r].clone()).collect()).collect();
    ncols - rank(&rows)
}

/// Coefficient of `x^β` in `f`.
pub fn coeff(f: &Poly, m: &Monomial) -> Q {
    q(&f.coeff(m))
}

/// `⟨T, x^β⟩_c` for a distribution at the origin, read off its terms.
pub fn moment(t: &liecov::distkit::PointDistribution, beta: &Monomial, c: usize) -> Q {
    t.terms()
        .iter()
        .filter(|term| &term.alpha == beta && term.component == c)
        .map(|term| q(&term.coeff) * q(&beta.factorial()))
        .fold(Q::zero(), |a, b| a + b)
}

/// `⟨Σ θ_i χ_i, x^β⟩_c = Σ_i ⟨θ_i, x^β χ_{i,c}⟩` computed from moments.
pub fn product_moment(thetas: &[liecov::distkit::PointDistribution], chis: &[PolyMap], beta: &Monomial, c: usize) -> Q {
    let mut acc = Q::zero();
    for (th, chi) in thetas.iter().zip(chis) {
        for (m, x) in chi.component(c).terms() {
            acc += q(x) * moment(th, &beta.mul(m), 0);
        }
    }
    acc
}

/// `Σ_c ⟨T_c, f_c⟩` at the origin for a map `f`.
pub fn pair_map_at_origin(t: &liecov::distkit::PointDistribution, f: &PolyMap) -> Q {
    t.terms()
        .iter()
        .map(|term| q(&term.coeff) * q(&term.alpha.factorial()) * coeff(f.component(term.component), &term.alpha))
        .fold(Q::zero(), |a, b| a + b)
}
