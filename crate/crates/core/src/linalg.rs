//! Exact linear algebra over [`Scalar`].
//!
//! Two tools live here. [`Matrix`] is a small dense matrix used for
//! structure matrices, representation matrices and Gram matrices.
//! [`Echelon`] is an incremental sparse echelon form: vectors are inserted
//! one at a time, each reduced against the existing pivot rows. With
//! tracking enabled every row remembers which inserted vectors it is a
//! combination of, which yields kernel vectors (for columns that reduce to
//! zero) and particular solutions of `A y = b` without ever forming `A`.
//!
//! Rows are normalized so their pivot entry is 1, and the pivot of a row is
//! always its largest index. Inserting vectors in ascending order of some
//! term order therefore produces kernel vectors whose leading term is the
//! dependent column itself, i.e. the reduced echelon basis of the kernel.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

fn add_scaled(target: &mut SparseVec, factor: &Scalar, src: &[(usize, Scalar)], negate: bool) {
    for (idx, val) in src {
        let e = target.entry(*idx).or_default();
        if negate {
            e.sub_mul(factor, val);
        } else {
            e.add_mul(factor, val);
        }
        if e.is_zero() {
            target.remove(idx);
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    entries: Vec<(usize, Scalar)>,
    combo: Vec<(usize, Scalar)>,
}

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone)]
pub enum Inserted {
    /// New pivot at the given index.
    Pivot(usize),
    /// The vector was dependent; the combination of inserted ids that sums
    /// to zero (always including the new id with coefficient 1).
    Dependent(SparseVec),
}

#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn tracked() -> Self {
        Echelon {
            track: true,
            ..Echelon::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.entries.last().unwrap().0)
    }

    /// Reduces `v` in place; returns `Σ f_r combo_r` over the rows used.
    fn reduce(&self, v: &mut SparseVec) -> SparseVec {
        let mut used = SparseVec::new();
        let mut upper: Option<usize> = None;
        loop {
            let next = match upper {
                None => v.keys().next_back().copied(),
                Some(u) => v.range(..u).next_back().map(|(k, _)| *k),
            };
            let Some(k) = next else { break };
            upper = Some(k);
            if let Some(&ri) = self.pivots.get(&k) {
                let row = &self.rows[ri];
                let factor = v[&k].clone();
                add_scaled(v, &factor, &row.entries, true);
                debug_assert!(!v.contains_key(&k));
                if self.track {
                    add_scaled(&mut used, &factor, &row.combo, false);
                }
            }
        }
        used
    }

    /// Inserts `v` under the caller-chosen identifier `id`.
    pub fn insert(&mut self, mut v: SparseVec, id: usize) -> Inserted {
        let used = self.reduce(&mut v);
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(id, Scalar::one());
            for (k, val) in used {
                let e = combo.entry(k).or_default();
                *e -= &val;
                if e.is_zero() {
                    combo.remove(&k);
                }
            }
        }
        let Some((&lead, lead_val)) = v.iter().next_back() else {
            return Inserted::Dependent(combo);
        };
        let inv = lead_val.inv();
        let entries: Vec<(usize, Scalar)> = v.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        let combo: Vec<(usize, Scalar)> = combo.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { entries, combo });
        Inserted::Pivot(lead)
    }

    /// Inserts without caring about the combination. Returns whether the
    /// vector was independent of the previous ones.
    pub fn push(&mut self, v: SparseVec) -> bool {
        let id = self.rows.len();
        matches!(self.insert(v, id), Inserted::Pivot(_))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_empty()
    }

    /// Remainder of `v` after full reduction.
    pub fn remainder(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.reduce(&mut w);
        w
    }

    /// Expresses `v` as a combination of the inserted vectors (by id).
    /// Requires tracking. `None` if `v` is not in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve requires a tracked echelon form");
        let mut w = v.clone();
        let used = self.reduce(&mut w);
        w.is_empty().then_some(used)
    }
}

/// Dense exact matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Scalar>], nrows: usize) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.get_mut(i, j).add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend(m.data.iter().cloned());
            rows += m.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let (ri, rr) = (i * m.cols + j, r * m.cols + j);
                    let sub = &f * &m.data[rr];
                    m.data[ri] -= &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul(x, y);
    }
    acc
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Rank of a family of dense vectors.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new();
    vectors
        .iter()
        .filter(|v| e.push(dense_to_sparse(v)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(k, v)| (k, s(v))).collect()
    }

    #[test]
    fn echelon_kernel_and_solve() {
        // columns: c0 = (1,0), c1 = (0,1), c2 = (1,1)
        let mut e = Echelon::tracked();
        assert!(matches!(e.insert(sv(&[(0, 1)]), 0), Inserted::Pivot(0)));
        assert!(matches!(e.insert(sv(&[(1, 1)]), 1), Inserted::Pivot(1)));
        let Inserted::Dependent(k) = e.insert(sv(&[(0, 1), (1, 1)]), 2) else {
            panic!("expected dependency");
        };
        assert_eq!(k, sv(&[(0, -1), (1, -1), (2, 1)]));
        let sol = e.solve(&sv(&[(0, 3), (1, -2)])).unwrap();
        assert_eq!(sol, sv(&[(0, 3), (1, -2)]));
        let mut lone = Echelon::tracked();
        lone.insert(sv(&[(0, 1)]), 0);
        assert!(lone.solve(&sv(&[(1, 1)])).is_none());
    }

    #[test]
    fn dense_inverse_and_kernel() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        assert!(sing.inverse().is_none());
        let k = sing.kernel();
        assert_eq!(k.len(), 1);
        assert!(sing.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }
}
