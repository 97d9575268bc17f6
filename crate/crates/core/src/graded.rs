//! Dense coordinates for homogeneous pieces.
//!
//! A [`TermSpace`] numbers the terms `x^β v_c` of homogeneous degree-`d`
//! maps into a `t`-dimensional space so that a larger index is a more
//! leading term (see [`PolyMap::leading`]). Every graded linear solve in the
//! crate goes through this numbering.

use crate::linalg::SparseVec;
use crate::polyalg::{Monomial, MonomialIndex, Poly, PolyMap};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct TermSpace {
    nvars: usize,
    target_dim: usize,
    monos: MonomialIndex,
}

impl TermSpace {
    pub fn new(nvars: usize, degree: usize, target_dim: usize) -> Self {
        TermSpace {
            nvars,
            target_dim,
            monos: MonomialIndex::new(nvars, degree),
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len() * self.target_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn monomials(&self) -> &MonomialIndex {
        &self.monos
    }

    pub fn index(&self, mono: usize, comp: usize) -> usize {
        mono * self.target_dim + (self.target_dim - 1 - comp)
    }

    pub fn index_of(&self, m: &Monomial, comp: usize) -> usize {
        self.index(self.monos.get(m).expect("monomial of the wrong degree"), comp)
    }

    pub fn decode(&self, idx: usize) -> (&Monomial, usize) {
        let mono = idx / self.target_dim;
        let comp = self.target_dim - 1 - idx % self.target_dim;
        (self.monos.monomial(mono), comp)
    }

    /// Coordinates of a map; terms of other degrees must be absent.
    pub fn vectorize(&self, p: &PolyMap) -> SparseVec {
        let mut v = SparseVec::new();
        for (c, poly) in p.components().iter().enumerate() {
            for (m, x) in poly.terms() {
                v.insert(self.index_of(m, c), x.clone());
            }
        }
        v
    }

    pub fn vectorize_poly(&self, p: &Poly) -> SparseVec {
        debug_assert_eq!(self.target_dim, 1);
        p.terms()
            .iter()
            .map(|(m, x)| (self.index_of(m, 0), x.clone()))
            .collect()
    }

    pub fn to_map(&self, v: &SparseVec) -> PolyMap {
        let mut comps = vec![Poly::zero(self.nvars); self.target_dim];
        for (idx, x) in v {
            let (m, c) = self.decode(*idx);
            comps[c].add_term(m.clone(), x);
        }
        PolyMap::new(self.nvars, comps)
    }

    pub fn to_poly(&self, v: &SparseVec) -> Poly {
        self.to_map(v).into_components().pop().unwrap()
    }
}

/// Weight of the term `x^β v_c` is `wt(v_c) - Σ β_i wt(e_i)`; a term can
/// appear in a covariant only when this vanishes.
#[derive(Debug, Clone)]
pub struct WeightFilter {
    algebra: Vec<Vec<Scalar>>,
    target: Vec<Vec<Scalar>>,
}

impl WeightFilter {
    pub fn new(algebra: Vec<Vec<Scalar>>, target: Vec<Vec<Scalar>>) -> Self {
        WeightFilter { algebra, target }
    }

    pub fn admits(&self, m: &Monomial, c: usize) -> bool {
        let mut acc = self.target[c].clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let k = Scalar::from_int(e as i64);
            for (a, w) in acc.iter_mut().zip(&self.algebra[i]) {
                a.sub_mul(&k, w);
            }
        }
        acc.iter().all(Scalar::is_zero)
    }
}
