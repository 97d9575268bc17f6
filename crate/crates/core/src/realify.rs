//! Real forms of module bases over `ℚ(i)`.
//!
//! In the chosen real coordinates the conjugation `σ` acts on maps by
//! conjugating coefficients, and a map is defined over the reals exactly
//! when `σ(P) = P`. Degree by degree (ascending), the `k` generators `Q_j`
//! of the current degree satisfy
//!
//! ```text
//! σ(Q_j) = Σ_i λ_ij Q_i + Σ_n R_nj Q_n
//! ```
//!
//! with `n` running over the lower-degree generators, already real. Then
//! `ΛΛ̄ = I` and `RΛ̄ + σ(R) = 0`; an `M` with `ΛM̄ = M` is found by the
//! constructive Hilbert 90 step `M = ΛC̄ + C`, and with `T = ½RM̄` the maps
//! `P_j = Σ_i μ_ij Q_i + Σ_n T_nj Q_n` are all real.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covariants::{CovariantBasis, InvariantRing};
use crate::division::Decomposer;
use crate::error::{Error, Result};
use crate::graded::TermSpace;
use crate::linalg::{Echelon, Matrix};
use crate::polyalg::{Poly, PolyMap};
use crate::scalar::{rat, FieldTag, Scalar};

pub const HILBERT90_RETRIES: usize = 32;
const HILBERT90_BOX: i64 = 3;

/// Coefficient-wise conjugation.
pub fn sigma(p: &PolyMap) -> PolyMap {
    p.conj()
}

pub fn sigma_poly(p: &Poly) -> Poly {
    p.conj()
}

pub fn is_real(p: &PolyMap) -> bool {
    p.field() == FieldTag::Rational
}

/// Conjugation data for one degree: `σ(Q_j) = Σ λ_ij Q_i + Σ R_nj Q_n`.
#[derive(Debug, Clone)]
pub struct SigmaExpansion {
    pub degree: usize,
    /// generators of this degree, in column order of `Λ`
    pub current: Vec<usize>,
    /// lower-degree generators, in row order of `R`
    pub lower: Vec<usize>,
    pub lambda: Matrix,
    pub r: Vec<Vec<Poly>>,
}

fn poly_mat_conj(r: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    r.iter().map(|row| row.iter().map(Poly::conj).collect()).collect()
}

/// `R·A` for a polynomial matrix `R` and scalar matrix `A`.
fn poly_mat_mul(r: &[Vec<Poly>], a: &Matrix, nvars: usize) -> Vec<Vec<Poly>> {
    r.iter()
        .map(|row| {
            (0..a.ncols())
                .map(|j| {
                    let mut acc = Poly::zero(nvars);
                    for (i, p) in row.iter().enumerate() {
                        acc = &acc + &p.scale(a.get(i, j));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn poly_mat_is_zero(r: &[Vec<Poly>]) -> bool {
    r.iter().all(|row| row.iter().all(Poly::is_zero))
}

/// Solves for `Λ` and `R` at degree `d`, then checks `ΛΛ̄ = I` and
/// `RΛ̄ + σ(R) = 0`.
pub fn express_sigma_in_basis(
    generators: &[PolyMap],
    ring: &InvariantRing,
    d: usize,
) -> Result<SigmaExpansion> {
    let n = ring.algebra().dim();
    let t = generators.first().map_or(0, PolyMap::target_dim);
    let current: Vec<usize> = (0..generators.len())
        .filter(|&i| generators[i].degree() == d)
        .collect();
    let lower: Vec<usize> = (0..generators.len())
        .filter(|&i| generators[i].degree() < d)
        .collect();
    for &i in &lower {
        if !is_real(&generators[i]) {
            return Err(Error::ConsistencyFailure(format!(
                "generator {i} of degree below {d} is not real"
            )));
        }
    }
    let space = TermSpace::new(n, d, t);
    let mut ech = Echelon::tracked();
    // column ids: current generators first, then (lower slot, invariant)
    let mut labels: Vec<Option<(usize, Poly)>> = Vec::new();
    for &i in &current {
        ech.insert(space.vectorize(&generators[i]), labels.len());
        labels.push(None);
    }
    for (slot, &i) in lower.iter().enumerate() {
        let e = generators[i].degree();
        for q in ring.degree(d - e).iter() {
            ech.insert(space.vectorize(&generators[i].scale_poly(q)), labels.len());
            labels.push(Some((slot, q.clone())));
        }
    }
    let k = current.len();
    let mut lambda = Matrix::zeros(k, k);
    let mut r = vec![vec![Poly::zero(n); k]; lower.len()];
    for (j, &gj) in current.iter().enumerate() {
        let target = space.vectorize(&sigma(&generators[gj]));
        let sol = ech
            .solve(&target)
            .ok_or(Error::NotExpressible { generator: gj })?;
        for (id, c) in sol {
            match &labels[id] {
                None => lambda.set(id, j, c),
                Some((slot, q)) => r[*slot][j] = &r[*slot][j] + &q.scale(&c),
            }
        }
    }
    if !lambda.mul(&lambda.conj()).is_identity() {
        return Err(Error::ConsistencyFailure("Λ·conj(Λ) is not the identity".into()));
    }
    let check = poly_mat_mul(&r, &lambda.conj(), n);
    let rc = poly_mat_conj(&r);
    let sum: Vec<Vec<Poly>> = check
        .iter()
        .zip(&rc)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    if !poly_mat_is_zero(&sum) {
        return Err(Error::ConsistencyFailure("R·conj(Λ) + σ(R) is not zero".into()));
    }
    Ok(SigmaExpansion {
        degree: d,
        current,
        lower,
        lambda,
        r,
    })
}

fn random_gaussian(rng: &mut impl Rng, bound: i64) -> Scalar {
    let re = rng.gen_range(-bound..=bound);
    let im = rng.gen_range(-bound..=bound);
    Scalar::gaussian(rat(re, 1), rat(im, 1))
}

/// `M` invertible with `ΛM̄ = M`, i.e. `Λ = M·M̄⁻¹`.
pub fn hilbert90_solve(lambda: &Matrix) -> Result<Matrix> {
    hilbert90_solve_seeded(lambda, 0)
}

pub fn hilbert90_solve_seeded(lambda: &Matrix, seed: u64) -> Result<Matrix> {
    let k = lambda.nrows();
    if !lambda.mul(&lambda.conj()).is_identity() {
        return Err(Error::ConsistencyFailure("Λ·conj(Λ) is not the identity".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = Matrix::identity(k).scale(&Scalar::from_ratio(1, 2));
    let mut candidate = half;
    for _ in 0..HILBERT90_RETRIES {
        let m = lambda.mul(&candidate.conj()).add(&candidate);
        if m.is_invertible() {
            return Ok(m);
        }
        candidate = Matrix::from_rows(
            (0..k)
                .map(|_| (0..k).map(|_| random_gaussian(&mut rng, HILBERT90_BOX)).collect())
                .collect(),
        );
    }
    Err(Error::RetryBudgetExhausted(HILBERT90_RETRIES))
}

/// One induction step of the realification.
#[derive(Debug, Clone)]
pub struct RealificationStep {
    pub expansion: SigmaExpansion,
    pub m: Matrix,
    pub t: Vec<Vec<Poly>>,
}

impl RealificationStep {
    pub fn degree(&self) -> usize {
        self.expansion.degree
    }

    pub fn lambda(&self) -> &Matrix {
        &self.expansion.lambda
    }

    pub fn r(&self) -> &[Vec<Poly>] {
        &self.expansion.r
    }

    /// `ΛM̄ = M`.
    pub fn check_lambda_m(&self) -> bool {
        self.lambda().mul(&self.m.conj()) == self.m
    }

    /// `RM̄ + σ(T) = T`.
    pub fn check_t(&self, nvars: usize) -> bool {
        let rm = poly_mat_mul(self.r(), &self.m.conj(), nvars);
        let st = poly_mat_conj(&self.t);
        rm.iter()
            .zip(&st)
            .zip(&self.t)
            .all(|((a, b), c)| a.iter().zip(b).zip(c).all(|((x, y), z)| &(x + y) == z))
    }
}

#[derive(Debug, Clone)]
pub struct RealificationCertificate {
    pub steps: Vec<RealificationStep>,
    pub new_generators: Vec<PolyMap>,
    pub basis: CovariantBasis,
}

impl RealificationCertificate {
    /// Every displayed identity of every step, plus reality of the output.
    pub fn verify(&self) -> bool {
        let n = self.basis.algebra().dim();
        self.steps.iter().all(|s| {
            s.lambda().mul(&s.lambda().conj()).is_identity() && s.check_lambda_m() && s.check_t(n)
        }) && self.new_generators.iter().all(|p| &sigma(p) == p)
    }
}

/// Realifies a homogeneous module basis, degree by degree.
pub fn realify_basis(basis: &CovariantBasis) -> Result<RealificationCertificate> {
    let ring = Arc::new(InvariantRing::new(basis.algebra().clone()));
    realify_basis_with(basis, &ring, 0)
}

pub fn realify_basis_with(
    basis: &CovariantBasis,
    ring: &Arc<InvariantRing>,
    seed: u64,
) -> Result<RealificationCertificate> {
    let n = basis.algebra().dim();
    let mut gens = basis.generators.clone();
    let mut degrees: Vec<usize> = basis.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    let mut steps = Vec::new();
    for d in degrees {
        let exp = express_sigma_in_basis(&gens, ring, d)?;
        let m = hilbert90_solve_seeded(&exp.lambda, seed.wrapping_add(d as u64))?;
        let t = poly_mat_mul(&exp.r, &m.conj(), n)
            .into_iter()
            .map(|row| row.iter().map(|p| p.scale(&Scalar::from_ratio(1, 2))).collect())
            .collect::<Vec<Vec<Poly>>>();
        let mut updated = Vec::with_capacity(exp.current.len());
        for j in 0..exp.current.len() {
            let mut p = PolyMap::zero(n, basis.rep.target_dim());
            for (i, &gi) in exp.current.iter().enumerate() {
                p = &p + &gens[gi].scale(m.get(i, j));
            }
            for (slot, &gn) in exp.lower.iter().enumerate() {
                p = &p + &gens[gn].scale_poly(&t[slot][j]);
            }
            updated.push(p);
        }
        for (&gj, p) in exp.current.iter().zip(updated) {
            if &sigma(&p) != &p {
                return Err(Error::ConsistencyFailure(format!(
                    "generator {gj} is not real after its step"
                )));
            }
            gens[gj] = p;
        }
        steps.push(RealificationStep { expansion: exp, m, t });
    }
    let new_basis = CovariantBasis {
        rep: basis.rep.clone(),
        generators: gens.clone(),
        degrees: basis.degrees.clone(),
        degree_bound_used: basis.degree_bound_used,
    };
    // the old generators must lie in the module spanned by the new ones
    let dec = Decomposer::with_ring(Arc::new(new_basis.clone()), ring.clone());
    for (i, q) in basis.generators.iter().enumerate() {
        dec.decompose(q).map_err(|_| Error::NotExpressible { generator: i })?;
    }
    Ok(RealificationCertificate {
        steps,
        new_generators: gens,
        basis: new_basis,
    })
}

/// Degree-preserving random Gaussian mix of a basis, plus random shears by
/// invariant multiples of lower-degree generators.
pub fn scramble_basis(basis: &CovariantBasis, ring: &InvariantRing, seed: u64) -> Result<CovariantBasis> {
    let n = basis.algebra().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = basis.generators.clone();
    let mut degrees: Vec<usize> = basis.degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let current: Vec<usize> = (0..gens.len()).filter(|&i| basis.degrees[i] == d).collect();
        let lower: Vec<usize> = (0..gens.len()).filter(|&i| basis.degrees[i] < d).collect();
        let k = current.len();
        let mix = loop {
            let a = Matrix::from_rows(
                (0..k)
                    .map(|_| (0..k).map(|_| random_gaussian(&mut rng, 2)).collect())
                    .collect(),
            );
            let complex = (0..k).any(|i| (0..k).any(|j| !a.get(i, j).is_real()));
            if complex && a.is_invertible() {
                break a;
            }
        };
        let mut updated = Vec::with_capacity(k);
        for j in 0..k {
            let mut p = PolyMap::zero(n, basis.rep.target_dim());
            for (i, &gi) in current.iter().enumerate() {
                p = &p + &basis.generators[gi].scale(mix.get(i, j));
            }
            for &gn in &lower {
                for q in ring.degree(d - basis.degrees[gn]).iter() {
                    let c = random_gaussian(&mut rng, 2);
                    if !c.is_zero() {
                        p = &p + &basis.generators[gn].scale_poly(&q.scale(&c));
                    }
                }
            }
            updated.push(p);
        }
        for (&gj, p) in current.iter().zip(updated) {
            gens[gj] = p;
        }
    }
    CovariantBasis::from_generators(basis.rep.clone(), gens)
}
