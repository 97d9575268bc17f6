//! Seeded random instances for round-trip checks.

use rand::Rng;

use crate::covariants::InvariantRing;
use crate::polyalg::{monomials_of_degree, Poly, PolyMap};
use crate::scalar::Scalar;

/// Small nonzero-biased rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`.
pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Random polynomial with all monomials of degree `≤ max_degree` present
/// with probability `density`.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, max_degree: usize, density: f64) -> Poly {
    let mut p = Poly::zero(nvars);
    for d in 0..=max_degree {
        for m in monomials_of_degree(nvars, d) {
            if rng.gen_bool(density) {
                p.add_term(m, &small_rational(rng));
            }
        }
    }
    p
}

pub fn random_map(rng: &mut impl Rng, nvars: usize, target_dim: usize, max_degree: usize, density: f64) -> PolyMap {
    PolyMap::new(
        nvars,
        (0..target_dim)
            .map(|_| random_poly(rng, nvars, max_degree, density))
            .collect(),
    )
}

/// Random invariant of degree `≤ max_degree`: a random combination of the
/// invariant basis in each degree.
pub fn random_invariant(rng: &mut impl Rng, ring: &InvariantRing, max_degree: usize) -> Poly {
    let n = ring.algebra().dim();
    let mut p = Poly::zero(n);
    for d in 0..=max_degree {
        for b in ring.degree(d).iter() {
            let c = small_rational(rng);
            if !c.is_zero() {
                p = &p + &b.scale(&c);
            }
        }
    }
    p
}
