//! Property harness over the catalog, one check per acceptance criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::covariants::{
    default_degree_bound, invariant_generators, kostant_basis, verify_k2, CovariantBasis, InvariantRing,
};
use crate::distkit::{covariant_point_space, factor_point_distribution, is_covariant, pair_bracket};
use crate::division::{pointwise_decompose, Decomposer, Divider, Sample, Tolerances};
use crate::error::{Error, Result};
use crate::liecore::{catalog, LieAlgebra};
use crate::polyalg::{bracket_maps, kappa_pairing, Poly, PolyMap};
use crate::random::{random_invariant, random_map};
use crate::realify::{realify_basis_with, scramble_basis};
use crate::rep::{adjoint_rep, catalog_rep, Representation};
use crate::scalar::Scalar;

pub const CATALOG_PAIRS: [(&str, &str); 4] = [("sl2", "adjoint"), ("sl3", "adjoint"), ("so3", "adjoint"), ("sl2", "irrep2")];
pub const POINTWISE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({:.2?}{}) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed,
            self.limit.map(|l| format!(" / limit {l:.0?}")).unwrap_or_default(),
            self.detail
        )
    }
}

pub const NAMES: [&str; 10] = [
    "module rank",
    "sl2 identity generator",
    "pointwise basis",
    "decomposition round trip",
    "division round trip",
    "pointwise decomposition",
    "realification",
    "kernel orthogonality",
    "sl2 invariant factorization",
    "weak factorization",
];

pub const LIMITS: [Option<u64>; 10] = [Some(10), None, Some(5), Some(60), Some(120), None, Some(60), None, None, None];

fn pair(alg: &str, rep: &str) -> Result<(Arc<LieAlgebra>, Representation)> {
    let g = Arc::new(catalog(alg)?);
    let rho = catalog_rep(&g, rep)?;
    Ok((g, rho))
}

fn basis_of(alg: &str, rep: &str) -> Result<CovariantBasis> {
    let (g, rho) = pair(alg, rep)?;
    kostant_basis(&rho, default_degree_bound(&g))
}

fn fail(msg: impl Into<String>) -> Result<String> {
    Err(Error::ConsistencyFailure(msg.into()))
}

fn c1() -> Result<String> {
    let mut ranks = Vec::new();
    for (alg, rep) in CATALOG_PAIRS {
        let b = basis_of(alg, rep)?;
        if b.rank() != b.rep.zero_weight_multiplicity() {
            return fail(format!("{alg}/{rep}: rank {}", b.rank()));
        }
        ranks.push(b.rank());
    }
    if ranks != [1, 2, 1, 1] {
        return fail(format!("ranks {ranks:?}"));
    }
    Ok(format!("ranks {ranks:?}"))
}

fn c2() -> Result<String> {
    let b = basis_of("sl2", "adjoint")?;
    let p = &b.generators[0];
    let c = p.component(0).coeff(&crate::polyalg::Monomial::var(3, 0));
    let positive = c.is_real() && *c.re() > num_traits::Zero::zero();
    if b.rank() != 1 || !positive || p != &PolyMap::identity(3).scale(&c) {
        return fail(format!("generator {}", p.to_text()));
    }
    Ok(format!("P1 = ({c})·x"))
}

fn c3(seed: u64) -> Result<String> {
    for (alg, rep) in CATALOG_PAIRS {
        let b = basis_of(alg, rep)?;
        for k in 0..10 {
            let x = b.algebra().random_regular(seed + k)?;
            if !verify_k2(&b, &x)? {
                return fail(format!("{alg}/{rep} point {k}"));
            }
        }
    }
    Ok("40 points".into())
}

fn c4(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials = 0;
    for (alg, rep) in CATALOG_PAIRS {
        let b = Arc::new(basis_of(alg, rep)?);
        let ring = Arc::new(InvariantRing::new(b.algebra().clone()));
        let dec = Decomposer::with_ring(b.clone(), ring.clone());
        for _ in 0..100 {
            let qs: Vec<Poly> = (0..b.rank()).map(|_| random_invariant(&mut rng, &ring, 4)).collect();
            let mut p = PolyMap::zero(b.algebra().dim(), b.rep.target_dim());
            for (q, g) in qs.iter().zip(&b.generators) {
                p = &p + &g.scale_poly(q);
            }
            if dec.decompose(&p)?.coefficients != qs {
                return fail(format!("{alg}/{rep} trial {trials}"));
            }
            trials += 1;
        }
    }
    Ok(format!("{trials} trials"))
}

fn c5(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alg in ["sl2", "sl3"] {
        let g = Arc::new(catalog(alg)?);
        let n = g.dim();
        let div = Divider::adjoint(&g)?;
        let id = PolyMap::identity(n);
        for k in 0..50 {
            let y0 = random_map(&mut rng, n, n, 3, 0.15);
            let x = bracket_maps(&g, &id, &y0);
            let y = div.divide(&x, x.degree() + 2)?;
            if bracket_maps(&g, &id, &y) != x {
                return fail(format!("{alg} trial {k}"));
            }
        }
        match div.divide(&id, 3) {
            Err(Error::NotTangent { component, .. }) => {
                let kxx = kappa_pairing(&g, &id, &id);
                let q = &div.generators().unwrap().qmaps[component];
                let d = kappa_pairing(&g, q, &id);
                let (m, c) = d.leading().ok_or_else(|| Error::ConsistencyFailure("zero defect".into()))?;
                if d != kxx.scale(&(c / &kxx.coeff(m))) {
                    return fail(format!("{alg}: defect is not a multiple of κ(x,x)"));
                }
            }
            other => return fail(format!("{alg}: identity field gave {other:?}")),
        }
    }
    Ok("100 divisions, identity rejected".into())
}

/// `tr(x²)` in the defining matrix representation.
pub fn trace_square(g: &LieAlgebra) -> Option<Poly> {
    let mb = g.matrix_basis()?;
    let n = g.dim();
    let mut p = Poly::zero(n);
    for i in 0..n {
        for j in 0..n {
            let t = mb[i].mul(&mb[j]).trace();
            if !t.is_zero() {
                p = &p + &(&Poly::var(n, i) * &Poly::var(n, j)).scale(&t);
            }
        }
    }
    Some(p)
}

fn c6(seed: u64) -> Result<String> {
    let b = basis_of("sl3", "adjoint")?;
    let g = b.algebra().clone();
    let tr = trace_square(&g).expect("matrix algebra");
    let mut samples = Vec::new();
    let mut expected = Vec::new();
    for k in 0..20 {
        let x: Vec<f64> = g.random_regular(seed + k)?.iter().map(Scalar::to_f64).collect();
        let s = tr.eval_f64(&x).sin();
        let p1 = b.generators[0].eval_f64(&x);
        let p2 = b.generators[1].eval_f64(&x);
        let value = p1.iter().zip(&p2).map(|(a, c)| s * a + c).collect();
        samples.push(Sample { point: x, value });
        expected.push(s);
    }
    let out = pointwise_decompose(&samples, &b, Tolerances::default())?;
    for (k, (c, s)) in out.coeff_values.iter().zip(&expected).enumerate() {
        let e1 = (c[0] - s).abs() / s.abs().max(1.0);
        let e2 = (c[1] - 1.0).abs();
        if e1 > POINTWISE_REL_TOL || e2 > POINTWISE_REL_TOL {
            return fail(format!("point {k}: errors {e1:e}, {e2:e}"));
        }
    }
    // push one sample out of the fixed space
    let mut bad = samples[0].clone();
    let norm = bad.value.iter().map(|v| v * v).sum::<f64>().sqrt();
    bad.value[2] += 1e-3 * norm.max(1.0);
    match pointwise_decompose(&[bad], &b, Tolerances::default()) {
        Err(Error::NotPointwiseFixed { .. }) => Ok("20 points, violation rejected".into()),
        other => fail(format!("perturbed sample gave {other:?}")),
    }
}

fn c7(seed: u64) -> Result<String> {
    let b = basis_of("sl3", "adjoint")?;
    let ring = Arc::new(InvariantRing::new(b.algebra().clone()));
    for k in 0..20 {
        let scrambled = scramble_basis(&b, &ring, seed + k)?;
        let cert = realify_basis_with(&scrambled, &ring, seed + k)?;
        if !cert.verify() {
            return fail(format!("scramble {k}"));
        }
    }
    Ok("20 scrambles".into())
}

fn c8(seed: u64) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for alg in ["sl2", "sl3"] {
        let g = Arc::new(catalog(alg)?);
        let ad = adjoint_rep(&g);
        let n = g.dim();
        for t in covariant_point_space(&ad, 4) {
            if !is_covariant(&t, &ad)? {
                return fail(format!("{alg}: basis distribution not covariant"));
            }
            for _ in 0..20 {
                let phi = random_map(&mut rng, n, n, 3, 0.2);
                if !pair_bracket(&t, &g, &phi)?.is_zero() {
                    return fail(format!("{alg}: nonzero pairing"));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairings"))
}

fn c9() -> Result<String> {
    let mut count = 0;
    for rep in ["adjoint", "irrep2"] {
        let b = basis_of("sl2", rep)?;
        for t in covariant_point_space(&b.rep, 4) {
            let f = factor_point_distribution(&t, &b.rep, &b.generators, true)?;
            let back = f.reconstruct(&b.generators, b.rep.target_dim())?;
            if !f.invariant || !back.agrees_with(&t, t.order().max(back.order()))? {
                return fail(format!("sl2/{rep}: bad factorization"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} distributions"))
}

fn c10() -> Result<String> {
    let g = Arc::new(catalog("sl3")?);
    let ad = adjoint_rep(&g);
    let gens = invariant_generators(&g, default_degree_bound(&g))?;
    let mut count = 0;
    let mut invariant = 0;
    for t in covariant_point_space(&ad, 3) {
        let f = factor_point_distribution(&t, &ad, &gens.qmaps, false)?;
        let back = f.reconstruct(&gens.qmaps, g.dim())?;
        if !back.agrees_with(&t, t.order().max(back.order()))? {
            return fail("bad factorization");
        }
        if f.invariant_solution_exists == Some(true) {
            invariant += 1;
        }
        count += 1;
    }
    Ok(format!("{count} distributions, {invariant} with invariant θ"))
}

pub fn run(id: usize, seed: u64) -> Outcome {
    let start = Instant::now();
    let res = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(seed),
        4 => c4(seed),
        5 => c5(seed),
        6 => c6(seed),
        7 => c7(seed),
        8 => c8(seed),
        9 => c9(),
        10 => c10(),
        _ => Err(Error::Parse(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let limit = LIMITS.get(id.wrapping_sub(1)).copied().flatten().map(Duration::from_secs);
    let (passed, detail) = match res {
        Ok(d) => (limit.is_none_or(|l| elapsed <= l), d),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        id,
        name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed,
        limit,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=10).map(|id| run(id, seed)).collect()
}

