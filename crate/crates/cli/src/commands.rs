use std::path::Path;
use std::sync::Arc;

use liecov::covariants::{default_degree_bound, equivariance_defect, kostant_basis_with, CovariantBasis, InvariantRing};
use liecov::distkit::{covariant_point_space, factor_point_distribution, PointDistribution};
use liecov::division::{pointwise_decompose, Decomposer, Divider, Tolerances};
use liecov::linalg::Matrix;
use liecov::realify::{realify_basis_with, scramble_basis};
use liecov::{selftest, Error, Poly, PolyMap, Representation, Result};
use serde_json::{json, Value};

use crate::{input, Format, JobConfig};

struct Context {
    rho: Representation,
    bound: usize,
}

impl Context {
    fn load(cfg: &JobConfig) -> Result<Self> {
        let g = input::algebra(cfg)?;
        let rho = input::representation(cfg, &g)?;
        let bound = cfg.degree_bound.unwrap_or_else(|| default_degree_bound(&g));
        Ok(Context { rho, bound })
    }

    fn nvars(&self) -> usize {
        self.rho.algebra().dim()
    }

    fn ring(&self) -> Arc<InvariantRing> {
        Arc::new(InvariantRing::new(self.rho.algebra().clone()))
    }

    fn basis(&self, ring: &InvariantRing) -> Result<CovariantBasis> {
        kostant_basis_with(&self.rho, self.bound, ring, false)
    }
}

fn map_text(p: &PolyMap) -> String {
    p.to_text()
}

fn generators_text(gens: &[PolyMap]) -> String {
    gens.iter().map(map_text).collect::<Vec<_>>().join("===\n")
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn finish(cfg: &JobConfig, text: String, value: Value) -> Result<()> {
    match cfg.format {
        Format::Text => input::emit(cfg, &text),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            input::emit(cfg, &s)
        }
    }
}

fn manifest(cfg: &JobConfig, b: &CovariantBasis) -> Value {
    json!({
        "algebra": b.algebra().name(),
        "rep": cfg.rep,
        "r": b.rank(),
        "degrees": b.degrees,
        "degree_bound_used": b.degree_bound_used,
    })
}

pub fn basis(cfg: &JobConfig) -> Result<u8> {
    let ctx = Context::load(cfg)?;
    let b = ctx.basis(&ctx.ring())?;
    let degrees: Vec<String> = b.degrees.iter().map(usize::to_string).collect();
    let text = format!(
        "# algebra {} rep {} r {} degrees {} degree_bound_used {}\n{}",
        b.algebra().name(),
        cfg.rep,
        b.rank(),
        degrees.join(" "),
        b.degree_bound_used,
        generators_text(&b.generators)
    );
    let mut value = manifest(cfg, &b);
    value["generators"] = json!(b.generators.iter().map(map_text).collect::<Vec<_>>());
    finish(cfg, text, value)?;
    Ok(0)
}

fn report_defects(p: &PolyMap, rho: &Representation) -> Result<()> {
    for (i, d) in equivariance_defect(p, rho)?.iter().enumerate() {
        if !d.is_zero() {
            eprintln!("defect along basis element {i}:\n{}", d.to_text());
        }
    }
    Ok(())
}

pub fn decompose(cfg: &JobConfig, map: Option<&Path>, samples: Option<&Path>) -> Result<u8> {
    let ctx = Context::load(cfg)?;
    let ring = ctx.ring();
    let b = Arc::new(ctx.basis(&ring)?);
    if let Some(path) = samples {
        let samples = input::samples(path, ctx.nvars(), ctx.rho.target_dim())?;
        let tol = Tolerances {
            input: cfg.tol_input,
            residual: cfg.tol_residual,
        };
        let out = pointwise_decompose(&samples, &b, tol)?;
        let mut text = String::new();
        for (c, r) in out.coeff_values.iter().zip(&out.residuals) {
            let cs: Vec<String> = c.iter().map(|x| format!("{x:.15e}")).collect();
            text.push_str(&format!("{} # residual {r:.3e}\n", cs.join(" ")));
        }
        let value = json!({
            "basis": manifest(cfg, &b),
            "coefficients": out.coeff_values,
            "residuals": out.residuals,
        });
        finish(cfg, text, value)?;
        return Ok(0);
    }
    let p = input::poly_map(map.expect("clap requires an input"), ctx.nvars())?;
    if p.target_dim() != ctx.rho.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: ctx.rho.target_dim(),
            found: p.target_dim(),
        });
    }
    let dec = Decomposer::with_ring(b.clone(), ring);
    let d = match dec.decompose(&p) {
        Ok(d) => d,
        Err(e @ Error::NotCovariant { .. }) => {
            report_defects(&p, &ctx.rho)?;
            return Err(e);
        }
        Err(e) => return Err(e),
    };
    let texts: Vec<String> = d.coefficients.iter().map(Poly::to_text).collect();
    let text = texts
        .iter()
        .enumerate()
        .map(|(i, t)| format!("# Q{}\n{t}", i + 1))
        .collect::<Vec<_>>()
        .join("");
    let value = json!({
        "basis": manifest(cfg, &b),
        "coefficients": texts,
        "verified": d.reconstruct() == p,
    });
    finish(cfg, text, value)?;
    Ok(0)
}

pub fn divide(cfg: &JobConfig, path: &Path) -> Result<u8> {
    let ctx = Context::load(cfg)?;
    let x = input::poly_map(path, ctx.nvars())?;
    let adjoint = ctx.rho.label() == "adjoint";
    let div = if adjoint {
        Divider::adjoint(ctx.rho.algebra())?
    } else {
        Divider::generalized(ctx.rho.clone())
    };
    let bound = cfg.degree_bound.unwrap_or(x.degree() + ctx.bound);
    let y = div.divide(&x, bound)?;
    let verified = div.apply(&y) == x;
    let text = format!("# verified {verified}\n{}", y.to_text());
    let value = json!({
        "algebra": ctx.rho.algebra().name(),
        "rep": cfg.rep,
        "y": y.to_text(),
        "verified": verified,
    });
    finish(cfg, text, value)?;
    Ok(if verified { 0 } else { 1 })
}

pub fn realify(cfg: &JobConfig, path: Option<&Path>, scramble: bool) -> Result<u8> {
    let ctx = Context::load(cfg)?;
    let ring = ctx.ring();
    let mut b = match path {
        Some(p) => CovariantBasis::from_generators(ctx.rho.clone(), input::poly_maps(p, ctx.nvars())?)?,
        None => ctx.basis(&ring)?,
    };
    if scramble {
        b = scramble_basis(&b, &ring, cfg.seed)?;
    }
    let cert = realify_basis_with(&b, &ring, cfg.seed)?;
    let verified = cert.verify();
    let steps: Vec<Value> = cert
        .steps
        .iter()
        .map(|s| {
            json!({
                "degree": s.degree(),
                "lambda": matrix_json(s.lambda()),
                "m": matrix_json(&s.m),
                "lambda_m_fixed": s.check_lambda_m(),
                "t_fixed": s.check_t(ctx.nvars()),
            })
        })
        .collect();
    let text = format!("# verified {verified}\n{}", generators_text(&cert.new_generators));
    let value = json!({
        "basis": manifest(cfg, &cert.basis),
        "input_generators": b.generators.iter().map(map_text).collect::<Vec<_>>(),
        "generators": cert.new_generators.iter().map(map_text).collect::<Vec<_>>(),
        "steps": steps,
        "verified": verified,
    });
    finish(cfg, text, value)?;
    Ok(if verified { 0 } else { 1 })
}

pub fn factor(cfg: &JobConfig, path: Option<&Path>, order: usize, invariant: bool) -> Result<u8> {
    let ctx = Context::load(cfg)?;
    let b = ctx.basis(&ctx.ring())?;
    let targets: Vec<PointDistribution> = match path {
        Some(p) => vec![input::distribution(p, ctx.nvars(), ctx.rho.target_dim())?],
        None => covariant_point_space(&ctx.rho, order),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    for (k, t) in targets.iter().enumerate() {
        let f = factor_point_distribution(t, &ctx.rho, &b.generators, invariant)?;
        let thetas: Vec<String> = f.thetas.iter().map(PointDistribution::to_text).collect();
        text.push_str(&format!(
            "# distribution {k} invariant {} invariant_solution_exists {}\n",
            f.invariant,
            f.invariant_solution_exists.map_or("unknown".into(), |v| v.to_string())
        ));
        for (i, th) in thetas.iter().enumerate() {
            text.push_str(&format!("# theta {}\n{th}", i + 1));
        }
        results.push(json!({
            "distribution": t.to_text(),
            "thetas": thetas,
            "invariant": f.invariant,
            "invariant_solution_exists": f.invariant_solution_exists,
        }));
    }
    let value = json!({
        "basis": manifest(cfg, &b),
        "factorizations": results,
    });
    finish(cfg, text, value)?;
    Ok(0)
}

pub fn selftest(cfg: &JobConfig, only: Option<usize>) -> Result<u8> {
    let outcomes = match only {
        Some(id) if (1..=10).contains(&id) => vec![selftest::run(id, cfg.seed)],
        Some(id) => return Err(Error::Parse(format!("no criterion {id}"))),
        None => selftest::run_all(cfg.seed),
    };
    let text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    let value = Value::Array(
        outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "elapsed_ms": o.elapsed.as_millis() as u64,
                })
            })
            .collect(),
    );
    finish(cfg, text, value)?;
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
}
