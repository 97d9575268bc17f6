use std::path::Path;
use std::sync::Arc;

use liecov::distkit::PointDistribution;
use liecov::division::Sample;
use liecov::liecore::{catalog, LieAlgebra};
use liecov::rep::catalog_rep;
use liecov::{Error, PolyMap, Representation, Result};

use crate::JobConfig;

fn looks_like_path(s: &str) -> bool {
    s.contains('/') || s.contains('.') || Path::new(s).exists()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn algebra(cfg: &JobConfig) -> Result<Arc<LieAlgebra>> {
    let g = if looks_like_path(&cfg.algebra) {
        let path = Path::new(&cfg.algebra);
        let name = path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned());
        LieAlgebra::parse(&name, &read(path)?)?
    } else {
        catalog(&cfg.algebra)?
    };
    Ok(Arc::new(g))
}

pub fn representation(cfg: &JobConfig, g: &Arc<LieAlgebra>) -> Result<Representation> {
    if looks_like_path(&cfg.rep) {
        let path = Path::new(&cfg.rep);
        let label = path.file_stem().map_or("custom".into(), |s| s.to_string_lossy().into_owned());
        Representation::parse(g.clone(), &label, &read(path)?)
    } else {
        catalog_rep(g, &cfg.rep)
    }
}

pub fn poly_map(path: &Path, nvars: usize) -> Result<PolyMap> {
    PolyMap::parse(&read(path)?, nvars)
}

/// Maps separated by lines consisting of `===`.
pub fn poly_maps(path: &Path, nvars: usize) -> Result<Vec<PolyMap>> {
    let text = read(path)?;
    let mut blocks = vec![String::new()];
    for line in text.lines() {
        if line.trim() == "===" {
            blocks.push(String::new());
        } else {
            let b = blocks.last_mut().unwrap();
            b.push_str(line);
            b.push('\n');
        }
    }
    blocks
        .iter()
        .filter(|b| !b.trim().is_empty())
        .map(|b| PolyMap::parse(b, nvars))
        .collect()
}

pub fn samples(path: &Path, nvars: usize, target_dim: usize) -> Result<Vec<Sample>> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("sample line {}: {what}", ln + 1));
        let (x, v) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let floats = |s: &str| -> Result<Vec<f64>> {
            s.split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|_| bad(&format!("bad number `{t}`"))))
                .collect()
        };
        let (point, value) = (floats(x)?, floats(v)?);
        if point.len() != nvars || value.len() != target_dim {
            return Err(bad("wrong number of coordinates"));
        }
        out.push(Sample { point, value });
    }
    if out.is_empty() {
        return Err(Error::Parse("no samples".into()));
    }
    Ok(out)
}

pub fn distribution(path: &Path, nvars: usize, target_dim: usize) -> Result<PointDistribution> {
    PointDistribution::parse(&read(path)?, nvars, target_dim)
}

pub fn emit(cfg: &JobConfig, text: &str) -> Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
