//! Lie algebras given by structure constants.
//!
//! An algebra is stored with a fixed basis `e_0, …, e_{n-1}` and the sparse
//! expansions of all brackets `[e_i, e_j]`. The invariant form is always the
//! trace form of the adjoint representation, `κ(x, y) = tr(ad x ∘ ad y)`, and
//! algebras on which it degenerates are rejected when loaded.

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::scalar::Scalar;

/// Coordinates of an algebra element in the algebra's basis.
pub type Element = Vec<Scalar>;

/// Half-width of the integer box used when sampling regular elements.
pub const SAMPLE_BOX: i64 = 10;
/// Draws allowed before [`LieAlgebra::random_regular`] gives up.
pub const SAMPLE_RETRIES: usize = 64;

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    brackets: Vec<Vec<(usize, Scalar)>>,
    cartan: Vec<usize>,
    rank: usize,
    ad: Vec<Matrix>,
    gram: Matrix,
    gram_inv: Matrix,
    matrix_basis: Option<Vec<Matrix>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.brackets == o.brackets && self.cartan == o.cartan
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra from nonzero structure constants
    /// `(i, j, k, c)` meaning `[e_i, e_j] ∋ c e_k`. Mirrored entries
    /// `(j, i, k, -c)` are filled in when absent and checked when present.
    pub fn from_structure_constants(
        name: &str,
        dim: usize,
        rank: usize,
        constants: &[(usize, usize, usize, Scalar)],
        cartan: Vec<usize>,
    ) -> Result<Self> {
        let mut table = vec![vec![Scalar::zero(); dim]; dim * dim];
        let mut given = vec![false; dim * dim * dim];
        for (i, j, k, c) in constants {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            table[i * dim + j][k] = c.clone();
            given[(i * dim + j) * dim + k] = true;
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let a = table[i * dim + j][k].clone();
                    let b = table[j * dim + i][k].clone();
                    let gij = given[(i * dim + j) * dim + k];
                    let gji = given[(j * dim + i) * dim + k];
                    if gij && gji {
                        if a != -b {
                            return Err(Error::InvalidAlgebra(format!(
                                "antisymmetry fails for c_({i},{j})^{k}"
                            )));
                        }
                    } else if gij {
                        table[j * dim + i][k] = -a;
                        given[(j * dim + i) * dim + k] = true;
                    }
                }
            }
        }
        let brackets = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Self::assemble(name, dim, rank, brackets, cartan, None)
    }

    /// Builds a matrix Lie algebra from a basis of square matrices closed
    /// under the commutator.
    pub fn from_matrix_basis(name: &str, basis: Vec<Matrix>, cartan: Vec<usize>) -> Result<Self> {
        let dim = basis.len();
        let flat = |m: &Matrix| -> crate::linalg::SparseVec {
            let mut v = crate::linalg::SparseVec::new();
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    if !m.get(i, j).is_zero() {
                        v.insert(i * m.ncols() + j, m.get(i, j).clone());
                    }
                }
            }
            v
        };
        let mut ech = Echelon::tracked();
        for (id, b) in basis.iter().enumerate() {
            if !matches!(ech.insert(flat(b), id), crate::linalg::Inserted::Pivot(_)) {
                return Err(Error::InvalidAlgebra("matrix basis is linearly dependent".into()));
            }
        }
        let mut brackets = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                let c = a.commutator(b);
                let sol = ech.solve(&flat(&c)).ok_or_else(|| {
                    Error::InvalidAlgebra("matrix basis is not closed under the bracket".into())
                })?;
                brackets.push(sol.into_iter().collect());
            }
        }
        let rank = cartan.len();
        Self::assemble(name, dim, rank, brackets, cartan, Some(basis))
    }

    fn assemble(
        name: &str,
        dim: usize,
        rank: usize,
        brackets: Vec<Vec<(usize, Scalar)>>,
        cartan: Vec<usize>,
        matrix_basis: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("zero-dimensional algebra".into()));
        }
        if cartan.len() != rank {
            return Err(Error::InvalidAlgebra(format!(
                "rank {rank} but {} Cartan indices",
                cartan.len()
            )));
        }
        if let Some(&bad) = cartan.iter().find(|&&c| c >= dim) {
            return Err(Error::InvalidAlgebra(format!("Cartan index {bad} out of range")));
        }
        let ad: Vec<Matrix> = (0..dim)
            .map(|i| {
                let mut m = Matrix::zeros(dim, dim);
                for j in 0..dim {
                    for (k, c) in &brackets[i * dim + j] {
                        m.set(*k, j, c.clone());
                    }
                }
                m
            })
            .collect();
        let mut gram = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let t = ad[i].mul(&ad[j]).trace();
                gram.set(i, j, t.clone());
                gram.set(j, i, t);
            }
        }
        let gram_inv = gram.inverse().ok_or_else(|| {
            Error::InvalidAlgebra("trace form is degenerate (nontrivial center or not reductive)".into())
        })?;
        let g = LieAlgebra {
            name: name.to_string(),
            dim,
            brackets,
            cartan,
            rank,
            ad,
            gram,
            gram_inv,
            matrix_basis,
        };
        g.check_jacobi()?;
        g.check_cartan()?;
        Ok(g)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let eij = self.basis_bracket(i, j);
                for k in (j + 1)..n {
                    let a = self.bracket_unchecked(&eij, &self.basis_element(k));
                    let b = self.bracket_unchecked(&self.basis_bracket(j, k), &self.basis_element(i));
                    let c = self.bracket_unchecked(&self.basis_bracket(k, i), &self.basis_element(j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(&(x + y) + z).is_zero()) {
                        return Err(Error::InvalidAlgebra(format!(
                            "Jacobi identity fails on ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_cartan(&self) -> Result<()> {
        for (a, &i) in self.cartan.iter().enumerate() {
            for &j in &self.cartan[a + 1..] {
                if !self.brackets[i * self.dim + j].is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "Cartan elements {i} and {j} do not commute"
                    )));
                }
            }
        }
        if self.is_abelian() {
            return Ok(());
        }
        let x = self.random_regular_with_rank(0)?;
        let c = self.centralizer(&x).len();
        if c != self.rank {
            return Err(Error::InvalidAlgebra(format!(
                "declared rank {} but a generic element has centralizer dimension {c}",
                self.rank
            )));
        }
        Ok(())
    }

    // Minimal centralizer dimension seen over a few samples; used to validate
    // the declared rank before `is_regular` can be trusted.
    fn random_regular_with_rank(&self, seed: u64) -> Result<Element> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<(usize, Element)> = None;
        for _ in 0..8 {
            let x = self.sample_box(&mut rng);
            let c = self.centralizer(&x).len();
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, x));
            }
        }
        Ok(best.unwrap().1)
    }

    fn sample_box(&self, rng: &mut impl Rng) -> Element {
        (0..self.dim)
            .map(|_| Scalar::from_int(rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX)))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    /// Gram matrix of κ in the basis.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inv
    }

    /// Defining matrices, when the algebra was built from a matrix basis.
    pub fn matrix_basis(&self) -> Option<&[Matrix]> {
        self.matrix_basis.as_deref()
    }

    /// Sparse expansion of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.brackets[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }

    pub fn zero(&self) -> Element {
        vec![Scalar::zero(); self.dim]
    }

    fn basis_bracket(&self, i: usize, j: usize) -> Element {
        let mut v = self.zero();
        for (k, c) in self.structure(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    fn check_dim(&self, x: &[Scalar]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Element {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.structure(i, j) {
                    out[*k].add_mul(&c, s);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    /// Trace form `κ(x, y) = tr(ad x ad y)`.
    pub fn kappa(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(crate::linalg::dot(x, &self.gram.mul_vec(y)))
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.ad[i].scale(xi));
            }
        }
        m
    }

    /// `ad e_i`.
    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    /// Basis of the centralizer `g^x`.
    pub fn centralizer(&self, x: &[Scalar]) -> Vec<Element> {
        self.ad_matrix(x).kernel()
    }

    pub fn is_regular(&self, x: &[Scalar]) -> bool {
        x.len() == self.dim && self.centralizer(x).len() == self.rank
    }

    /// Deterministic regular element drawn from the integer box
    /// `[-SAMPLE_BOX, SAMPLE_BOX]^dim`.
    pub fn random_regular(&self, seed: u64) -> Result<Element> {
        if self.is_abelian() {
            return Err(Error::InvalidAlgebra("abelian algebra has no sampling contract".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.random_regular_from(&mut rng)
    }

    pub fn random_regular_from(&self, rng: &mut impl Rng) -> Result<Element> {
        for _ in 0..SAMPLE_RETRIES {
            let x = self.sample_box(rng);
            if self.is_regular(&x) {
                return Ok(x);
            }
        }
        Err(Error::SamplingExhausted(SAMPLE_RETRIES))
    }

    /// Serializes in the algebra file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.dim, self.rank);
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.structure(i, j) {
                    let _ = writeln!(s, "{i} {j} {k} {c}");
                }
            }
        }
        let idx: Vec<String> = self.cartan.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "cartan: {}", idx.join(" "));
        s
    }

    /// Parses the algebra file format: a header `dim rank`, lines
    /// `i j k p/q` for the nonzero structure constants, and a line
    /// `cartan: i1 i2 …`. Blank lines and `#` comments are ignored.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .enumerate()
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty algebra file".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let [dim, rank] = head[..] else {
            return Err(Error::Parse(format!("expected header `dim rank`, got `{header}`")));
        };
        let dim: usize = dim
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension `{dim}`")))?;
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank `{rank}`")))?;
        let mut constants = Vec::new();
        let mut cartan = None;
        for (no, line) in lines {
            if let Some(rest) = line.strip_prefix("cartan:") {
                let idx = rest
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("line {}: bad Cartan index `{t}`", no + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cartan = Some(idx);
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 4 {
                return Err(Error::Parse(format!("line {}: expected `i j k coeff`", no + 1)));
            }
            let idx = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {}: bad index `{t}`", no + 1)))
            };
            let c: Scalar = toks[3..].join(" ").parse()?;
            constants.push((idx(toks[0])?, idx(toks[1])?, idx(toks[2])?, c));
        }
        let cartan = cartan.ok_or_else(|| Error::Parse("missing `cartan:` line".into()))?;
        Self::from_structure_constants(name, dim, rank, &constants, cartan)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".into());
        Self::parse(&name, &text)
    }
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i, j, Scalar::one());
    m
}

/// `sl(n)` in the basis `H_0, …, H_{n-2}, E_ij (i<j), E_ji (i<j)` with
/// `H_k = E_kk - E_{k+1,k+1}`. For `n = 2` this is `(h, e, f)`.
pub fn sl(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidAlgebra("sl(n) needs n >= 2".into()));
    }
    let mut basis = Vec::new();
    for k in 0..n - 1 {
        basis.push(unit(n, k, k).sub(&unit(n, k + 1, k + 1)));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(unit(n, i, j));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(unit(n, j, i));
        }
    }
    LieAlgebra::from_matrix_basis(&format!("sl{n}"), basis, (0..n - 1).collect())
}

/// `so(3)` with basis `L_x, L_y, L_z` (`[L_x, L_y] = L_z`) and Cartan `L_z`.
pub fn so3() -> Result<LieAlgebra> {
    let m = |rows: [[i64; 3]; 3]| {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    };
    let lx = m([[0, 0, 0], [0, 0, -1], [0, 1, 0]]);
    let ly = m([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]);
    let lz = m([[0, -1, 0], [1, 0, 0], [0, 0, 0]]);
    LieAlgebra::from_matrix_basis("so3", vec![lx, ly, lz], vec![2])
}

/// Catalog lookup: `sl2`, `sl3`, `sl4`, `so3`.
pub fn catalog(name: &str) -> Result<LieAlgebra> {
    match name {
        "sl2" => sl(2),
        "sl3" => sl(3),
        "sl4" => sl(4),
        "so3" => so3(),
        other => Err(Error::InvalidAlgebra(format!("unknown catalog algebra `{other}`"))),
    }
}
