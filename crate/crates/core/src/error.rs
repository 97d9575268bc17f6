use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("no regular element found after {0} draws")]
    SamplingExhausted(usize),

    #[error("element is not regular (centralizer dimension {centralizer_dim}, rank {rank})")]
    NotRegular { centralizer_dim: usize, rank: usize },

    #[error("degree bound {bound} exceeded: {what}")]
    DegreeBoundExceeded { bound: usize, what: String },

    #[error("found {found} module generators but the zero weight has multiplicity {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("map is not covariant: defect along basis element {basis_index} is nonzero")]
    NotCovariant { basis_index: usize },

    #[error("covariant map is not in the span of the module basis in degree {degree}")]
    NotInModule { degree: usize },

    #[error("field is not tangent to adjoint orbits: tangency component {component} is {defect}")]
    NotTangent { component: usize, defect: String },

    #[error("sample {index} is not fixed by the centralizer: violation {violation:e} > {tolerance:e}")]
    NotPointwiseFixed {
        index: usize,
        violation: f64,
        tolerance: f64,
    },

    #[error("residual {residual:e} at sample {index} exceeds {tolerance:e}")]
    ResidualExceeded {
        index: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("conjugate of generator {generator} is not expressible in the basis")]
    NotExpressible { generator: usize },

    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("random construction failed after {0} attempts")]
    RetryBudgetExhausted(usize),

    #[error("no factorization found for degree {degree} component")]
    NoFactorization { degree: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
