use thiserror::Error;

/// Errors raised by the algebra, symbolic, field and transform layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("signature mismatch: R_{left} vs R_{right}")]
    SignatureMismatch { left: usize, right: usize },

    #[error("dimension {0} outside the supported range 1..=12")]
    UnsupportedDimension(usize),

    #[error("vector is not of unit length (|w| = {norm})")]
    NotUnit { norm: f64 },

    #[error("not a spinor: {0}")]
    InvalidSpinor(String),

    #[error("invalid rotation plane e{j}e{k} in dimension {m}")]
    InvalidPlane { j: usize, k: usize, m: usize },

    #[error("pole at t = |x|^2 = 1 hit while evaluating {context}")]
    Pole { context: String },

    #[error("wavelet parameters rejected: {0}")]
    Integrability(String),

    #[error("divergent moment: {0}")]
    DivergentMoment(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("incompatible translation lattice: {0}")]
    IncompatibleLattice(String),

    #[error("under-resolved scale: {0}")]
    UnderResolved(String),

    #[error("truncation gate failed: {0}")]
    TruncationGate(String),

    #[error("divergent admissibility integrand: {0}")]
    DivergentAdmissibility(String),

    #[error("vacuous bound: {0}")]
    Vacuous(String),

    #[error("zero field: {0}")]
    ZeroField(String),

    #[error("infinite-measure region: {0}")]
    InfiniteMeasure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
