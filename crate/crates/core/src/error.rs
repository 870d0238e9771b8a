use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("table is not associative: (e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },

    #[error("unit law fails at basis element e{index}")]
    BadUnit { index: usize },

    #[error("element has {got} coefficients, algebra has dimension {expected}")]
    AlgebraMismatch { expected: usize, got: usize },

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("bad preset parameters: {0}")]
    BadParams(String),

    #[error("element is not central: fails to commute with e{index}")]
    NotCentral { index: usize },

    #[error("generator {generator} is not a derivation: Leibniz rule fails on (e{i}, e{j})")]
    NotADerivation { generator: usize, i: usize, j: usize },

    #[error("vector is not in the module")]
    NotInModule,

    #[error("lift coefficient {index} is not central")]
    CoefficientNotCentral { index: usize },

    #[error("embedding of the lifted derivation differs from the second-dual element")]
    LiftMismatch,

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
