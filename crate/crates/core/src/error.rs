use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime in [5, 2^31)")]
    BadModulus(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("number of variables mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("FREE_MODULE: operation undefined on a free module")]
    FreeModule,
    #[error("DIM_TOO_LARGE: algebra of dimension {dim} needs a prime larger than {dim}, have {p}")]
    DimTooLarge { dim: usize, p: u32 },
    #[error("linear form is zero")]
    ZeroForm,
    #[error("linear forms are linearly dependent")]
    DependentForms,
    #[error("NOT_CX1: {0}")]
    NotCx1(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
