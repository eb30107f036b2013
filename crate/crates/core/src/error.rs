use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("cone is not smooth")]
    NotSmooth,
    #[error("cone contains a line")]
    NotPointed,
    #[error("cone is not a maximal proper face of the given cone")]
    NotMaximalFace,
    #[error("cone is not in the fan")]
    ConeNotInFan,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ray values are not linear on cone {cone:?} (ray {ray})")]
    NotCartier { cone: Vec<usize>, ray: usize },
    #[error("complement map is not defined on the span of the cone (singular section system)")]
    NotGeneric,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("series is not divisible by the linear form (nonzero residual in degree {degree})")]
    NotDivisible { degree: u32 },
    #[error("linear form is zero")]
    ZeroLinearForm,
    #[error("truncation order too small for the requested operation")]
    InsufficientOrder,
    #[error("enumeration budget of {budget} points exceeded")]
    EnumerationBudget { budget: u64 },
    #[error("arithmetic overflow in integer lattice computation")]
    Overflow,
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = core::result::Result<T, Error>;
