use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Fiber surfaces must have genus at least one.
    #[error("fiber genus must be at least 1 (got {0})")]
    GenusTooSmall(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    ModelMismatch { expected: usize, found: usize },

    #[error("class {0:?} is neither primitive nor zero, so it is not carried by an embedded loop")]
    NotPrimitive(Vec<i64>),

    #[error("matrix does not preserve the intersection form")]
    NotSymplectic,

    #[error("matrix row {row} has length {found}, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("the zero element is homogeneous of every degree")]
    DegreeOfZero,

    #[error("the zero element lies in every filtration level")]
    LevelOfZero,

    #[error("filtration step must be positive (got {0})")]
    NonPositiveFiltrationStep(String),

    #[error("Betti vector is empty")]
    EmptyInput,

    #[error("curves meet with |intersection number| = {0}; only single transverse points and coincident curves are handled")]
    NotCleanlyIntersecting(i64),

    #[error("obstruction vanishing could not be certified: {0}")]
    ObstructionUndetermined(String),

    #[error("Maslov parity is not certified for the fiber-sum ambient")]
    MaslovParityUnverified,

    #[error("operation needs a {expected} ambient")]
    AmbientMismatch { expected: &'static str },

    #[error("fiber-sum data has {found} records but the link has {expected} meridians")]
    RecordCountMismatch { expected: usize, found: usize },

    #[error("disc boundaries do not span H_1 of the torus: both are {0}")]
    BasisNotSpanning(&'static str),

    #[error("disc has no capping discs and is not declared boundary-degenerate")]
    EmptyCaps,
}
