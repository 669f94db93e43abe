use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants documented as internal assertions signal either invalid input
/// data that slipped past validation or a bug; they never occur on the
/// shipped fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a subspace: {0}")]
    NotSubspace(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Parse(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("algebra is not finite dimensional: new path classes at length {0}")]
    NotFiniteDimensional(usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("vertex subset contains every vertex; the quotient is the zero ring")]
    FullSubset,
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("radical is not nilpotent")]
    RadicalNotNilpotent,

    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("projective cover lift failed: {0}")]
    LiftFailure(String),

    #[error("decomposition stuck after {0} candidate endomorphisms")]
    DecompositionStuck(usize),

    #[error("tau-rigidity criteria disagree: {0}")]
    CriterionMismatch(String),
    #[error("mutation failed: {0}")]
    MutationFailed(String),
    #[error("not a semibrick: {0}")]
    NotASemibrick(String),
    #[error("no support tau-tilting pair matches the semibrick")]
    NoMatch,
    #[error("{0} support tau-tilting pairs match the semibrick")]
    AmbiguousMatch(usize),

    #[error("canonical map j_! -> j_* is not well defined: {0}")]
    ThetaNotWellDefined(String),
    #[error("glued set is not a semibrick: {0}")]
    GluingNotSemibrick(String),
    #[error("exchange graph is incomplete")]
    IncompleteGraph,
}

pub type Result<T> = std::result::Result<T, Error>;
