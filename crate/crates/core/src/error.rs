use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("input lattice is not saturated (torsion in quotient)")]
    NotSaturated,

    #[error("element {0} is not in the semigroup")]
    NotInSemigroup(String),

    #[error("complement finiteness inconclusive at k_max = {0}")]
    Inconclusive(u32),

    #[error("complement of the ideal is infinite")]
    InfiniteComplement,

    #[error("c-equation violated: {0}")]
    CEquation(String),

    #[error("morphism chain mismatch: target of the first map is not the source of the second")]
    ChainMismatch,

    #[error("lattice map is not compatible with the fans: no target cone contains the image of cone `{0}`")]
    FanIncompatible(String),

    #[error("lattice map is not compatible with the decorations at cone `{cone}`: pullback {pullback} is not divisible")]
    DecorationIncompatible { cone: String, pullback: String },

    #[error("`{face}` is not a face of `{cone}`")]
    NotAFace { face: String, cone: String },

    #[error("unknown cone `{0}`")]
    UnknownCone(String),

    #[error("empty decoration at cone `{0}`")]
    EmptyDecoration(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid decorations: {0}")]
    InvalidDecorations(String),

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("witness decomposition not found for {0} within the search cap")]
    WitnessNotFound(String),

    #[error("fiber product may not exist when both odd scalars vanish")]
    FiberProductUnsupported,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
