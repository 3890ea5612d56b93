use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field modulus {0}: need a prime 3 <= p < 2^31")]
    InvalidField(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ideal is not admissible within path length {max_len}: {detail}")]
    NotAdmissibleWithinBound { max_len: usize, detail: String },
    #[error("ill-formed relation: {0}")]
    RelationIllFormed(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("field GF({p}) too small: need p > {needed}")]
    FieldTooSmall { p: u64, needed: u64 },
    #[error("randomized decomposition exhausted its retry budget")]
    RandomizationExhausted,
    #[error("omega must be a nonzero module")]
    ZeroOmega,
    #[error("invalid cutoff: {0}")]
    InvalidCutoff(String),
    #[error("hypothesis cannot be verified within cutoff: {0}")]
    HypothesisUnverifiable(String),
    #[error("omega is not Wakamatsu tilting: {0}")]
    NotWakamatsu(String),
    #[error("module is injective")]
    IsInjective,
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("module is not simple")]
    NotSimple,
    #[error("algebra is not self-injective")]
    NotSelfInjective,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
