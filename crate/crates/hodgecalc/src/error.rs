use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("classes live on different spaces: {0} vs {1}")]
    SpaceMismatch(String, String),

    #[error("generator {generator} does not belong to space {space}")]
    UnknownGenerator { space: String, generator: String },

    #[error("relation has zero coefficient on its pivot {0}")]
    BadRelation(String),

    #[error("target is not in the span of the basis")]
    NotInSpan,

    #[error("unknown class {0}")]
    UnknownClass(String),

    #[error("unknown divisor {0}")]
    UnknownDivisor(String),

    #[error("marked generators use different marks: {0} vs {1}")]
    MarkMismatch(char, char),

    #[error("class depends on the mark: {0}")]
    NotMarkIndependent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("exponent {exponent} exceeds bundle rank {rank}; reduce with the Chern relation first")]
    NeedsChernReduction { exponent: u32, rank: u32 },

    #[error("not a divisor of the form j*h + k*lambda - boundary: {0}")]
    NotADivisor(String),

    #[error("not a pullback from the base: {0}")]
    NotAPullback(String),

    #[error("derivation mismatch in {step}: expected {expected}, computed {computed}")]
    DerivationMismatch {
        step: String,
        expected: String,
        computed: String,
    },

    #[error("odd determinant power {0} where an even one is required")]
    ParityError(i64),

    #[error("ledger record {name}: stored {stored}, recomputed {computed}")]
    LedgerInconsistency {
        name: String,
        stored: String,
        computed: String,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
