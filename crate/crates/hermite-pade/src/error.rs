use thiserror::Error;

/// Errors shared by the series, recurrence, oracle and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input coefficient rows do not all have the same length.
    #[error("input rows have different lengths")]
    MixedLengths,
    /// Fewer than two rows, or a row with no coefficients.
    #[error("need at least two non-empty coefficient rows")]
    EmptyInput,
    /// A start permutation was requested after the tuple had already been stepped.
    #[error("start permutation must be applied before any step")]
    PermAfterStart,
    /// Start permutation index out of range.
    #[error("start permutation {s} out of range for m = {m}")]
    InvalidStart { s: usize, m: usize },
    /// General position is violated: the constant term that would become the
    /// denominator of `a[slot]` vanished at this level.
    #[error("degenerate tuple at level {level}: slot {} has zero constant term, a[{slot}] is undefined", slot - 1)]
    Degenerate { level: usize, slot: usize },
    /// Not enough trustworthy coefficients remain.
    #[error("series exhausted: valid order {available} is below the required {required}")]
    Exhausted { required: usize, available: usize },
    /// A polynomial vector has the wrong number of entries for the tuple.
    #[error("polynomial vector has {got} entries, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    /// A coefficient list has the wrong number of entries.
    #[error("coefficient list has {got} entries, expected {expected}")]
    Arity { expected: usize, got: usize },
    /// The requested step has no multiindex interpretation.
    #[error("step {n} has no multiindex: need n >= m - 1 = {min}")]
    TooEarly { n: usize, min: usize },
    /// The tuple is too short to state all tangency conditions.
    #[error("not enough coefficients to state all tangency conditions: need {required}, have {available}")]
    InsufficientOrder { required: usize, available: usize },
    /// A nonzero residual coefficient appeared below the predicted order.
    #[error("residual order {observed} fell short of the predicted {predicted}")]
    ResidualShortfall { predicted: usize, observed: usize },
    /// A result was verified against a tuple it does not belong to.
    #[error("result does not correspond to the given tuple")]
    MismatchedInput,
}

impl Error {
    /// Stable machine-readable code, used by the CLI for messages and exit status.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MixedLengths => "MIXED_LENGTHS",
            Error::EmptyInput => "EMPTY_INPUT",
            Error::PermAfterStart => "PERM_AFTER_START",
            Error::InvalidStart { .. } => "INVALID_START",
            Error::Degenerate { .. } => "DEGENERATE",
            Error::Exhausted { .. } => "EXHAUSTED",
            Error::LengthMismatch { .. } => "LENGTH_MISMATCH",
            Error::Arity { .. } => "ARITY",
            Error::TooEarly { .. } => "TOO_EARLY",
            Error::InsufficientOrder { .. } => "INSUFFICIENT_ORDER",
            Error::ResidualShortfall { .. } => "RESIDUAL_SHORTFALL",
            Error::MismatchedInput => "MISMATCHED_INPUT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
