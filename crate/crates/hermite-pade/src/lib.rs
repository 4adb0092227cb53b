//! Hermite-Padé polynomials of type I for a tuple of m+1 formal power
//! series about z = 0, computed by a three-term row recurrence, together
//! with an independent linear-system oracle and a verification layer.
//!
//! The pipeline has two phases. The series phase repeatedly transforms the
//! truncated tuple, harvesting one batch of ratio coefficients per level.
//! The row phase feeds those coefficients into three-term recurrences for
//! the rows of a polynomial matrix; the last row at level n, reversed, is a
//! vector of Hermite-Padé polynomials whose residual vanishes to order n+1
//! and whose degree bounds are a fixed function of n. For m = 1 the same
//! machinery produces classical Padé approximants and the partial quotients
//! of a C-fraction.
//!
//! Everything is generic over the coefficient field: exact rationals of
//! arbitrary precision, or `f64` with an explicit zero tolerance.

pub mod error;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod series;
pub mod verify;
pub mod viskovatov;

pub use error::{Error, Result};
pub use field::{Field, FloatField, RationalField};
pub use oracle::{hp_nullspace, proportional, KernelField, Nullspace, TangencySystem};
pub use poly::{Degree, PolyVector, Polynomial};
pub use series::{ResidualOrder, SeriesTuple, TruncatedSeries};
pub use verify::{verify, DegreeMatch, VerificationReport, VerifyOptions};
pub use viskovatov::{
    a_sequence, cfraction_coefficients, clean_termination_level, full_rows, hermite_pade,
    init_rows, initial_last_row, multiindex_for_step, pade_approximant, step_rows, CFraction,
    HPResult, MultiIndex, Pade, RowState,
};
