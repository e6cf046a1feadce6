//! Exact computation and cross-verification of one- and two-loop means of the
//! Laguerre, generalized Laguerre and Gaussian random-matrix ensembles.
//!
//! Three independent routes produce the same numbers:
//!
//! * [`residue`]: replica contour integrals `f_{A,B}(u)` evaluated as exact
//!   residues over the field of rational functions in `u`;
//! * [`recursion`]: Harer–Zagier type recursions (Gaussian, Do–Norbury,
//!   `v_k` coefficients and the eight-term generalized `k = 1` relation);
//! * [`wick`]: brute-force Wick pairing enumeration, symbolic in `N`.
//!
//! [`spectral`] holds the change-of-variable series that link the recursion
//! tables to closed forms. Everything is exact; no floating point is used.

pub mod exact;
pub mod recursion;
pub mod report;
pub mod residue;
pub mod spectral;
pub mod wick;

pub use exact::{Rational, RationalFunction, TruncSeries, UniPoly};
pub use report::{CheckRecord, Report, Status};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    Inexact(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pole of order {order} at the expansion point")]
    PoleAtExpansionPoint { order: usize },
    #[error("degree {degree} exceeds the enumeration limit {limit}")]
    DegreeOverLimit { degree: usize, limit: usize },
    #[error("exponent N^{exponent} lies outside the genus grading")]
    OffGrading { exponent: i64 },
    #[error("non-integer entry {value} at ({row}, {col})")]
    NonInteger { row: i64, col: i64, value: String },
    #[error("constraint {constraint} violated at genus {genus}: {detail}")]
    ConstraintViolation { genus: usize, constraint: String, detail: String },
    #[error("non-negative power x^{exponent} does not cancel (coefficient {value})")]
    NonCancellingPower { exponent: i64, value: String },
    #[error("product coefficient is zero")]
    ZeroProductCoefficient,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
