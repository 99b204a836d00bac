//! Exact truncated series.
//!
//! Three layers, each dense:
//!
//! * [`TPoly`]: polynomials in `t`.
//! * [`QSeries`]: power series in `q = e^t` truncated after `q^D`, with
//!   [`TPoly`] coefficients. Differentiation in `t` therefore acts on both the
//!   explicit `t` and on `q`.
//! * [`WSeries`]: polynomials in `w` truncated after `w^W`, with [`QSeries`]
//!   coefficients sharing one `D`.
//!
//! Truncation orders are fixed at construction; combining values of different
//! orders is an error rather than an implicit re-truncation.

mod qseries;
mod tpoly;
mod wseries;

pub use qseries::QSeries;
pub use tpoly::TPoly;
pub use wseries::WSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series is not a unit: constant term must be a nonzero constant, got {0}")]
    NotAUnit(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("requested w^{requested} but series is truncated at w^{order}")]
    Truncation { requested: usize, order: usize },
}

pub(crate) fn check_orders(left: usize, right: usize) -> Result<(), SeriesError> {
    if left == right {
        Ok(())
    } else {
        Err(SeriesError::OrderMismatch { left, right })
    }
}
