//! Exact computation of the difference between standard and reduced genus-one
//! Gromov-Witten invariants, and of the mirror formula for genus-one
//! invariants of degree-`n` Calabi-Yau hypersurfaces in `P^{n-1}`.
//!
//! Everything is exact: scalars are [`rational::Rational`] and series are
//! truncated with explicit orders.

pub mod cli;
pub mod diff;
pub mod mirror;
pub mod rational;
pub mod regression;
pub mod selftest;
pub mod series;
pub mod taut;
pub mod theta;
