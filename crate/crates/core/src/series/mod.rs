//! Exact and floating truncated series arithmetic.

pub mod halfgrid;
pub mod laurent;
pub mod rational;

pub use halfgrid::{halfgrid_arith, HalfGridOp, HalfGridSeries};
pub use laurent::LaurentSeries;
pub use rational::{series_arith, ArithOp, RationalSeries};
