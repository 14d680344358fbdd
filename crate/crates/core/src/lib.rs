//! Voronoi cell volumes in bi-pointed random planar quadrangulations.
//!
//! The crate builds the exact generating functions that control the two
//! Voronoi cell volumes of a bi-pointed quadrangulation (two marked vertices
//! at graph distance 2s), evaluates the associated scaling function at
//! arbitrary precision, and derives the universal law of the finite cell
//! volume in infinitely large maps: its Laplace transform, the density
//! obtained by numerical inversion, the large/small-volume asymptotics, and
//! the escape probability of asymmetric cells.
//!
//! Modules:
//! - [`series`]: exact truncated power-series arithmetic (univariate dense,
//!   bivariate on the half-integer grid) and Laurent series over big floats.
//! - [`mapgf`]: the map generating functions x(g), R_s, X_{s,t}, F and exact
//!   coefficient extraction.
//! - [`scaling`]: the closed-form scaling function F(S,a,b), its special
//!   cases, and Laurent coefficient extraction in S.
//! - [`locallimit`]: contour integrals behind the volume-fraction law.
//! - [`celllaw`]: the Laplace transform E[exp(-sigma V)], two independent
//!   inverse-Laplace engines, asymptotics, and the tree/Levy comparison.
//! - [`asym`]: the asymmetric-cell trapping probability Pi(omega).
//! - [`verify`]: the runnable cross-check suite with machine-readable report.

pub mod asym;
pub mod celllaw;
pub mod error;
pub mod extrapolate;
pub mod locallimit;
pub mod mapgf;
pub mod quadrature;
pub mod real;
pub mod scaling;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use real::{Complex, Real};
pub use rug;
