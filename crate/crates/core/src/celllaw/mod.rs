//! The universal law of the finite Voronoi cell volume: Laplace transform,
//! numerical inversion, asymptotics, and the tree/Levy comparison laws.

pub mod asympt;
pub mod esigma;
pub mod ilt;

pub use asympt::{asympt_flat, asympt_tail, levy_asympt, saddle_sigma_star, tree_p, LevyAsympt};
pub use esigma::{e_sigma, e_sigma_complex, tree_e, tree_e_complex};
pub use ilt::{density_integral, ilt, p_v, truncated_mean, IltConfig, IltMethod};
