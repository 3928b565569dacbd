//! Special functions at extended precision.

mod bernoulli;
mod cot;
mod digamma;
mod gamma_const;
mod quad;
mod zeta;

pub use bernoulli::{bernoulli, BernoulliCache, MAX_INDEX as BERNOULLI_MAX_INDEX};
pub use cot::{cot_complex, pi_cot_pi, Y0 as COT_EXP_THRESHOLD};
pub use digamma::{digamma, digamma_asymptotic, digamma_oracle, digamma_real, shift_threshold};
pub use gamma_const::euler_gamma;
pub use quad::{integrate_exp_weight, j_remainder, Integrand, QuadratureResult, QuadratureSpec, TailEnvelope};
pub use zeta::{dirichlet_beta, dirichlet_beta_with, zeta_deriv, zeta_deriv_with, zeta_int, zeta_tail};
