//! Special functions, quadrature, numerical differentiation and random
//! streams shared by the rest of the crate.

mod hessian;
mod quadrature;
mod rng;
mod special;

pub use hessian::{default_rel_step, numerical_hessian};
pub use quadrature::{integrate, integrate_with_breaks, Integral, QuadratureSpec};
pub use rng::RandomStream;
pub use special::{
    beta_quantile_series, beta_series_coefficient, binomial, inv_reg_inc_beta, ln_gamma,
    log_beta, reg_inc_beta, reg_inc_beta_complement, std_normal_quantile,
};
pub(crate) use special::inc_beta_pair;
