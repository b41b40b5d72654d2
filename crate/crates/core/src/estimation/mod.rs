//! Log-likelihood, maximum-likelihood fitting and observed information.

mod fit;
mod information;
mod loglik;
mod optimizer;

pub use fit::{fit_mle, FitConfig, FitResult};
pub use information::invert_information;
pub use loglik::{bpg_loglik, loglik};
pub use optimizer::{coordinate_polish, minimize, nelder_mead, Minimum, SimplexOptions};
