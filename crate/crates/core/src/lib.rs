//! Beta Poisson-G (BP-G) distribution family.
//!
//! The BP-G cdf composes the regularized incomplete beta ratio with the
//! Poisson-G transform of a baseline cdf `G`:
//!
//! ```text
//! F(x) = I_{W(x)}(m, n),   W(x) = (1 - exp(-λ G(x))) / (1 - exp(-λ))
//! ```
//!
//! The crate provides the density machinery ([`family`]), analytical
//! properties computed by quadrature ([`properties`]), benchmark
//! competitor families ([`competitors`]), maximum-likelihood fitting with
//! observed-information standard errors ([`estimation`]), goodness-of-fit
//! and descriptive tooling for the embedded lifetime datasets
//! ([`evaluation`]) and a reproducible Monte-Carlo harness
//! ([`montecarlo`]).

pub mod baselines;
pub mod competitors;
pub mod error;
pub mod estimation;
pub mod evaluation;
pub mod family;
pub mod model;
pub mod montecarlo;
pub mod numerics;
pub mod properties;

pub use baselines::{Baseline, BaselineDistribution, Exponential, Weibull};
pub use error::{Error, Result};
pub use family::{BpgParams, PoissonGParams};
pub use competitors::{CompetitorKind, CompetitorModel};
pub use model::{ModelInstance, ModelKind};
