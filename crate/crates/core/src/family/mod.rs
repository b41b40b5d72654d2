//! Poisson-G and beta Poisson-G distributions.

mod beta_poisson_g;
mod poisson_g;
mod series;

pub use beta_poisson_g::{bpe_quantile_closed_form, BpgParams};
pub use poisson_g::PoissonGParams;
pub use series::{pdf_coefficients, psi_coefficients, series_cdf, series_pdf, SeriesCoefficients};
