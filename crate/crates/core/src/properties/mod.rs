//! Moments, generating function, entropy, quantile-based shape measures
//! and order-statistic densities of the BP-G family.

mod entropy;
mod moments;
mod order_stats;
mod quantile_measures;

pub use entropy::{renyi_entropy, renyi_entropy_series, shannon_entropy, EntropyRequest};
pub use moments::{
    mgf, moment_summary, moment_summary_quantile_space, pwm, raw_moment, MgfMethod,
    MomentMethod, MomentSummary,
};
pub use order_stats::{
    orderstat_pdf, orderstat_pdf_alternating, orderstat_series_pdf, power_series_power,
    OrderStatSeries,
};
pub use quantile_measures::{galton_moors, galton_moors_surface, ShapePoint};

use crate::error::Result;
use crate::family::{BpgParams, PoissonGParams};
use crate::numerics::{integrate_with_breaks, QuadratureSpec};

const BREAK_PROBS: [f64; 7] = [1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-9];

/// Break points for integrating against a distribution on `(0, ∞)`.
fn quantile_breaks<Q: Fn(f64) -> Result<f64>>(quantile: Q) -> Result<Vec<f64>> {
    let mut b = vec![0.0];
    for u in BREAK_PROBS {
        let q = quantile(u)?;
        if q.is_finite() && q > *b.last().unwrap() {
            b.push(q);
        }
    }
    b.push(f64::INFINITY);
    Ok(b)
}

pub(crate) fn bpg_breaks(p: &BpgParams) -> Result<Vec<f64>> {
    quantile_breaks(|u| p.quantile(u))
}

pub(crate) fn pg_breaks(pg: &PoissonGParams) -> Result<Vec<f64>> {
    quantile_breaks(|u| pg.quantile(u))
}

/// `∫ h(x) f^{BP-G}(x) dx` over the support.
pub(crate) fn expect<H: Fn(f64) -> f64>(p: &BpgParams, h: H, spec: &QuadratureSpec) -> Result<f64> {
    let breaks = bpg_breaks(p)?;
    let r = integrate_with_breaks(
        |x| {
            let f = p.pdf(x);
            if f == 0.0 {
                0.0
            } else {
                h(x) * f
            }
        },
        &breaks,
        spec,
    )?;
    Ok(r.value)
}
