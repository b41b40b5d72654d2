use serde::Serialize;

use super::{bpg_breaks, pg_breaks};
use crate::error::{Error, Result};
use crate::family::BpgParams;
use crate::numerics::{binomial, integrate_with_breaks, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyRequest {
    pub delta: f64,
    pub params: BpgParams,
}

impl EntropyRequest {
    pub fn new(delta: f64, params: BpgParams) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite() && delta != 1.0) {
            return Err(Error::domain(format!("Renyi order must be positive and not 1, got {delta}")));
        }
        Ok(Self { delta, params })
    }
}

/// `(1 − δ)⁻¹ log ∫ f(x)^δ dx`
pub fn renyi_entropy(req: &EntropyRequest) -> Result<f64> {
    let p = &req.params;
    let d = req.delta;
    let breaks = bpg_breaks(p)?;
    let r = integrate_with_breaks(
        |x| {
            let l = p.ln_pdf(x);
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                (d * l).exp()
            }
        },
        &breaks,
        &QuadratureSpec::default(),
    )?;
    Ok(r.value.ln() / (1.0 - d))
}

/// Rényi entropy through the finite binomial expansion of `(1 − F^{PG})^{δ(n−1)}`,
/// which needs `δ(n − 1)` to be a non-negative integer.
pub fn renyi_entropy_series(req: &EntropyRequest) -> Result<f64> {
    let p = &req.params;
    let d = req.delta;
    let k = d * (p.n() - 1.0);
    if k < 0.0 || (k - k.round()).abs() > 1e-12 {
        return Err(Error::domain(format!(
            "series form needs delta*(n-1) to be a non-negative integer, got {k}"
        )));
    }
    let k = k.round();
    let pg = p.poisson_g();
    let breaks = pg_breaks(&pg)?;
    let spec = QuadratureSpec::new(1e-14, 1e-12, 600)?;
    let scale = (-d * p.ln_beta_mn()).exp();
    let mut total = 0.0;
    for i in 0..=(k as usize) {
        let zeta = scale * binomial(k, i) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let power = i as f64 + d * (p.m() - 1.0);
        let r = integrate_with_breaks(
            |x| {
                let lf = pg.ln_pdf(x);
                if lf == f64::NEG_INFINITY {
                    return 0.0;
                }
                let (ln_w, _) = pg.ln_cdf_pair(x);
                let e = d * lf + if power == 0.0 { 0.0 } else { power * ln_w };
                if e == f64::NEG_INFINITY {
                    0.0
                } else {
                    e.exp()
                }
            },
            &breaks,
            &spec,
        )?;
        total += zeta * r.value;
    }
    Ok(total.ln() / (1.0 - d))
}

/// `−∫ f log f`
pub fn shannon_entropy(p: &BpgParams) -> Result<f64> {
    let breaks = bpg_breaks(p)?;
    let r = integrate_with_breaks(
        |x| {
            let l = p.ln_pdf(x);
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                -l * l.exp()
            }
        },
        &breaks,
        &QuadratureSpec::default(),
    )?;
    Ok(r.value)
}
