use rayon::prelude::*;
use serde::Serialize;

use crate::baselines::Baseline;
use crate::error::{Error, Result};
use crate::family::BpgParams;

/// Galton skewness `S` and Moors kurtosis `K` from the octiles.
pub fn galton_moors(p: &BpgParams) -> Result<(f64, f64)> {
    let mut q = [0.0; 8];
    for (i, slot) in q.iter_mut().enumerate().skip(1) {
        *slot = p.quantile(i as f64 / 8.0)?;
    }
    let spread = q[6] - q[2];
    if !(spread > 0.0 && spread.is_finite()) {
        return Err(Error::NonFinite(format!("degenerate interquartile spread {spread}")));
    }
    let s = (q[6] - 2.0 * q[4] + q[2]) / spread;
    let k = (q[7] - q[5] + q[3] - q[1]) / spread;
    Ok((s, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShapePoint {
    pub lambda: f64,
    pub beta: f64,
    pub galton: f64,
    pub moors: f64,
}

/// `(S, K)` of BP-E over the `λ × β` grid with `m`, `n` held fixed.
pub fn galton_moors_surface(m: f64, n: f64, lambdas: &[f64], betas: &[f64]) -> Result<Vec<ShapePoint>> {
    let cells: Vec<(f64, f64)> = lambdas
        .iter()
        .flat_map(|&l| betas.iter().map(move |&b| (l, b)))
        .collect();
    cells
        .par_iter()
        .map(|&(lambda, beta)| {
            let p = BpgParams::new(m, n, lambda, Baseline::exponential(beta)?)?;
            let (galton, moors) = galton_moors(&p)?;
            Ok(ShapePoint {
                lambda,
                beta,
                galton,
                moors,
            })
        })
        .collect()
}
