use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::family::BpgParams;
use crate::model::ModelInstance;

fn check_data(data: &[f64]) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Dataset("log-likelihood of an empty sample".into()));
    }
    if let Some(x) = data.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::domain(format!("observation {x} outside the support [0, inf)")));
    }
    Ok(())
}

/// BP-G log-likelihood in expanded form:
///
/// ```text
/// ℓ = w log λ + Σ log g − λ Σ G + (m−1) Σ log(1 − e^{−λG})
///     + (n−1) Σ log(e^{−λG} − e^{−λ}) − w log B(m,n) − w(m+n−1) log(1 − e^{−λ})
/// ```
///
/// A degenerate term yields `−∞`.
pub fn bpg_loglik(data: &[f64], p: &BpgParams) -> Result<f64> {
    check_data(data)?;
    let w = data.len() as f64;
    let (m, n, l) = (p.m(), p.n(), p.lambda());
    let g = p.baseline();
    let (mut s_lng, mut s_g, mut s_a, mut s_b) = (0.0, 0.0, 0.0, 0.0);
    for &x in data {
        let gc = g.cdf(x);
        s_lng += g.ln_pdf(x);
        s_g += gc;
        s_a += (-(-l * gc).exp_m1()).ln();
        // e^{−λG} − e^{−λ} = e^{−λG}(1 − e^{−λ(1−G)})
        s_b += -l * gc + (-(-l * g.sf(x)).exp_m1()).ln();
    }
    let term = |c: f64, s: f64| if c == 0.0 { 0.0 } else { c * s };
    let v = w * l.ln() + s_lng - l * s_g + term(m - 1.0, s_a) + term(n - 1.0, s_b)
        - w * p.ln_beta_mn()
        - w * (m + n - 1.0) * (-(-l).exp_m1()).ln();
    Ok(if v.is_nan() { f64::NEG_INFINITY } else { v })
}

/// `Σ log f(xᵢ)` for any model.
pub fn loglik(data: &[f64], model: &ModelInstance) -> Result<f64> {
    check_data(data)?;
    match model {
        ModelInstance::Bpg(p) => bpg_loglik(data, p),
        ModelInstance::Competitor(c) => c.loglik(data),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Baseline;
    use crate::numerics::RandomStream;
    use approx::assert_abs_diff_eq;

    #[test]
    fn single_point_reduction() {
        let p = BpgParams::exponential(1.0, 1.0, 2.0, 1.5).unwrap();
        let l = bpg_loglik(&[0.8], &p).unwrap();
        assert_abs_diff_eq!(l, p.poisson_g().pdf(0.8).ln(), epsilon = 1e-13);
    }

    #[test]
    fn expanded_equals_factored() {
        let mut s = RandomStream::new(3, 1);
        for i in 0..20 {
            let m = s.uniform(0.3, 8.0);
            let n = s.uniform(0.3, 8.0);
            let l = s.uniform(0.1, 6.0);
            let b = s.uniform(0.3, 4.0);
            let base = if i % 2 == 0 {
                Baseline::exponential(b).unwrap()
            } else {
                Baseline::weibull(b, s.uniform(0.5, 3.0)).unwrap()
            };
            let p = BpgParams::new(m, n, l, base).unwrap();
            let data: Vec<f64> = (0..30).map(|_| s.uniform(0.01, 4.0)).collect();
            let direct: f64 = data.iter().map(|&x| p.ln_pdf(x)).sum();
            let expanded = bpg_loglik(&data, &p).unwrap();
            assert!((direct - expanded).abs() < 1e-10 * direct.abs().max(1.0), "{direct} vs {expanded}");
        }
    }

    #[test]
    fn support_errors() {
        let p = BpgParams::exponential(1.0, 1.0, 2.0, 1.5).unwrap();
        assert!(bpg_loglik(&[1.0, -0.1], &p).is_err());
        assert!(bpg_loglik(&[], &p).is_err());
    }
}
