use serde::Serialize;

use crate::baselines::{Baseline, BaselineDistribution};
use crate::error::{Error, Result};

/// Poisson-G distribution with cdf `(1 − e^{−λG(x)}) / (1 − e^{−λ})`.
///
/// Any `λ ≠ 0` is accepted; every expression below is written through
/// `expm1` ratios that stay positive for either sign of `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonGParams {
    lambda: f64,
    baseline: Baseline,
}

impl PoissonGParams {
    pub fn new(lambda: f64, baseline: Baseline) -> Result<Self> {
        if !(lambda.is_finite() && lambda != 0.0) {
            return Err(Error::domain(format!("lambda must be finite and nonzero, got {lambda}")));
        }
        Ok(Self { lambda, baseline })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn baseline(&self) -> &Baseline {
        &self.baseline
    }

    /// `ln[λ / (1 − e^{−λ})]`
    fn ln_norm(&self) -> f64 {
        (self.lambda / -(-self.lambda).exp_m1()).ln()
    }

    /// `(F, 1 − F)` of the Poisson-G law at a baseline point with cdf `g_cdf`
    /// and survival `g_sf`.
    pub(crate) fn cdf_pair_from(&self, g_cdf: f64, g_sf: f64) -> (f64, f64) {
        let l = self.lambda;
        let denom = (-l).exp_m1();
        let f = ((-l * g_cdf).exp_m1() / denom).clamp(0.0, 1.0);
        let s = ((-l * g_cdf).exp() * (-l * g_sf).exp_m1() / denom).clamp(0.0, 1.0);
        (f, s)
    }

    /// `(ln F, ln(1 − F))`, each without forming the other.
    pub(crate) fn ln_cdf_pair_from(&self, g_cdf: f64, g_sf: f64) -> (f64, f64) {
        let l = self.lambda;
        let ln_denom = (-(-l).exp_m1()).abs().ln();
        let ln_f = (-l * g_cdf).exp_m1().abs().ln() - ln_denom;
        let ln_s = -l * g_cdf + (-l * g_sf).exp_m1().abs().ln() - ln_denom;
        (ln_f, ln_s)
    }

    /// `(ln F(x), ln(1 − F(x)))`
    pub(crate) fn ln_cdf_pair(&self, x: f64) -> (f64, f64) {
        self.ln_cdf_pair_from(self.baseline.cdf(x), self.baseline.sf(x))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_pair_from(self.baseline.cdf(x), self.baseline.sf(x)).0
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.cdf_pair_from(self.baseline.cdf(x), self.baseline.sf(x)).1
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let lg = self.baseline.ln_pdf(x);
        if lg == f64::NEG_INFINITY {
            return lg;
        }
        self.ln_norm() + lg - self.lambda * self.baseline.cdf(x)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    /// `λ g e^{−λG} / (e^{−λG} − e^{−λ})`
    pub fn hrf(&self, x: f64) -> f64 {
        let g = self.baseline.pdf(x);
        if g == 0.0 {
            return 0.0;
        }
        let l = self.lambda;
        l * g / -(-l * self.baseline.sf(x)).exp_m1()
    }

    /// Inverse cdf; `u = 1` gives `+∞` for the shipped baselines.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!("probability {u} outside [0, 1]")));
        }
        self.quantile_from(u, 1.0 - u)
    }

    /// Baseline quantile at `G = W⁻¹(w)`, given `w` and `1 − w`; the upper
    /// half goes through `1 − G` so that tail quantiles keep their precision.
    pub(crate) fn quantile_from(&self, w: f64, w_bar: f64) -> Result<f64> {
        let l = self.lambda;
        if w <= 0.5 {
            let g = (-(w * (-l).exp_m1()).ln_1p() / l).clamp(0.0, 1.0);
            return self.baseline.quantile(g);
        }
        // 1 − G = λ⁻¹ log(1 + (1 − w)(e^λ − 1))
        let g_bar = if l < 700.0 {
            (w_bar * l.exp_m1()).ln_1p() / l
        } else {
            1.0 + (w_bar + w * (-l).exp()).ln() / l
        };
        self.baseline.quantile_sf(g_bar.clamp(0.0, 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate, QuadratureSpec};
    use approx::assert_abs_diff_eq;

    fn exp(beta: f64) -> Baseline {
        Baseline::exponential(beta).unwrap()
    }

    #[test]
    fn cdf_examples() {
        let p = PoissonGParams::new(1.0, exp(1.0)).unwrap();
        assert_eq!(p.cdf(0.0), 0.0);
        assert_abs_diff_eq!(p.cdf(1e6), 1.0, epsilon = 1e-15);
        let g = 1.0 - (-1.0f64).exp();
        let expected = (1.0 - (-g).exp()) / (1.0 - (-1.0f64).exp());
        assert_abs_diff_eq!(p.cdf(1.0), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(p.cdf(1.0), 0.74125, epsilon = 1e-4);
    }

    #[test]
    fn rejects_zero_lambda() {
        assert!(PoissonGParams::new(0.0, exp(1.0)).is_err());
        assert!(PoissonGParams::new(f64::NAN, exp(1.0)).is_err());
        assert!(PoissonGParams::new(-2.0, exp(1.0)).is_ok());
    }

    #[test]
    fn normalized() {
        for lambda in [2.0, -1.5] {
            let p = PoissonGParams::new(lambda, exp(2.0)).unwrap();
            let r = integrate(|x| p.pdf(x), 0.0, f64::INFINITY, &QuadratureSpec::default()).unwrap();
            assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn hazard_definition() {
        for lambda in [2.0, -0.7] {
            let p = PoissonGParams::new(lambda, exp(2.0)).unwrap();
            for i in 0..40 {
                let x = i as f64 * 0.1;
                assert_abs_diff_eq!(p.hrf(x) * (1.0 - p.cdf(x)), p.pdf(x), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn small_lambda_limit() {
        let b = exp(1.3);
        let p = PoissonGParams::new(1e-8, b).unwrap();
        for i in 0..30 {
            let x = i as f64 * 0.2;
            assert_abs_diff_eq!(p.cdf(x), b.cdf(x), epsilon = 1e-6);
        }
    }

    #[test]
    fn quantile_round_trip() {
        for lambda in [0.5, 3.0, -2.0] {
            let p = PoissonGParams::new(lambda, exp(1.5)).unwrap();
            for i in 1..100 {
                let u = i as f64 / 100.0;
                assert_abs_diff_eq!(p.cdf(p.quantile(u).unwrap()), u, epsilon = 1e-12);
            }
        }
    }
}
