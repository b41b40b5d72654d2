use serde::Serialize;

use super::{bpg_breaks, expect, pg_breaks};
use crate::error::{Error, Result};
use crate::family::{pdf_coefficients, BpgParams, PoissonGParams};
use crate::numerics::{integrate_with_breaks, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    /// Raw (non-excess) kurtosis `E[(X − μ)⁴] / σ⁴`.
    pub kurtosis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    /// `∫ xˢ f(x) dx`
    Direct,
    /// `Σ μⱼ Γ_{s, j+m−1, 0}`; integer `n` only.
    PwmMixture,
    /// `∫₀¹ Q(u)ˢ du`
    QuantileSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MgfMethod {
    Direct,
    /// Mixture of exponentiated Poisson-G generating functions; integer `n` only.
    Mixture,
}

fn fine_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-14, 1e-12, 600).expect("valid constants")
}

/// `∫ e^{ln_h(x)} F^{PG}(x)^q [1 − F^{PG}(x)]^r f^{PG}(x) dx`
fn pg_weighted<H: Fn(f64) -> f64>(ln_h: H, q: f64, r: f64, pg: &PoissonGParams) -> Result<f64> {
    if !(q > -1.0 && r > -1.0) {
        return Err(Error::domain(format!("PWM exponents must exceed -1, got q = {q}, r = {r}")));
    }
    let breaks = pg_breaks(pg)?;
    let integrand = |x: f64| {
        let ln_f = pg.ln_pdf(x);
        if ln_f == f64::NEG_INFINITY {
            return 0.0;
        }
        let (ln_w, ln_wb) = pg.ln_cdf_pair(x);
        let mut e = ln_f + ln_h(x);
        if q != 0.0 {
            e += q * ln_w;
        }
        if r != 0.0 {
            e += r * ln_wb;
        }
        if e == f64::NEG_INFINITY {
            0.0
        } else {
            e.exp()
        }
    };
    Ok(integrate_with_breaks(integrand, &breaks, &fine_spec())?.value)
}

/// Probability weighted moment `Γ_{p,q,r}` of the Poisson-G law.
pub fn pwm(p: u32, q: f64, r: f64, pg: &PoissonGParams) -> Result<f64> {
    if p == 0 {
        return pg_weighted(|_| 0.0, q, r, pg);
    }
    pg_weighted(|x| p as f64 * x.ln(), q, r, pg)
}

/// `E[Xˢ]`
pub fn raw_moment(s: u32, p: &BpgParams, method: MomentMethod) -> Result<f64> {
    match method {
        MomentMethod::Direct => expect(p, |x| x.powi(s as i32), &QuadratureSpec::default()),
        MomentMethod::PwmMixture => {
            let (mu, _) = pdf_coefficients(p.m(), p.n())?;
            let pg = p.poisson_g();
            mu.iter()
                .enumerate()
                .map(|(j, &c)| Ok(c * pwm(s, j as f64 + p.m() - 1.0, 0.0, &pg)?))
                .sum()
        }
        MomentMethod::QuantileSpace => quantile_space(p, |q| q.powi(s as i32)),
    }
}

fn quantile_space<H: Fn(f64) -> f64>(p: &BpgParams, h: H) -> Result<f64> {
    let breaks = [0.0, 0.1, 0.5, 0.9, 0.99, 0.999, 1.0];
    let r = integrate_with_breaks(
        |u| p.quantile(u).map(&h).unwrap_or(f64::NAN),
        &breaks,
        &QuadratureSpec::new(1e-10, 1e-10, 1000)?,
    )?;
    Ok(r.value)
}

fn summarize(mean: f64, c2: f64, c3: f64, c4: f64) -> MomentSummary {
    MomentSummary {
        mean,
        variance: c2,
        skewness: c3 / c2.powf(1.5),
        kurtosis: c4 / (c2 * c2),
    }
}

/// Mean, variance, skewness and raw kurtosis. Central moments are
/// integrated directly about the mean; when the `x`-space quadrature
/// fails the computation is repeated in quantile space.
pub fn moment_summary(p: &BpgParams) -> Result<MomentSummary> {
    let direct = || -> Result<MomentSummary> {
        let spec = QuadratureSpec::default();
        let mean = expect(p, |x| x, &spec)?;
        let c = |k: i32| expect(p, |x| (x - mean).powi(k), &spec);
        Ok(summarize(mean, c(2)?, c(3)?, c(4)?))
    };
    match direct() {
        Err(Error::Quadrature { .. } | Error::NonFinite(_)) => moment_summary_quantile_space(p),
        other => other,
    }
}

/// [`moment_summary`] computed entirely from `∫₀¹ h(Q(u)) du`.
pub fn moment_summary_quantile_space(p: &BpgParams) -> Result<MomentSummary> {
    let mean = quantile_space(p, |q| q)?;
    let c = |k: i32| quantile_space(p, |q| (q - mean).powi(k));
    Ok(summarize(mean, c(2)?, c(3)?, c(4)?))
}

/// `E[e^{sX}]`.
///
/// The direct integral exists for `s < n·r`, with `r` the baseline tail
/// rate; the mixture terms individually need `s < r`.
pub fn mgf(s: f64, p: &BpgParams, method: MgfMethod) -> Result<f64> {
    if !s.is_finite() {
        return Err(Error::domain(format!("mgf argument must be finite, got {s}")));
    }
    let rate = p.baseline().tail_rate();
    let limit = match method {
        MgfMethod::Direct => p.n() * rate,
        MgfMethod::Mixture => rate,
    };
    if s > 0.0 && s >= limit {
        return Err(Error::domain(format!(
            "mgf diverges: s = {s} is not below the tail threshold {limit}"
        )));
    }
    match method {
        MgfMethod::Direct => {
            let breaks = bpg_breaks(p)?;
            let r = integrate_with_breaks(
                |x| {
                    let e = s * x + p.ln_pdf(x);
                    if e == f64::NEG_INFINITY {
                        0.0
                    } else {
                        e.exp()
                    }
                },
                &breaks,
                &QuadratureSpec::default(),
            )?;
            Ok(r.value)
        }
        MgfMethod::Mixture => {
            let (mu, _) = pdf_coefficients(p.m(), p.n())?;
            let pg = p.poisson_g();
            mu.iter()
                .enumerate()
                .map(|(j, &c)| Ok(c * pg_weighted(|x| s * x, j as f64 + p.m() - 1.0, 0.0, &pg)?))
                .sum()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Baseline;
    use crate::numerics::integrate;
    use approx::assert_abs_diff_eq;

    fn bpe(m: f64, n: f64, l: f64, b: f64) -> BpgParams {
        BpgParams::exponential(m, n, l, b).unwrap()
    }

    fn pg(l: f64, b: f64) -> PoissonGParams {
        PoissonGParams::new(l, Baseline::exponential(b).unwrap()).unwrap()
    }

    #[test]
    fn pwm_identities() {
        let g = pg(2.0, 2.0);
        assert_abs_diff_eq!(pwm(0, 0.0, 0.0, &g).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(pwm(0, 1.0, 0.0, &g).unwrap(), 0.5, epsilon = 1e-12);
        // E[F^q (1−F)^r] = B(q+1, r+1)
        assert_abs_diff_eq!(pwm(0, 2.0, 1.0, &g).unwrap(), 1.0 / 12.0, epsilon = 1e-12);
        let mean = integrate(|x| x * g.pdf(x), 0.0, f64::INFINITY, &QuadratureSpec::default())
            .unwrap()
            .value;
        assert_abs_diff_eq!(pwm(1, 0.0, 0.0, &g).unwrap(), mean, epsilon = 1e-8);
        assert!(pwm(1, -1.5, 0.0, &g).is_err());
    }

    #[test]
    fn methods_agree() {
        let p = bpe(3.0, 2.0, 1.0, 1.0);
        for s in 1..=3 {
            let d = raw_moment(s, &p, MomentMethod::Direct).unwrap();
            let m = raw_moment(s, &p, MomentMethod::PwmMixture).unwrap();
            let q = raw_moment(s, &p, MomentMethod::QuantileSpace).unwrap();
            assert!((d - m).abs() < 1e-6 * d, "s = {s}: {d} vs {m}");
            assert!((d - q).abs() < 1e-6 * d, "s = {s}: {d} vs {q}");
        }
        assert!(raw_moment(1, &bpe(3.0, 2.5, 1.0, 1.0), MomentMethod::PwmMixture).is_err());
    }

    #[test]
    fn small_lambda_mean_is_baseline_mean() {
        let p = bpe(1.0, 1.0, 1e-6, 2.5);
        assert_abs_diff_eq!(raw_moment(1, &p, MomentMethod::Direct).unwrap(), 0.4, epsilon = 1e-4);
    }

    #[test]
    fn exponential_summary() {
        // m = n = 1, small λ: essentially Exp(β) with skewness 2, kurtosis 9.
        let s = moment_summary(&bpe(1.0, 1.0, 1e-9, 2.0)).unwrap();
        assert_abs_diff_eq!(s.mean, 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(s.variance, 0.25, epsilon = 1e-6);
        assert_abs_diff_eq!(s.skewness, 2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(s.kurtosis, 9.0, epsilon = 1e-5);
    }

    #[test]
    fn scale_equivariance() {
        let a = moment_summary(&bpe(8.0, 4.0, 5.0, 1.0)).unwrap();
        let b = moment_summary(&bpe(8.0, 4.0, 5.0, 2.0)).unwrap();
        assert_abs_diff_eq!(a.mean, 2.0 * b.mean, epsilon = 1e-10);
        assert_abs_diff_eq!(a.variance, 4.0 * b.variance, epsilon = 1e-10);
        assert_abs_diff_eq!(a.skewness, b.skewness, epsilon = 1e-8);
        assert_abs_diff_eq!(a.kurtosis, b.kurtosis, epsilon = 1e-8);
    }

    #[test]
    fn quantile_space_summary_agrees() {
        let p = bpe(2.0, 3.0, 2.0, 1.5);
        let a = moment_summary(&p).unwrap();
        let b = moment_summary_quantile_space(&p).unwrap();
        assert_abs_diff_eq!(a.mean, b.mean, epsilon = 1e-8);
        assert_abs_diff_eq!(a.variance, b.variance, epsilon = 1e-8);
        assert_abs_diff_eq!(a.skewness, b.skewness, epsilon = 1e-6);
        assert_abs_diff_eq!(a.kurtosis, b.kurtosis, epsilon = 1e-5);
    }

    #[test]
    fn mgf_properties() {
        let p = bpe(2.0, 2.0, 1.0, 2.0);
        assert_abs_diff_eq!(mgf(0.0, &p, MgfMethod::Direct).unwrap(), 1.0, epsilon = 1e-10);
        let d = mgf(0.5, &p, MgfMethod::Direct).unwrap();
        let m = mgf(0.5, &p, MgfMethod::Mixture).unwrap();
        assert!((d - m).abs() < 1e-6 * d);
        let h = 1e-4;
        let slope = (mgf(h, &p, MgfMethod::Direct).unwrap() - mgf(-h, &p, MgfMethod::Direct).unwrap()) / (2.0 * h);
        let mean = raw_moment(1, &p, MomentMethod::Direct).unwrap();
        assert_abs_diff_eq!(slope, mean, epsilon = 1e-5);
    }

    #[test]
    fn mgf_thresholds() {
        let p = bpe(2.0, 2.0, 1.0, 2.0);
        // tail of the density decays like e^{-nβx} = e^{-4x}
        assert!(mgf(3.0, &p, MgfMethod::Direct).is_ok());
        assert!(mgf(4.0, &p, MgfMethod::Direct).is_err());
        assert!(mgf(2.0, &p, MgfMethod::Mixture).is_err());
        let heavy = BpgParams::new(2.0, 2.0, 1.0, Baseline::weibull(1.0, 0.7).unwrap()).unwrap();
        assert!(mgf(0.01, &heavy, MgfMethod::Direct).is_err());
        assert!(mgf(-1.0, &heavy, MgfMethod::Direct).is_ok());
    }
}
