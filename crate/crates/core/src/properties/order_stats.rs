use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{pdf_coefficients, BpgParams};
use crate::numerics::{binomial, ln_gamma};

fn check_ranks(u: usize, g: usize) -> Result<()> {
    if u == 0 || u > g {
        return Err(Error::domain(format!("order statistic rank must satisfy 1 <= u <= g, got u = {u}, g = {g}")));
    }
    Ok(())
}

fn ln_rank_constant(u: usize, g: usize) -> f64 {
    ln_gamma(g as f64 + 1.0) - ln_gamma(u as f64) - ln_gamma((g - u) as f64 + 1.0)
}

/// Density of the `u`-th order statistic in a sample of `g`,
/// `g!/[(u−1)!(g−u)!] f F^{u−1} (1 − F)^{g−u}`, evaluated in log space.
pub fn orderstat_pdf(x: f64, u: usize, g: usize, p: &BpgParams) -> Result<f64> {
    check_ranks(u, g)?;
    let lf = p.ln_pdf(x);
    if lf == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let (a, b) = ((u - 1) as f64, (g - u) as f64);
    let mut e = ln_rank_constant(u, g) + lf;
    if a > 0.0 {
        e += a * p.cdf(x).ln();
    }
    if b > 0.0 {
        e += b * p.sf(x).ln();
    }
    Ok(e.exp())
}

/// The same density as the alternating sum
/// `Σⱼ (−1)ʲ C(g−u, j) f F^{j+u−1}` times the rank constant.
pub fn orderstat_pdf_alternating(x: f64, u: usize, g: usize, p: &BpgParams) -> Result<f64> {
    check_ranks(u, g)?;
    let f = p.pdf(x);
    let big_f = p.cdf(x);
    let k = ln_rank_constant(u, g).exp();
    let s: f64 = (0..=g - u)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial((g - u) as f64, j) * big_f.powi((j + u - 1) as i32)
        })
        .sum();
    Ok(k * f * s)
}

/// Coefficients of `h(w)^α` from those of `h(w) = Σ aₖ wᵏ` (`a₀ ≠ 0`):
/// `d₀ = a₀^α`, `dₖ = (k a₀)⁻¹ Σ_{c=1}^{k} [c(α+1) − k] a_c d_{k−c}`.
pub fn power_series_power(a: &[f64], alpha: f64, terms: usize) -> Result<Vec<f64>> {
    let a0 = *a
        .first()
        .ok_or_else(|| Error::domain("power series needs at least one coefficient"))?;
    if a0 == 0.0 {
        return Err(Error::domain("power series with zero constant term cannot be raised to a real power"));
    }
    let mut d = Vec::with_capacity(terms + 1);
    d.push(a0.powf(alpha));
    for k in 1..=terms {
        let kf = k as f64;
        let s: f64 = (1..=k.min(a.len() - 1))
            .map(|c| (c as f64 * (alpha + 1.0) - kf) * a[c] * d[k - c])
            .sum();
        d.push(s / (kf * a0));
    }
    Ok(d)
}

/// Power-series representation of the order-statistic density in
/// `w = F^{PG}(x)`.
///
/// Writes `F^{BP-G} = w^m H(w)` with
/// `H(w) = Σ_p (−1)^p C(n−1, p) w^p / [B(m,n)(m+p)]`, so that every power
/// `F^{BP-G}(x)^{j+u−1}` becomes `w^{m(j+u−1)} Σₖ d_{j+u−1,k} wᵏ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderStatSeries {
    pub u: usize,
    pub g: usize,
    pub truncation: usize,
    /// `μₗ`, `l = 0..n−1`
    pub mu: Vec<f64>,
    /// coefficients of `H`
    pub h: Vec<f64>,
    /// `d[j][k]`: coefficients of `H^{j+u−1}`, `j = 0..g−u`
    pub d: Vec<Vec<f64>>,
    m: f64,
}

impl OrderStatSeries {
    /// Requires integer `n` (as the density expansion does).
    pub fn new(u: usize, g: usize, p: &BpgParams, truncation: usize) -> Result<Self> {
        check_ranks(u, g)?;
        let (m, n) = (p.m(), p.n());
        let (mu, _) = pdf_coefficients(m, n)?;
        let inv_b = (-p.ln_beta_mn()).exp();
        let h: Vec<f64> = (0..=truncation)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * binomial(n - 1.0, k) * inv_b / (m + k as f64)
            })
            .collect();
        let d = (0..=g - u)
            .map(|j| power_series_power(&h, (j + u - 1) as f64, truncation))
            .collect::<Result<_>>()?;
        Ok(Self {
            u,
            g,
            truncation,
            mu,
            h,
            d,
            m,
        })
    }

    /// Truncated series value at `x`.
    pub fn pdf(&self, x: f64, p: &BpgParams) -> f64 {
        let pg = p.poisson_g();
        let f = pg.pdf(x);
        let w = pg.cdf(x);
        if f == 0.0 || w <= 0.0 {
            return 0.0;
        }
        let k = ln_rank_constant(self.u, self.g).exp();
        let mix: f64 = self
            .mu
            .iter()
            .enumerate()
            .map(|(l, &c)| c * w.powf(l as f64 + self.m - 1.0))
            .sum();
        let outer: f64 = self
            .d
            .iter()
            .enumerate()
            .map(|(j, dj)| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                let a = (j + self.u - 1) as f64;
                let poly = dj.iter().rev().fold(0.0, |acc, &c| acc * w + c);
                sign * binomial((self.g - self.u) as f64, j) * w.powf(self.m * a) * poly
            })
            .sum();
        k * f * mix * outer
    }
}

/// Convenience wrapper around [`OrderStatSeries`].
pub fn orderstat_series_pdf(x: f64, u: usize, g: usize, p: &BpgParams, truncation: usize) -> Result<f64> {
    Ok(OrderStatSeries::new(u, g, p, truncation)?.pdf(x, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_with_breaks, QuadratureSpec, RandomStream};
    use approx::assert_abs_diff_eq;

    fn bpe(m: f64, n: f64, l: f64, b: f64) -> BpgParams {
        BpgParams::exponential(m, n, l, b).unwrap()
    }

    #[test]
    fn single_observation() {
        let p = bpe(2.0, 2.0, 1.0, 1.0);
        for x in [0.1, 0.7, 2.5] {
            assert_abs_diff_eq!(orderstat_pdf(x, 1, 1, &p).unwrap(), p.pdf(x), epsilon = 1e-14);
        }
        assert!(orderstat_pdf(1.0, 0, 3, &p).is_err());
        assert!(orderstat_pdf(1.0, 4, 3, &p).is_err());
    }

    #[test]
    fn normalized() {
        let p = bpe(2.0, 2.0, 1.0, 1.0);
        let breaks = super::super::bpg_breaks(&p).unwrap();
        let r = integrate_with_breaks(|x| orderstat_pdf(x, 2, 5, &p).unwrap(), &breaks, &QuadratureSpec::default())
            .unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-7);
    }

    #[test]
    fn alternating_sum_agrees() {
        let p = bpe(1.5, 2.5, 2.0, 0.8);
        for x in [0.2, 1.0, 3.0] {
            for u in 1..=4 {
                let a = orderstat_pdf(x, u, 4, &p).unwrap();
                let b = orderstat_pdf_alternating(x, u, 4, &p).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn uniform_rank_mixture() {
        let p = bpe(3.0, 0.7, 1.3, 2.0);
        let g = 6;
        for x in [0.05, 0.4, 1.5] {
            let s: f64 = (1..=g).map(|u| orderstat_pdf(x, u, g, &p).unwrap()).sum();
            assert_abs_diff_eq!(s / g as f64, p.pdf(x), epsilon = 1e-8);
        }
    }

    #[test]
    fn power_series_power_examples() {
        // (1 + w)^2 = 1 + 2w + w²
        let d = power_series_power(&[1.0, 1.0], 2.0, 4).unwrap();
        for (a, b) in d.iter().zip([1.0, 2.0, 1.0, 0.0, 0.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }
        // (1 − w)^{−1} = Σ wᵏ
        let d = power_series_power(&[1.0, -1.0], -1.0, 6).unwrap();
        assert!(d.iter().all(|&c| (c - 1.0).abs() < 1e-15));
        assert!(power_series_power(&[0.0, 1.0], 2.0, 3).is_err());
    }

    #[test]
    fn series_exact_for_integer_shapes() {
        let p = bpe(2.0, 3.0, 1.5, 1.0);
        for x in [0.1, 0.5, 1.0, 3.0] {
            let s = orderstat_series_pdf(x, 2, 4, &p, 10).unwrap();
            assert_abs_diff_eq!(s, orderstat_pdf(x, 2, 4, &p).unwrap(), epsilon = 1e-10);
        }
    }

    #[test]
    fn series_truncation_converges() {
        let p = bpe(1.7, 3.0, 1.2, 1.0);
        let x = 0.8;
        let exact = orderstat_pdf(x, 2, 3, &p).unwrap();
        let errs: Vec<f64> = [2, 4, 8, 16]
            .iter()
            .map(|&t| (orderstat_series_pdf(x, 2, 3, &p, t).unwrap() - exact).abs())
            .collect();
        assert!(errs[3] < 1e-12, "{errs:?}");
        let q = bpe(1.7, 3.0, 1.2, 1.0);
        let s = OrderStatSeries::new(1, 3, &q, 2).unwrap();
        assert_eq!(s.d.len(), 3);
        assert!(OrderStatSeries::new(1, 3, &bpe(1.7, 2.5, 1.2, 1.0), 5).is_err());
    }

    #[test]
    fn simulated_order_statistics() {
        let p = bpe(2.0, 2.0, 1.0, 1.0);
        let (u, g, reps) = (2, 5, 100_000);
        let mut stream = RandomStream::new(7, 0);
        let mut xs: Vec<f64> = (0..reps)
            .map(|_| {
                let mut s = p.sample(g, &mut stream).unwrap();
                s.sort_by(f64::total_cmp);
                s[u - 1]
            })
            .collect();
        xs.sort_by(f64::total_cmp);
        let grid: Vec<f64> = (1..100).map(|i| xs[i * reps / 100]).collect();
        let spec = QuadratureSpec::default();
        let mut cdf = 0.0;
        let mut last = 0.0;
        let mut dist: f64 = 0.0;
        for &x in &grid {
            cdf += crate::numerics::integrate(|t| orderstat_pdf(t, u, g, &p).unwrap(), last, x, &spec)
                .unwrap()
                .value;
            last = x;
            let emp = xs.partition_point(|&v| v <= x) as f64 / reps as f64;
            dist = dist.max((emp - cdf).abs());
        }
        assert!(dist < 0.01, "KS distance {dist}");
    }
}
