use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Descriptive {
    pub n: usize,
    pub min: f64,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation (divisor `n − 1`).
    pub sd: f64,
    /// `g₁((n−1)/n)^{3/2}`; absent for a constant sample.
    pub skewness: Option<f64>,
    /// Excess kurtosis `(g₂ + 3)(1 − 1/n)² − 3`; absent for a constant sample.
    pub kurtosis: Option<f64>,
    pub q1: f64,
    pub q3: f64,
    pub max: f64,
}

/// Linear-interpolation sample quantile (`x₍₁₎ + h` rule on `(n−1)p`).
pub fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn descriptive_stats(data: &[f64]) -> Result<Descriptive> {
    if data.is_empty() {
        return Err(Error::Dataset("descriptive statistics of an empty sample".into()));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Dataset("descriptive statistics need finite observations".into()));
    }
    let mut xs = data.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let moment = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / nf;
    let (m2, m3, m4) = (moment(2), moment(3), moment(4));
    let sd = if n > 1 { (m2 * nf / (nf - 1.0)).sqrt() } else { 0.0 };
    let (skewness, kurtosis) = if m2 > 0.0 {
        let g1 = m3 / m2.powf(1.5);
        let g2 = m4 / (m2 * m2) - 3.0;
        let r = (nf - 1.0) / nf;
        (Some(g1 * r.powf(1.5)), Some((g2 + 3.0) * r * r - 3.0))
    } else {
        (None, None)
    };
    Ok(Descriptive {
        n,
        min: xs[0],
        mean,
        median: quantile_type7(&xs, 0.5),
        sd,
        skewness,
        kurtosis,
        q1: quantile_type7(&xs, 0.25),
        q3: quantile_type7(&xs, 0.75),
        max: xs[n - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_sample() {
        let d = descriptive_stats(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((d.n, d.min, d.max), (4, 1.0, 4.0));
        assert_abs_diff_eq!(d.mean, 2.5);
        assert_abs_diff_eq!(d.median, 2.5);
        assert_abs_diff_eq!(d.q1, 1.75);
        assert_abs_diff_eq!(d.q3, 3.25);
        assert_abs_diff_eq!(d.sd, (5.0f64 / 3.0).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(d.skewness.unwrap(), 0.0, epsilon = 1e-15);
        // m4/m2² = 1.64 → (1.64)(0.75)² − 3
        assert_abs_diff_eq!(d.kurtosis.unwrap(), 1.64 * 0.5625 - 3.0, epsilon = 1e-12);
    }

    #[test]
    fn constant_sample() {
        let d = descriptive_stats(&[2.0; 5]).unwrap();
        assert_eq!(d.sd, 0.0);
        assert!(d.skewness.is_none() && d.kurtosis.is_none());
    }
}
