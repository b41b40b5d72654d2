use serde::Serialize;

use crate::error::{Error, Result};

/// Asymptotic Kolmogorov tail `Q(t) = 2 Σ (−1)^{k−1} e^{−2k²t²}`.
pub fn kolmogorov_sf(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t < 0.2 {
        // Q(t) = 1 − √(2π)/t Σ e^{−(2k−1)²π²/(8t²)}, negligible sum here.
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=200 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * t * t).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-12 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn sorted_probs<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<Vec<f64>> {
    if data.is_empty() {
        return Err(Error::Dataset("goodness-of-fit statistic of an empty sample".into()));
    }
    let mut xs = data.to_vec();
    xs.sort_by(f64::total_cmp);
    Ok(xs.into_iter().map(cdf).collect())
}

/// Kolmogorov–Smirnov distance and asymptotic p-value.
pub fn ks_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<(f64, f64)> {
    let z = sorted_probs(data, cdf)?;
    let w = z.len() as f64;
    let d = z
        .iter()
        .enumerate()
        .map(|(i, &f)| ((i as f64 + 1.0) / w - f).max(f - i as f64 / w))
        .fold(0.0, f64::max);
    Ok((d, kolmogorov_sf(w.sqrt() * d)))
}

fn check_open(data: &[f64], z: &[f64]) -> Result<()> {
    let mut xs = data.to_vec();
    xs.sort_by(f64::total_cmp);
    if let Some(i) = z.iter().position(|&f| !(f > 0.0 && f < 1.0)) {
        return Err(Error::domain(format!(
            "fitted cdf is {} at observation {}; statistic undefined",
            z[i], xs[i]
        )));
    }
    Ok(())
}

/// Anderson–Darling `A`.
pub fn ad_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<f64> {
    let z = sorted_probs(data, cdf)?;
    check_open(data, &z)?;
    let w = z.len();
    let s: f64 = (0..w)
        .map(|i| (2 * i + 1) as f64 * (z[i].ln() + (-z[w - 1 - i]).ln_1p()))
        .sum();
    Ok(-(w as f64) - s / w as f64)
}

/// Cramér–von Mises `W`.
pub fn cvm_statistic<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<f64> {
    let z = sorted_probs(data, cdf)?;
    check_open(data, &z)?;
    let w = z.len() as f64;
    let s: f64 = z
        .iter()
        .enumerate()
        .map(|(i, &f)| (f - (2.0 * i as f64 + 1.0) / (2.0 * w)).powi(2))
        .sum();
    Ok(1.0 / (12.0 * w) + s)
}

/// Small-sample multipliers: `A* = A(1 + 0.75/w + 2.25/w²)`.
pub fn modified_ad(a: f64, w: usize) -> f64 {
    let w = w as f64;
    a * (1.0 + 0.75 / w + 2.25 / (w * w))
}

/// `W* = W(1 + 0.5/w)`
pub fn modified_cvm(cvm: f64, w: usize) -> f64 {
    cvm * (1.0 + 0.5 / w as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdfVariant {
    #[default]
    Plain,
    Modified,
}
