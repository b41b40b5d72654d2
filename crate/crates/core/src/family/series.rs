//! Power-series expansions of the BP-G density and cdf in `F^{PG}`.

use serde::Serialize;

use super::beta_poisson_g::BpgParams;
use crate::error::{Error, Result};
use crate::numerics::binomial;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoefficients {
    /// `μⱼ` in `f = f^{PG} Σ μⱼ F^{PG (j+m−1)}`
    pub mu_j: Vec<f64>,
    /// `μ′ⱼ = μⱼ / (j + m)`
    pub mu_prime_j: Vec<f64>,
    /// `ψᵣ` in `F = Σ ψᵣ F^{PG r}`
    pub psi_r: Vec<f64>,
    pub truncation: usize,
}

impl SeriesCoefficients {
    /// Density coefficients up to index `truncation` (they vanish past
    /// `n − 1` for integer `n`) and `ψ₀..ψ_truncation` with both inner
    /// sums cut at `truncation`.
    pub fn new(m: f64, n: f64, truncation: usize) -> Result<Self> {
        check(m, n)?;
        let (mu_j, mu_prime_j) = mu_pair(m, n, truncation);
        Ok(Self {
            mu_j,
            mu_prime_j,
            psi_r: psi_coefficients(m, n, truncation, truncation)?,
            truncation,
        })
    }
}

fn check(m: f64, n: f64) -> Result<()> {
    if !(m > 0.0 && n > 0.0 && m.is_finite() && n.is_finite()) {
        return Err(Error::domain(format!("shapes must be positive, got ({m}, {n})")));
    }
    Ok(())
}

fn integer_n(n: f64) -> Result<usize> {
    if n.fract() != 0.0 || n < 1.0 || n > 1e6 {
        return Err(Error::domain(format!(
            "finite density expansion needs a positive integer n, got {n}"
        )));
    }
    Ok(n as usize)
}

fn mu_pair(m: f64, n: f64, last: usize) -> (Vec<f64>, Vec<f64>) {
    let ln_b = crate::numerics::log_beta(m, n).expect("shapes checked");
    let inv_b = (-ln_b).exp();
    let prime: Vec<f64> = (0..=last)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(n - 1.0, j) * inv_b / (j as f64 + m)
        })
        .collect();
    let mu = prime
        .iter()
        .enumerate()
        .map(|(j, &c)| c * (j as f64 + m))
        .collect();
    (mu, prime)
}

/// `(μ₀..μ_{n−1}, μ′₀..μ′_{n−1})` for integer `n`.
pub fn pdf_coefficients(m: f64, n: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check(m, n)?;
    let k = integer_n(n)?;
    Ok(mu_pair(m, n, k - 1))
}

/// `ψ₀..ψ_{q_max}` with `p ≤ p_max` and `r ≤ q ≤ q_max`.
pub fn psi_coefficients(m: f64, n: f64, p_max: usize, q_max: usize) -> Result<Vec<f64>> {
    check(m, n)?;
    let inv_b = (-crate::numerics::log_beta(m, n)?).exp();
    let mut psi = vec![0.0; q_max + 1];
    for p in 0..=p_max {
        let c_p = binomial(n - 1.0, p);
        if c_p == 0.0 {
            continue;
        }
        let a = m + p as f64;
        let outer = c_p * inv_b / a;
        for q in 0..=q_max {
            let c_q = binomial(a, q);
            if c_q == 0.0 {
                break;
            }
            let mut c_r = 1.0;
            for (r, slot) in psi.iter_mut().enumerate().take(q + 1) {
                let sign = if (p + q + r) % 2 == 0 { 1.0 } else { -1.0 };
                *slot += sign * outer * c_q * c_r;
                c_r *= (q - r) as f64 / (r as f64 + 1.0);
            }
        }
    }
    Ok(psi)
}

/// Finite mixture form of the density; requires integer `n`. Only the
/// first `min(terms, n)` summands are used.
pub fn series_pdf(x: f64, p: &BpgParams, terms: usize) -> Result<f64> {
    let (mu, _) = pdf_coefficients(p.m(), p.n())?;
    let pg = p.poisson_g();
    let f = pg.pdf(x);
    if f == 0.0 {
        return Ok(0.0);
    }
    let big_f = pg.cdf(x);
    Ok(f * mu
        .iter()
        .take(terms)
        .enumerate()
        .map(|(j, &c)| c * big_f.powf(j as f64 + p.m() - 1.0))
        .sum::<f64>())
}

/// Partial sum `Σ_{r ≤ q_max} ψᵣ F^{PG r}` with the same `p`, `q` cut-offs
/// as [`psi_coefficients`], summed over `r` first as
/// `Σ_p c_p Σ_q C(m+p, q) (W − 1)^q`. Summing the `ψᵣ` directly cancels
/// terms of size `2^q C(m+p, q)`.
pub fn series_cdf(x: f64, p: &BpgParams, p_max: usize, q_max: usize) -> Result<f64> {
    let (m, n) = (p.m(), p.n());
    check(m, n)?;
    let w = p.poisson_g().cdf(x);
    if w <= 0.0 {
        return Ok(0.0);
    }
    let inv_b = (-crate::numerics::log_beta(m, n)?).exp();
    let d = w - 1.0;
    let mut total = 0.0;
    for k in 0..=p_max {
        let c_p = binomial(n - 1.0, k);
        if c_p == 0.0 {
            continue;
        }
        let a = m + k as f64;
        let mut inner = 0.0;
        let mut term = 1.0;
        for q in 0..=q_max {
            inner += term;
            term *= (a - q as f64) / (q as f64 + 1.0) * d;
            if term == 0.0 {
                break;
            }
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * c_p * inv_b / a * inner;
    }
    Ok(total)
}
