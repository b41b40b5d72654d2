use rayon::prelude::*;
use serde::Serialize;

use super::information::invert_information;
use super::loglik::loglik;
use super::optimizer::{minimize, Minimum, SimplexOptions};
use crate::error::{Error, Result};
use crate::model::ModelKind;
use crate::numerics::{default_rel_step, numerical_hessian, std_normal_quantile, RandomStream};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitConfig {
    pub starts: usize,
    pub max_iters: usize,
    pub x_tol: f64,
    pub f_tol: f64,
    pub ci_level: f64,
    /// Per-parameter `(low, high)`; `None` uses `(1e-8, 1e8)` throughout.
    pub param_bounds: Option<Vec<(f64, f64)>>,
    pub seed: u64,
    /// Extra start placed ahead of the random ones.
    pub initial: Option<Vec<f64>>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            starts: 20,
            max_iters: 4000,
            x_tol: 1e-9,
            f_tol: 1e-12,
            ci_level: 0.95,
            param_bounds: None,
            seed: 0,
            initial: None,
        }
    }
}

impl FitConfig {
    pub fn validate(&self, k: usize) -> Result<()> {
        if self.starts == 0 && self.initial.is_none() {
            return Err(Error::domain("at least one start is required"));
        }
        if !(self.x_tol > 0.0 && self.f_tol > 0.0) || self.max_iters == 0 {
            return Err(Error::domain("optimizer tolerances and iteration cap must be positive"));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::domain(format!("ci_level must lie in (0, 1), got {}", self.ci_level)));
        }
        if let Some(b) = &self.param_bounds {
            if b.len() != k || b.iter().any(|&(lo, hi)| !(lo > 0.0 && lo < hi)) {
                return Err(Error::domain(
                    "param_bounds must give 0 < low < high for every parameter".to_string(),
                ));
            }
        }
        if let Some(s) = &self.initial {
            if s.len() != k || s.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::domain("initial point must have one positive value per parameter"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: String,
    pub param_names: Vec<String>,
    pub estimates: Vec<f64>,
    /// Absent when the observed information is not positive definite.
    pub std_errors: Option<Vec<f64>>,
    pub ci_low: Option<Vec<f64>>,
    pub ci_high: Option<Vec<f64>>,
    pub ci_level: f64,
    pub loglik: f64,
    pub observed_info: Option<Vec<Vec<f64>>>,
    pub information_error: Option<String>,
    pub converged: bool,
    pub n_obs: usize,
    pub starts_succeeded: usize,
}

impl FitResult {
    pub fn param_count(&self) -> usize {
        self.estimates.len()
    }
}

/// Log-uniform start box for a named parameter given the sample mean.
fn start_box(name: &str, kind: ModelKind, mean: f64) -> (f64, f64) {
    match name {
        "m" | "n" => (0.2, 20.0),
        "lambda" => (0.05, 10.0),
        "alpha" => (0.1, 50.0),
        "delta" => (0.3, 5.0),
        // ME's β is a scale, every other β a rate.
        "beta" if kind == ModelKind::Competitor(crate::competitors::CompetitorKind::Me) => (0.05 * mean, 5.0 * mean),
        _ => (0.1 / mean, 10.0 / mean),
    }
}

/// A deterministic, roughly centred start.
fn central_start(names: &[&str], kind: ModelKind, mean: f64) -> Vec<f64> {
    names
        .iter()
        .map(|&n| match n {
            "m" | "n" | "alpha" | "delta" => 1.0,
            "lambda" => 0.5,
            "beta" if kind == ModelKind::Competitor(crate::competitors::CompetitorKind::Me) => 0.5 * mean,
            _ => 1.0 / mean,
        })
        .collect()
}

/// Maximum-likelihood fit by multi-start simplex search over
/// log-parameters, followed by observed information, standard errors
/// and Wald intervals.
pub fn fit_mle(data: &[f64], kind: ModelKind, config: &FitConfig) -> Result<FitResult> {
    let names = kind.param_names();
    let k = names.len();
    config.validate(k)?;
    if data.len() <= k + 1 {
        return Err(Error::Fit(format!(
            "{kind} has {k} parameters and needs more than {} observations, got {}",
            k + 1,
            data.len()
        )));
    }
    if let Some(x) = data.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(Error::Dataset(format!("observation {x} is not a positive finite number")));
    }
    let mean = data.iter().sum::<f64>() / data.len() as f64;
    let bounds: Vec<(f64, f64)> = config
        .param_bounds
        .clone()
        .unwrap_or_else(|| vec![(1e-8, 1e8); k]);
    let log_bounds: Vec<(f64, f64)> = bounds.iter().map(|&(lo, hi)| (lo.ln(), hi.ln())).collect();

    let objective = |theta: &[f64]| -> f64 {
        if theta.iter().zip(&log_bounds).any(|(t, (lo, hi))| !(t >= lo && t <= hi)) {
            return f64::INFINITY;
        }
        let params: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
        match kind.instantiate(&params).and_then(|m| loglik(data, &m)) {
            Ok(l) if l.is_finite() => -l,
            _ => f64::INFINITY,
        }
    };

    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(s) = &config.initial {
        starts.push(s.clone());
    }
    if config.starts > 0 {
        starts.push(central_start(names, kind, mean));
    }
    for i in 1..config.starts {
        let mut rng = RandomStream::new(config.seed, i as u64);
        starts.push(
            names
                .iter()
                .map(|n| {
                    let (lo, hi) = start_box(n, kind, mean);
                    (lo.ln() + rng.next_open01() * (hi.ln() - lo.ln())).exp()
                })
                .collect(),
        );
    }
    let opts = SimplexOptions {
        max_iters: config.max_iters,
        x_tol: config.x_tol,
        f_tol: config.f_tol,
        initial_step: 0.3,
    };
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|s| {
            let theta: Vec<f64> = s
                .iter()
                .zip(&log_bounds)
                .map(|(v, (lo, hi))| v.ln().clamp(*lo, *hi))
                .collect();
            minimize(&objective, &theta, &opts)
        })
        .collect();
    let succeeded = runs.iter().filter(|r| r.value.is_finite()).count();
    let best = select_best(&runs, config.f_tol).ok_or_else(|| {
        Error::Fit(format!("all {} starts failed to reach a finite log-likelihood for {kind}", runs.len()))
    })?;

    let estimates: Vec<f64> = best.x.iter().map(|t| t.exp()).collect();
    let ll = -best.value;
    let mut result = FitResult {
        model: kind.name().to_string(),
        param_names: names.iter().map(|s| s.to_string()).collect(),
        estimates: estimates.clone(),
        std_errors: None,
        ci_low: None,
        ci_high: None,
        ci_level: config.ci_level,
        loglik: ll,
        observed_info: None,
        information_error: None,
        converged: best.converged,
        n_obs: data.len(),
        starts_succeeded: succeeded,
    };

    let neg_ll = |rho: &[f64]| -> f64 {
        match kind.instantiate(rho).and_then(|m| loglik(data, &m)) {
            Ok(l) => -l,
            Err(_) => f64::NAN,
        }
    };
    match numerical_hessian(neg_ll, &estimates, default_rel_step()) {
        Ok(info) => {
            result.observed_info = Some(info.row_iter().map(|r| r.iter().copied().collect()).collect());
            match invert_information(&info) {
                Ok(cov) => {
                    let z = std_normal_quantile(1.0 - (1.0 - config.ci_level) / 2.0)?;
                    let se: Vec<f64> = cov.diagonal().iter().map(|v| v.sqrt()).collect();
                    result.ci_low = Some(estimates.iter().zip(&se).map(|(e, s)| (e - z * s).max(0.0)).collect());
                    result.ci_high = Some(estimates.iter().zip(&se).map(|(e, s)| e + z * s).collect());
                    result.std_errors = Some(se);
                }
                Err(e) => result.information_error = Some(e.to_string()),
            }
        }
        Err(e) => result.information_error = Some(e.to_string()),
    }
    Ok(result)
}

/// Highest log-likelihood; runs within `f_tol` of it are tied and the one
/// with the smallest parameter norm wins.
fn select_best(runs: &[Minimum], f_tol: f64) -> Option<&Minimum> {
    let top = runs
        .iter()
        .filter(|r| r.value.is_finite())
        .min_by(|a, b| a.value.total_cmp(&b.value))?;
    let tol = f_tol * (1.0 + top.value.abs());
    let norm = |r: &Minimum| r.x.iter().map(|t| t.exp().powi(2)).sum::<f64>();
    runs.iter()
        .filter(|r| r.value.is_finite() && r.value - top.value <= tol)
        .min_by(|a, b| norm(a).total_cmp(&norm(b)).then(a.value.total_cmp(&b.value)))
}
