//! Repeated sample–fit–summarise experiments for BP-E estimators.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::{fit_mle, FitConfig};
use crate::family::BpgParams;
use crate::model::ModelKind;
use crate::numerics::RandomStream;

/// Share of failed fits above which a cell is flagged unreliable.
pub const UNRELIABLE_FAILURE_SHARE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationPlan {
    pub true_params: BpgParams,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    pub seed: u64,
    pub fit_config: FitConfig,
}

impl SimulationPlan {
    /// Plan with a light fitting configuration: the truth as first start
    /// plus two random starts.
    pub fn new(true_params: BpgParams, sample_sizes: Vec<usize>, replications: usize, seed: u64) -> Self {
        let fit_config = FitConfig {
            starts: 2,
            max_iters: 2000,
            x_tol: 1e-6,
            f_tol: 1e-10,
            seed,
            initial: Some(true_params.to_vector()),
            ..FitConfig::default()
        };
        Self {
            true_params,
            sample_sizes,
            replications,
            seed,
            fit_config,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::domain("replications must be at least 1"));
        }
        if self.sample_sizes.is_empty() || self.sample_sizes.iter().any(|&w| w < 5) {
            return Err(Error::domain("sample sizes must be given and each at least 5"));
        }
        Ok(())
    }

    fn model(&self) -> ModelKind {
        match self.true_params.baseline() {
            crate::baselines::Baseline::Exponential(_) => ModelKind::BpE,
            crate::baselines::Baseline::Weibull(_) => ModelKind::BpW,
        }
    }
}

/// One `(w, parameter)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationRow {
    pub w: usize,
    pub param: String,
    pub truth: f64,
    pub mean_est: f64,
    pub bias: f64,
    pub mse: f64,
    pub n_failed: usize,
    pub n_ok: usize,
    pub unreliable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub replications: usize,
    pub seed: u64,
    pub rows: Vec<SimulationRow>,
}

impl SimulationReport {
    pub fn row(&self, w: usize, param: &str) -> Option<&SimulationRow> {
        self.rows.iter().find(|r| r.w == w && r.param == param)
    }
}

/// Replication `r` draws its sample from stream `r`, so every sample size
/// sees the same underlying uniforms and results do not depend on the
/// number of worker threads.
pub fn run_simulation(plan: &SimulationPlan) -> Result<SimulationReport> {
    plan.validate()?;
    let truth = plan.true_params.to_vector();
    let names = plan.true_params.param_names();
    let kind = plan.model();
    let mut rows = Vec::new();
    for &w in &plan.sample_sizes {
        let fits: Vec<Option<Vec<f64>>> = (0..plan.replications)
            .into_par_iter()
            .map(|r| {
                let mut stream = RandomStream::new(plan.seed, r as u64);
                let sample = plan.true_params.sample(w, &mut stream).ok()?;
                let fit = fit_mle(&sample, kind, &plan.fit_config).ok()?;
                fit.estimates.iter().all(|v| v.is_finite()).then_some(fit.estimates)
            })
            .collect();
        let ok: Vec<&Vec<f64>> = fits.iter().flatten().collect();
        let n_failed = plan.replications - ok.len();
        let unreliable = n_failed as f64 > UNRELIABLE_FAILURE_SHARE * plan.replications as f64;
        for (j, (&name, &t)) in names.iter().zip(&truth).enumerate() {
            let (mean_est, mse) = if ok.is_empty() {
                (f64::NAN, f64::NAN)
            } else {
                let c = ok.len() as f64;
                (
                    ok.iter().map(|e| e[j]).sum::<f64>() / c,
                    ok.iter().map(|e| (e[j] - t).powi(2)).sum::<f64>() / c,
                )
            };
            rows.push(SimulationRow {
                w,
                param: name.to_string(),
                truth: t,
                mean_est,
                bias: mean_est - t,
                mse,
                n_failed,
                n_ok: ok.len(),
                unreliable,
            });
        }
    }
    Ok(SimulationReport {
        replications: plan.replications,
        seed: plan.seed,
        rows,
    })
}

/// Long-format `(w, param, bias, mse)` curve over a grid of sample sizes.
pub fn bias_mse_curve(
    truth: &BpgParams,
    w_grid: &[usize],
    replications: usize,
    seed: u64,
) -> Result<SimulationReport> {
    run_simulation(&SimulationPlan::new(*truth, w_grid.to_vec(), replications, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truth() -> BpgParams {
        BpgParams::exponential(2.0, 1.8, 1.5, 2.0).unwrap()
    }

    #[test]
    fn single_replication_is_single_fit_error() {
        let plan = SimulationPlan::new(truth(), vec![50], 1, 5);
        let rep = run_simulation(&plan).unwrap();
        let mut stream = RandomStream::new(5, 0);
        let sample = truth().sample(50, &mut stream).unwrap();
        let fit = fit_mle(&sample, ModelKind::BpE, &plan.fit_config).unwrap();
        for (j, name) in ["m", "n", "lambda", "beta"].iter().enumerate() {
            let row = rep.row(50, name).unwrap();
            assert_eq!(row.mean_est, fit.estimates[j]);
            assert_eq!(row.bias, fit.estimates[j] - row.truth);
            assert_eq!(row.mse, row.bias * row.bias);
            assert_eq!(row.n_ok + row.n_failed, 1);
        }
    }

    #[test]
    fn deterministic_and_complete() {
        let a = bias_mse_curve(&truth(), &[20], 6, 3).unwrap();
        let b = bias_mse_curve(&truth(), &[20], 6, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 4);
        for r in &a.rows {
            assert_eq!(r.n_ok + r.n_failed, 6);
            assert!(r.mse >= r.bias * r.bias - 1e-12);
        }
    }

    #[test]
    fn invalid_plans() {
        assert!(run_simulation(&SimulationPlan::new(truth(), vec![4], 3, 0)).is_err());
        assert!(run_simulation(&SimulationPlan::new(truth(), vec![50], 0, 0)).is_err());
    }
}
