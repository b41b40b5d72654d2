use std::path::Path;

use bpg_core::estimation::{fit_mle, FitConfig};
use bpg_core::evaluation::{
    descriptive_stats, gof_report, ttt_coordinates, Dataset, DatasetId, EdfVariant,
};
use bpg_core::montecarlo::{run_simulation, SimulationPlan};
use bpg_core::properties::{
    galton_moors, galton_moors_surface, moment_summary, moment_summary_quantile_space, renyi_entropy,
    EntropyRequest,
};
use bpg_core::{Baseline, BpgParams, ModelKind};
use serde_json::Value;

use crate::args::*;
use crate::error::CliError;
use crate::table::{named, num, opt_num, Table};

type Result<T> = std::result::Result<T, CliError>;

const MAX_GRID_POINTS: usize = 1_000_000;

pub fn build_params(d: &DistArgs) -> Result<BpgParams> {
    let FamilyName::Bp = d.family;
    let baseline = match (d.baseline, d.shape) {
        (BaselineName::Exp, None) => Baseline::exponential(d.beta)?,
        (BaselineName::Exp, Some(_)) => {
            return Err(CliError::Usage("--shape applies only to --baseline weibull".into()))
        }
        (BaselineName::Weibull, Some(s)) => Baseline::weibull(d.beta, s)?,
        (BaselineName::Weibull, None) => {
            return Err(CliError::Usage("--baseline weibull needs --shape".into()))
        }
    };
    Ok(BpgParams::new(d.m, d.n, d.lambda, baseline)?)
}

/// Parses `start:stop:step` into an inclusive grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let fields: Vec<&str> = spec.split(':').collect();
    if fields.len() != 3 {
        return Err(CliError::Usage(format!(
            "grid '{spec}': expected start:stop:step, found {} field(s)",
            fields.len()
        )));
    }
    let mut v = [0.0f64; 3];
    let mut offset = 0;
    for (i, f) in fields.iter().enumerate() {
        v[i] = f.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "grid '{spec}': field {} at column {} ('{f}') is not a number",
                i + 1,
                offset + 1
            ))
        })?;
        offset += f.len() + 1;
    }
    let [start, stop, step] = v;
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(CliError::Usage(format!(
            "grid '{spec}': need finite start <= stop and step > 0"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(CliError::Usage(format!("grid '{spec}' has more than {MAX_GRID_POINTS} points")));
    }
    // round to the number of decimals written in the spec
    let decimals = fields
        .iter()
        .map(|f| f.trim().split_once('.').map_or(0, |(_, d)| d.len()))
        .max()
        .unwrap_or(0);
    Ok((0..count)
        .map(|i| {
            let x = start + i as f64 * step;
            if fields.iter().any(|f| f.contains(['e', 'E'])) {
                x
            } else {
                format!("{x:.decimals$}").parse().unwrap_or(x)
            }
        })
        .collect())
}

pub fn load_dataset(spec: &str) -> Result<Dataset> {
    match spec.strip_prefix("builtin:") {
        Some(id) => Ok(Dataset::builtin(id.parse::<DatasetId>()?)?),
        None => Ok(Dataset::from_path(Path::new(spec))?),
    }
}

pub fn eval(a: &EvalArgs) -> Result<Table> {
    let p = build_params(&a.dist)?;
    let grid = parse_grid(&a.grid)?;
    let (arg, val) = match a.what {
        What::Quantile => ("u", "quantile"),
        What::Pdf => ("x", "pdf"),
        What::Cdf => ("x", "cdf"),
        What::Sf => ("x", "sf"),
        What::Hrf => ("x", "hrf"),
    };
    let mut t = Table::new(&[arg, val]);
    for x in grid {
        let y = match a.what {
            What::Pdf => p.pdf(x),
            What::Cdf => p.cdf(x),
            What::Sf => p.sf(x),
            What::Hrf => p.hrf(x),
            What::Quantile => p.quantile(x)?,
        };
        t.push(vec![num(x), num(y)]);
    }
    Ok(t)
}

fn param_cells(p: &BpgParams) -> Vec<Value> {
    p.to_vector().into_iter().map(num).collect()
}

fn param_columns(p: &BpgParams) -> Vec<&'static str> {
    p.param_names()
}

pub fn moments(a: &MomentsArgs) -> Result<Table> {
    let p = build_params(&a.dist)?;
    let mut cols = param_columns(&p);
    cols.extend(["mean", "variance", "skewness", "kurtosis", "error"]);
    let mut t = Table::new(&cols);
    let res = match a.method {
        MomentsMethod::Direct => moment_summary(&p),
        MomentsMethod::QuantileSpace => moment_summary_quantile_space(&p),
    };
    let mut row = param_cells(&p);
    match res {
        Ok(s) => row.extend([num(s.mean), num(s.variance), num(s.skewness), num(s.kurtosis), Value::Null]),
        Err(e) => row.extend([Value::Null, Value::Null, Value::Null, Value::Null, Value::String(e.to_string())]),
    }
    t.push(row);
    Ok(t)
}

pub fn entropy(a: &EntropyArgs) -> Result<Table> {
    let p = build_params(&a.dist)?;
    let mut t = Table::new(&["delta", "renyi_entropy", "error"]);
    for &d in &a.delta {
        let r = EntropyRequest::new(d, p).and_then(|req| renyi_entropy(&req));
        t.push(match r {
            Ok(v) => vec![num(d), num(v), Value::Null],
            Err(e) => vec![num(d), Value::Null, Value::String(e.to_string())],
        });
    }
    Ok(t)
}

pub fn galton(a: &GaltonArgs) -> Result<Table> {
    let p = build_params(&a.dist)?;
    let mut t = Table::new(&["m", "n", "lambda", "beta", "galton", "moors"]);
    if a.lambdas.is_empty() && a.betas.is_empty() {
        let (s, k) = galton_moors(&p)?;
        t.push(vec![num(p.m()), num(p.n()), num(p.lambda()), num(a.dist.beta), num(s), num(k)]);
        return Ok(t);
    }
    if a.dist.baseline != BaselineName::Exp {
        return Err(CliError::Usage("--lambdas/--betas sweeps need --baseline exp".into()));
    }
    let lambdas = if a.lambdas.is_empty() { vec![p.lambda()] } else { a.lambdas.clone() };
    let betas = if a.betas.is_empty() { vec![a.dist.beta] } else { a.betas.clone() };
    for sp in galton_moors_surface(p.m(), p.n(), &lambdas, &betas)? {
        t.push(vec![num(p.m()), num(p.n()), num(sp.lambda), num(sp.beta), num(sp.galton), num(sp.moors)]);
    }
    Ok(t)
}

pub fn describe(a: &DataArgs) -> Result<Table> {
    let ds = load_dataset(&a.data)?;
    let d = descriptive_stats(&ds.values)?;
    let mut t = Table::new(&[
        "dataset", "n", "min", "mean", "median", "sd", "skewness", "kurtosis", "q1", "q3", "max",
    ]);
    t.push(vec![
        Value::String(ds.id.clone()),
        Value::from(d.n),
        num(d.min),
        num(d.mean),
        num(d.median),
        num(d.sd),
        opt_num(d.skewness),
        opt_num(d.kurtosis),
        num(d.q1),
        num(d.q3),
        num(d.max),
    ]);
    Ok(t)
}

pub fn ttt(a: &DataArgs) -> Result<Table> {
    let ds = load_dataset(&a.data)?;
    let mut t = Table::new(&["i_over_n", "ttt"]);
    for (u, v) in ttt_coordinates(&ds.values)? {
        t.push(vec![num(u), num(v)]);
    }
    Ok(t)
}

const FIT_COLUMNS: [&str; 17] = [
    "model", "k", "status", "loglik", "aic", "bic", "caic", "hqic", "ad", "cvm", "ks", "ks_pvalue",
    "estimates", "std_errors", "ci_low", "ci_high", "converged",
];

/// Fits every model in turn; a failed fit becomes a flagged row. Fails as
/// a whole only when no model could be fitted.
pub fn fit(a: &FitArgs) -> Result<Table> {
    let kinds = a
        .models
        .iter()
        .filter(|m| !m.trim().is_empty())
        .map(|m| m.trim().parse::<ModelKind>().map_err(CliError::from))
        .collect::<Result<Vec<_>>>()?;
    if kinds.is_empty() {
        return Err(CliError::Usage("--models needs at least one model".into()));
    }
    let ds = load_dataset(&a.data)?;
    let config = FitConfig {
        starts: a.starts,
        seed: a.common.seed,
        ci_level: a.ci_level,
        ..FitConfig::default()
    };
    let variant = match a.variant {
        Variant::Plain => EdfVariant::Plain,
        Variant::Modified => EdfVariant::Modified,
    };
    let mut rows: Vec<(f64, Vec<Value>)> = Vec::new();
    let mut last_err = None;
    for kind in kinds {
        let outcome = fit_mle(&ds.values, kind, &config).and_then(|fit| {
            let inst = kind.instantiate(&fit.estimates)?;
            let g = gof_report(&ds.values, &inst, variant)?;
            Ok((fit, g))
        });
        match outcome {
            Ok((fit, g)) => {
                let names = &fit.param_names;
                let opt = |v: &Option<Vec<f64>>| v.as_ref().map(|v| named(names, v)).unwrap_or(Value::Null);
                let status = match &fit.information_error {
                    Some(e) => format!("ok (no standard errors: {e})"),
                    None => "ok".to_string(),
                };
                rows.push((
                    g.aic,
                    vec![
                        Value::String(kind.name().into()),
                        Value::from(g.k),
                        Value::String(status),
                        num(g.loglik),
                        num(g.aic),
                        num(g.bic),
                        num(g.caic),
                        num(g.hqic),
                        num(g.ad),
                        num(g.cvm),
                        num(g.ks),
                        num(g.ks_pvalue),
                        named(names, &fit.estimates),
                        opt(&fit.std_errors),
                        opt(&fit.ci_low),
                        opt(&fit.ci_high),
                        Value::Bool(fit.converged),
                    ],
                ));
            }
            Err(e) => {
                let mut row = vec![Value::Null; FIT_COLUMNS.len()];
                row[0] = Value::String(kind.name().into());
                row[1] = Value::from(kind.param_count());
                row[2] = Value::String(format!("failed: {e}"));
                row[16] = Value::Bool(false);
                rows.push((f64::INFINITY, row));
                last_err = Some(e);
            }
        }
    }
    if let Some(e) = last_err {
        if rows.iter().all(|(aic, _)| aic.is_infinite()) {
            return Err(e.into());
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut t = Table::new(&FIT_COLUMNS);
    for (_, r) in rows {
        t.push(r);
    }
    Ok(t)
}

/// Parses `m=..,n=..,lambda=..,beta=..[,shape=..]`.
pub fn parse_truth(spec: &str, baseline: BaselineName) -> Result<BpgParams> {
    let mut vals = std::collections::BTreeMap::new();
    for (i, item) in spec.split(',').enumerate() {
        let (k, v) = item.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("truth item {} ('{item}') is not key=value", i + 1))
        })?;
        let k = match k.trim() {
            "delta" => "shape",
            other => other,
        };
        if !["m", "n", "lambda", "beta", "shape"].contains(&k) {
            return Err(CliError::Usage(format!("truth item {} has unknown key '{k}'", i + 1)));
        }
        let v: f64 = v.trim().parse().map_err(|_| {
            CliError::Usage(format!("truth item {} ('{item}') has a non-numeric value", i + 1))
        })?;
        vals.insert(k.to_string(), v);
    }
    let get = |k: &str| {
        vals.get(k)
            .copied()
            .ok_or_else(|| CliError::Usage(format!("truth is missing '{k}'")))
    };
    let dist = DistArgs {
        family: FamilyName::Bp,
        baseline,
        m: get("m")?,
        n: get("n")?,
        lambda: get("lambda")?,
        beta: get("beta")?,
        shape: vals.get("shape").copied(),
    };
    build_params(&dist)
}

pub fn simulate(a: &SimulateArgs) -> Result<Table> {
    let truth = parse_truth(&a.truth, a.baseline)?;
    let reps = if a.full { 3000 } else { a.reps };
    let plan = SimulationPlan::new(truth, a.sizes.clone(), reps, a.common.seed);
    let report = run_simulation(&plan)?;
    let mut t = Table::new(&[
        "w", "param", "truth", "mean_est", "bias", "mse", "n_failed", "n_ok", "unreliable",
    ]);
    for r in report.rows {
        t.push(vec![
            Value::from(r.w),
            Value::String(r.param),
            num(r.truth),
            num(r.mean_est),
            num(r.bias),
            num(r.mse),
            Value::from(r.n_failed),
            Value::from(r.n_ok),
            Value::Bool(r.unreliable),
        ]);
    }
    Ok(t)
}
