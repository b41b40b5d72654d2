//! A single handle over every fittable family.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::baselines::{Baseline, BaselineDistribution};
use crate::competitors::{CompetitorKind, CompetitorModel};
use crate::error::{Error, Result};
use crate::family::BpgParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Competitor(CompetitorKind),
    /// BP-G with exponential baseline
    BpE,
    /// BP-G with Weibull baseline
    BpW,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Competitor(CompetitorKind::Exp),
        ModelKind::Competitor(CompetitorKind::Me),
        ModelKind::Competitor(CompetitorKind::MoE),
        ModelKind::Competitor(CompetitorKind::KwE),
        ModelKind::Competitor(CompetitorKind::BE),
        ModelKind::BpE,
        ModelKind::BpW,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Competitor(c) => c.name(),
            Self::BpE => "bp_e",
            Self::BpW => "bp_w",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Self::Competitor(c) => c.param_names(),
            Self::BpE => &["m", "n", "lambda", "beta"],
            Self::BpW => &["m", "n", "lambda", "beta", "delta"],
        }
    }

    pub fn param_count(&self) -> usize {
        self.param_names().len()
    }

    pub fn instantiate(&self, params: &[f64]) -> Result<ModelInstance> {
        match self {
            Self::Competitor(c) => Ok(ModelInstance::Competitor(CompetitorModel::new(*c, params)?)),
            Self::BpE => Ok(ModelInstance::Bpg(BpgParams::from_vector("exp", params)?)),
            Self::BpW => Ok(ModelInstance::Bpg(BpgParams::from_vector("weibull", params)?)),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
                Error::domain(format!("unknown model '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ModelInstance {
    Competitor(CompetitorModel),
    Bpg(BpgParams),
}

impl ModelInstance {
    pub fn kind(&self) -> ModelKind {
        match self {
            Self::Competitor(c) => ModelKind::Competitor(c.kind()),
            Self::Bpg(p) => match p.baseline() {
                Baseline::Exponential(_) => ModelKind::BpE,
                Baseline::Weibull(_) => ModelKind::BpW,
            },
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            Self::Competitor(c) => c.params().to_vec(),
            Self::Bpg(p) => p.to_vector(),
        }
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        match self {
            Self::Competitor(c) => c.ln_pdf(x),
            Self::Bpg(p) => p.ln_pdf(x),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Self::Competitor(c) => c.cdf(x),
            Self::Bpg(p) => p.cdf(x),
        }
    }

    pub fn sf(&self, x: f64) -> f64 {
        match self {
            Self::Competitor(c) => c.sf(x),
            Self::Bpg(p) => p.sf(x),
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        match self {
            Self::Competitor(c) => c.quantile(u),
            Self::Bpg(p) => p.quantile(u),
        }
    }

    /// Lower end of the support (both shipped baselines live on `[0, ∞)`).
    pub fn support_min(&self) -> f64 {
        match self {
            Self::Competitor(_) => 0.0,
            Self::Bpg(p) => p.baseline().quantile(0.0).unwrap_or(0.0),
        }
    }
}
