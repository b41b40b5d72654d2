//! Baseline distributions `G` plugged into the Poisson-G transform.
//!
//! Both shipped baselines live on `[0, ∞)`; evaluating below the support
//! returns zero density and zero cdf rather than an error.

use serde::Serialize;

use crate::error::{Error, Result};

pub trait BaselineDistribution {
    fn name(&self) -> &'static str;
    fn param_names(&self) -> &'static [&'static str];
    fn params(&self) -> Vec<f64>;
    fn pdf(&self, x: f64) -> f64;
    fn ln_pdf(&self, x: f64) -> f64;
    fn cdf(&self, x: f64) -> f64;
    /// Survival function `1 - G(x)`, computed without cancellation.
    fn sf(&self, x: f64) -> f64;
    /// `Q_G(u)`; `u = 1` maps to `+∞`.
    fn quantile(&self, u: f64) -> Result<f64>;
    /// `Q_G(1 − s)` for a survival probability `s`.
    fn quantile_sf(&self, s: f64) -> Result<f64> {
        check_prob(s)?;
        self.quantile(1.0 - s)
    }
}

fn check_prob(u: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("probability {u} outside [0, 1]")));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// `g(x) = β e^{−βx}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Exponential {
    beta: f64,
}

impl Exponential {
    pub fn new(beta: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl BaselineDistribution for Exponential {
    fn name(&self) -> &'static str {
        "exp"
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["beta"]
    }

    fn params(&self) -> Vec<f64> {
        vec![self.beta]
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.beta * (-self.beta * x).exp()
        }
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            f64::NEG_INFINITY
        } else {
            self.beta.ln() - self.beta * x
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.beta * x).exp_m1()
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.beta * x).exp()
        }
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        check_prob(u)?;
        Ok(-(-u).ln_1p() / self.beta)
    }

    fn quantile_sf(&self, s: f64) -> Result<f64> {
        check_prob(s)?;
        Ok(-s.ln() / self.beta)
    }
}

/// `g(x) = δβ x^{δ−1} e^{−βx^δ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Weibull {
    beta: f64,
    delta: f64,
}

impl Weibull {
    pub fn new(beta: f64, delta: f64) -> Result<Self> {
        check_positive("beta", beta)?;
        check_positive("delta", delta)?;
        Ok(Self { beta, delta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

impl BaselineDistribution for Weibull {
    fn name(&self) -> &'static str {
        "weibull"
    }

    fn param_names(&self) -> &'static [&'static str] {
        &["beta", "delta"]
    }

    fn params(&self) -> Vec<f64> {
        vec![self.beta, self.delta]
    }

    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if x == 0.0 {
            return match self.delta.partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Less) => f64::INFINITY,
                Some(std::cmp::Ordering::Equal) => self.beta,
                _ => 0.0,
            };
        }
        self.ln_pdf(x).exp()
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NEG_INFINITY;
        }
        if x == 0.0 {
            return self.pdf(0.0).ln();
        }
        self.delta.ln() + self.beta.ln() + (self.delta - 1.0) * x.ln() - self.beta * x.powf(self.delta)
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.beta * x.powf(self.delta)).exp_m1()
        }
    }

    fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            (-self.beta * x.powf(self.delta)).exp()
        }
    }

    fn quantile(&self, u: f64) -> Result<f64> {
        check_prob(u)?;
        Ok((-(-u).ln_1p() / self.beta).powf(1.0 / self.delta))
    }

    fn quantile_sf(&self, s: f64) -> Result<f64> {
        check_prob(s)?;
        Ok((-s.ln() / self.beta).powf(1.0 / self.delta))
    }
}

/// Name-keyed catalog of the shipped baselines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Baseline {
    #[serde(rename = "exp")]
    Exponential(Exponential),
    Weibull(Weibull),
}

impl Baseline {
    pub const NAMES: [&'static str; 2] = ["exp", "weibull"];

    pub fn exponential(beta: f64) -> Result<Self> {
        Ok(Baseline::Exponential(Exponential::new(beta)?))
    }

    pub fn weibull(beta: f64, delta: f64) -> Result<Self> {
        Ok(Baseline::Weibull(Weibull::new(beta, delta)?))
    }

    /// Builds a baseline from its catalog name and parameter vector.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        match (name, params) {
            ("exp" | "exponential", [beta]) => Self::exponential(*beta),
            ("weibull", [beta, delta]) => Self::weibull(*beta, *delta),
            ("exp" | "exponential" | "weibull", _) => Err(Error::domain(format!(
                "baseline {name} got {} parameters",
                params.len()
            ))),
            _ => Err(Error::domain(format!(
                "unknown baseline {name:?}; known: {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    pub fn param_count_of(name: &str) -> Result<usize> {
        match name {
            "exp" | "exponential" => Ok(1),
            "weibull" => Ok(2),
            _ => Err(Error::domain(format!("unknown baseline {name:?}"))),
        }
    }

    /// Same family with a new parameter vector.
    pub fn with_params(&self, params: &[f64]) -> Result<Self> {
        Self::from_name(self.name(), params)
    }

    /// Exponential decay rate `r` of the survival function, `G̅(x) ~ e^{−r x}`.
    /// `∞` for lighter-than-exponential tails and `0` for heavier ones.
    pub fn tail_rate(&self) -> f64 {
        match self {
            Baseline::Exponential(e) => e.beta,
            Baseline::Weibull(w) => match w.delta.partial_cmp(&1.0) {
                Some(std::cmp::Ordering::Greater) => f64::INFINITY,
                Some(std::cmp::Ordering::Equal) => w.beta,
                _ => 0.0,
            },
        }
    }

    fn inner(&self) -> &dyn BaselineDistribution {
        match self {
            Baseline::Exponential(e) => e,
            Baseline::Weibull(w) => w,
        }
    }
}

impl BaselineDistribution for Baseline {
    fn name(&self) -> &'static str {
        self.inner().name()
    }
    fn param_names(&self) -> &'static [&'static str] {
        self.inner().param_names()
    }
    fn params(&self) -> Vec<f64> {
        self.inner().params()
    }
    fn pdf(&self, x: f64) -> f64 {
        self.inner().pdf(x)
    }
    fn ln_pdf(&self, x: f64) -> f64 {
        self.inner().ln_pdf(x)
    }
    fn cdf(&self, x: f64) -> f64 {
        self.inner().cdf(x)
    }
    fn sf(&self, x: f64) -> f64 {
        self.inner().sf(x)
    }
    fn quantile(&self, u: f64) -> Result<f64> {
        self.inner().quantile(u)
    }
    fn quantile_sf(&self, s: f64) -> Result<f64> {
        self.inner().quantile_sf(s)
    }
}
