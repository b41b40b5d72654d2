//! Exponential-type competitor families used as model-comparison
//! benchmarks: Exp, ME, MO-E, Kw-E and B-E.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{inc_beta_pair, inv_reg_inc_beta, log_beta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompetitorKind {
    /// `β e^{−βx}`
    Exp,
    /// Moment exponential, `(x/β²) e^{−x/β}`
    Me,
    /// Marshall–Olkin exponential, parameters `(α, β)`
    MoE,
    /// Kumaraswamy exponential, parameters `(m, n, β)`
    KwE,
    /// Beta exponential, parameters `(m, n, β)`
    BE,
}

impl CompetitorKind {
    pub const ALL: [CompetitorKind; 5] = [Self::Exp, Self::Me, Self::MoE, Self::KwE, Self::BE];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Exp => "exp",
            Self::Me => "me",
            Self::MoE => "mo_e",
            Self::KwE => "kw_e",
            Self::BE => "b_e",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Self::Exp | Self::Me => &["beta"],
            Self::MoE => &["alpha", "beta"],
            Self::KwE | Self::BE => &["m", "n", "beta"],
        }
    }

    pub fn param_count(&self) -> usize {
        self.param_names().len()
    }
}

impl fmt::Display for CompetitorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CompetitorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown competitor model '{s}'")))
    }
}

/// A competitor family with validated parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompetitorModel {
    kind: CompetitorKind,
    params: Vec<f64>,
    #[serde(skip)]
    ln_beta: f64,
}

impl CompetitorModel {
    pub fn new(kind: CompetitorKind, params: &[f64]) -> Result<Self> {
        if params.len() != kind.param_count() {
            return Err(Error::domain(format!(
                "{kind} takes {} parameters, got {}",
                kind.param_count(),
                params.len()
            )));
        }
        for (name, &v) in kind.param_names().iter().zip(params) {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{kind}: {name} must be positive and finite, got {v}")));
            }
        }
        let ln_beta = match kind {
            CompetitorKind::BE => log_beta(params[0], params[1])?,
            _ => 0.0,
        };
        Ok(Self {
            kind,
            params: params.to_vec(),
            ln_beta,
        })
    }

    pub fn kind(&self) -> CompetitorKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    fn beta(&self) -> f64 {
        *self.params.last().expect("every competitor has a rate")
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return f64::NEG_INFINITY;
        }
        let b = self.beta();
        let p = &self.params;
        match self.kind {
            CompetitorKind::Exp => b.ln() - b * x,
            CompetitorKind::Me => {
                if x == 0.0 {
                    return f64::NEG_INFINITY;
                }
                x.ln() - 2.0 * b.ln() - x / b
            }
            CompetitorKind::MoE => {
                let a = p[0];
                let e = (-b * x).exp();
                a.ln() + b.ln() - b * x - 2.0 * (1.0 - (1.0 - a) * e).ln()
            }
            CompetitorKind::KwE => {
                let (m, n) = (p[0], p[1]);
                // u = 1 − e^{−βx}
                let ln_u = ln_u_exp(b * x);
                let ln_1m_um = (-(m * ln_u).exp()).ln_1p();
                let t1 = if m == 1.0 { 0.0 } else { (m - 1.0) * ln_u };
                let t2 = if n == 1.0 { 0.0 } else { (n - 1.0) * ln_1m_um };
                n.ln() + m.ln() + b.ln() - b * x + t1 + t2
            }
            CompetitorKind::BE => {
                let (m, n) = (p[0], p[1]);
                let ln_u = ln_u_exp(b * x);
                let t1 = if m == 1.0 { 0.0 } else { (m - 1.0) * ln_u };
                b.ln() + t1 - n * b * x - self.ln_beta
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    /// `(F(x), 1 − F(x))`
    fn cdf_pair(&self, x: f64) -> (f64, f64) {
        if x <= 0.0 {
            return (0.0, 1.0);
        }
        let b = self.beta();
        let p = &self.params;
        match self.kind {
            CompetitorKind::Exp => (-(-b * x).exp_m1(), (-b * x).exp()),
            CompetitorKind::Me => {
                let t = x / b;
                let s = (-t).exp() * (1.0 + t);
                (1.0 - s, s)
            }
            CompetitorKind::MoE => {
                let a = p[0];
                let e = (-b * x).exp();
                let s = a * e / (1.0 - (1.0 - a) * e);
                (-(-b * x).exp_m1() / (1.0 - (1.0 - a) * e), s)
            }
            CompetitorKind::KwE => {
                let (m, n) = (p[0], p[1]);
                let um = (m * ln_u_exp(b * x)).exp();
                let s = (n * (-um).ln_1p()).exp();
                (-(n * (-um).ln_1p()).exp_m1(), s)
            }
            CompetitorKind::BE => {
                let u = -(-b * x).exp_m1();
                let ub = (-b * x).exp();
                if u <= 0.5 {
                    inc_beta_pair(u, p[0], p[1]).unwrap_or((f64::NAN, f64::NAN))
                } else {
                    inc_beta_pair(ub, p[1], p[0])
                        .map(|(a, c)| (c, a))
                        .unwrap_or((f64::NAN, f64::NAN))
                }
            }
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_pair(x).0
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.cdf_pair(x).1
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!("probability {u} outside [0, 1]")));
        }
        if u == 0.0 {
            return Ok(0.0);
        }
        if u == 1.0 {
            return Ok(f64::INFINITY);
        }
        let b = self.beta();
        let p = &self.params;
        // x from the exponential cdf value v = 1 − e^{−βx}
        let from_v = |v: f64| -(-v).ln_1p() / b;
        Ok(match self.kind {
            CompetitorKind::Exp => from_v(u),
            CompetitorKind::Me => me_quantile(u, b),
            CompetitorKind::MoE => {
                // survival s = 1 − u, then e^{−βx} = s / (α + s(1 − α))
                let a = p[0];
                let s = 1.0 - u;
                -(s / (a + s * (1.0 - a))).ln() / b
            }
            CompetitorKind::KwE => {
                let (m, n) = (p[0], p[1]);
                // v^m = 1 − (1 − u)^{1/n}
                let vm = -((-u).ln_1p() / n).exp_m1();
                from_v((vm.ln() / m).exp().clamp(0.0, 1.0))
            }
            CompetitorKind::BE => from_v(inv_reg_inc_beta(u, p[0], p[1])?),
        })
    }

    /// `Σ log f(xᵢ)`; data outside `[0, ∞)` is an error, a zero density
    /// gives `−∞`.
    pub fn loglik(&self, data: &[f64]) -> Result<f64> {
        competitor_loglik(self, data)
    }
}

/// `ln(1 − e^{−t})`, `−∞` at `t = 0`.
fn ln_u_exp(t: f64) -> f64 {
    if t <= 0.0 {
        f64::NEG_INFINITY
    } else if t < std::f64::consts::LN_2 {
        (-(-t).exp_m1()).ln()
    } else {
        (-(-t).exp()).ln_1p()
    }
}

/// Solves `ln(1 + t) − t = ln(1 − u)` for `t = x/β`.
fn me_quantile(u: f64, beta: f64) -> f64 {
    let tail = -(-u).ln_1p();
    // h is concave and decreasing, so Newton from the right of the root
    // descends monotonically onto it.
    let mut t = 2.0 * tail + 2.0;
    for _ in 0..200 {
        let h = t.ln_1p() - t + tail;
        let next = t + h * (1.0 + t) / t;
        if !(next < t) {
            break;
        }
        t = next;
    }
    t * beta
}

pub fn competitor_loglik(model: &CompetitorModel, data: &[f64]) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::Dataset("log-likelihood of an empty sample".into()));
    }
    let mut total = 0.0;
    for &x in data {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("observation {x} outside the support [0, inf)")));
        }
        total += model.ln_pdf(x);
    }
    Ok(total)
}
