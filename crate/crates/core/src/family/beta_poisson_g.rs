use serde::Serialize;

use super::poisson_g::PoissonGParams;
use crate::baselines::{Baseline, BaselineDistribution};
use crate::error::{Error, Result};
use crate::numerics::{inc_beta_pair, inv_reg_inc_beta, log_beta, RandomStream};

/// Beta Poisson-G distribution `BP-G(m, n, λ)` over a baseline `G`.
///
/// Parameter vector order is `(m, n, λ, β…)`, with `β…` the baseline's
/// own parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BpgParams {
    m: f64,
    n: f64,
    lambda: f64,
    baseline: Baseline,
    #[serde(skip)]
    ln_beta_mn: f64,
}

impl BpgParams {
    /// `λ > 0` is required here even though the density formulas are
    /// sign-agnostic.
    pub fn new(m: f64, n: f64, lambda: f64, baseline: Baseline) -> Result<Self> {
        for (name, v) in [("m", m), ("n", n), ("lambda", lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self {
            m,
            n,
            lambda,
            baseline,
            ln_beta_mn: log_beta(m, n)?,
        })
    }

    /// BP-E convenience constructor.
    pub fn exponential(m: f64, n: f64, lambda: f64, beta: f64) -> Result<Self> {
        Self::new(m, n, lambda, Baseline::exponential(beta)?)
    }

    /// Builds from `(m, n, λ, β…)` for the named baseline.
    pub fn from_vector(baseline: &str, params: &[f64]) -> Result<Self> {
        if params.len() < 4 {
            return Err(Error::domain(format!(
                "BP-G parameter vector needs m, n, lambda and baseline parameters, got {} values",
                params.len()
            )));
        }
        Self::new(params[0], params[1], params[2], Baseline::from_name(baseline, &params[3..])?)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn baseline(&self) -> &Baseline {
        &self.baseline
    }

    pub fn ln_beta_mn(&self) -> f64 {
        self.ln_beta_mn
    }

    /// `ρ = (m, n, λ, βᵀ)ᵀ`
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = vec![self.m, self.n, self.lambda];
        v.extend(self.baseline.params());
        v
    }

    pub fn param_names(&self) -> Vec<&'static str> {
        let mut v = vec!["m", "n", "lambda"];
        v.extend_from_slice(self.baseline.param_names());
        v
    }

    /// The inner Poisson-G law sharing `λ` and the baseline.
    pub fn poisson_g(&self) -> PoissonGParams {
        PoissonGParams::new(self.lambda, self.baseline).expect("lambda validated at construction")
    }

    /// `(F^{PG}(x), 1 − F^{PG}(x))`
    pub fn pg_cdf_pair(&self, x: f64) -> (f64, f64) {
        self.poisson_g()
            .cdf_pair_from(self.baseline.cdf(x), self.baseline.sf(x))
    }

    fn cdf_sf(&self, x: f64) -> (f64, f64) {
        let (w, w_bar) = self.pg_cdf_pair(x);
        if w <= 0.0 {
            return (0.0, 1.0);
        }
        if w_bar <= 0.0 {
            return (1.0, 0.0);
        }
        // Whichever of W, 1−W is smaller carries full relative precision.
        let pair = if w <= 0.5 {
            inc_beta_pair(w, self.m, self.n)
        } else {
            inc_beta_pair(w_bar, self.n, self.m).map(|(a, b)| (b, a))
        };
        pair.unwrap_or((f64::NAN, f64::NAN))
    }

    /// `I_{W(x)}(m, n)`
    pub fn cdf(&self, x: f64) -> f64 {
        self.cdf_sf(x).0
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.cdf_sf(x).1
    }

    /// Log density, assembled term by term in log space.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let lg = self.baseline.ln_pdf(x);
        if lg == f64::NEG_INFINITY {
            return lg;
        }
        let pg = self.poisson_g();
        let g_cdf = self.baseline.cdf(x);
        let (ln_w, ln_w_bar) = pg.ln_cdf_pair_from(g_cdf, self.baseline.sf(x));
        let ln_pg = pg.ln_pdf(x);
        ln_pg + power_term(self.m - 1.0, ln_w) + power_term(self.n - 1.0, ln_w_bar) - self.ln_beta_mn
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn hrf(&self, x: f64) -> f64 {
        let s = self.sf(x);
        if s <= 0.0 {
            return f64::INFINITY;
        }
        (self.ln_pdf(x) - s.ln()).exp()
    }

    /// `Q_G[−λ⁻¹ log(1 − Q_{m,n}(u)(1 − e^{−λ}))]`; `u = 1` maps to the
    /// support supremum (`+∞` for the shipped baselines).
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
        let pg = self.poisson_g();
        if u <= 0.5 {
            let z = inv_reg_inc_beta(u, self.m, self.n)?;
            pg.quantile_from(z, 1.0 - z)
        } else {
            let z_bar = inv_reg_inc_beta(1.0 - u, self.n, self.m)?;
            pg.quantile_from(1.0 - z_bar, z_bar)
        }
    }

    /// `count` variates by inversion of uniforms drawn from `stream`.
    pub fn sample(&self, count: usize, stream: &mut RandomStream) -> Result<Vec<f64>> {
        if count == 0 {
            return Err(Error::domain("sample count must be at least 1"));
        }
        (0..count).map(|_| self.quantile(stream.next_open01())).collect()
    }
}

/// `a·ln v`, with the convention `0·ln 0 = 0`.
#[inline]
fn power_term(a: f64, ln_v: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * ln_v
    }
}

/// BP-E quantile written directly as
/// `x_p = −β⁻¹ log[1 + λ⁻¹ log(1 − Q_{m,n}(p)(1 − e^{−λ}))]`.
pub fn bpe_quantile_closed_form(p: f64, m: f64, n: f64, lambda: f64, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability {p} outside [0, 1]")));
    }
    if p <= 0.5 {
        let z = inv_reg_inc_beta(p, m, n)?;
        let inner = (z * (-lambda).exp_m1()).ln_1p() / lambda;
        return Ok(-inner.ln_1p() / beta);
    }
    // 1 + λ⁻¹ log(1 − z(1 − e^{−λ})) = λ⁻¹ log(1 + (1 − z)(e^λ − 1))
    let z_bar = inv_reg_inc_beta(1.0 - p, n, m)?;
    let outer = if lambda < 700.0 {
        (z_bar * lambda.exp_m1()).ln_1p() / lambda
    } else {
        1.0 + (z_bar + (1.0 - z_bar) * (-lambda).exp()).ln() / lambda
    };
    Ok(-outer.ln() / beta)
}
