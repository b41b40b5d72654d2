use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoCriteria {
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
}

/// AIC, BIC, corrected AIC and Hannan–Quinn for `k` parameters and `w`
/// observations.
pub fn info_criteria(loglik: f64, k: usize, w: usize) -> Result<InfoCriteria> {
    if w <= k + 1 {
        return Err(Error::domain(format!(
            "information criteria need more than k + 1 = {} observations, got {w}",
            k + 1
        )));
    }
    let (kf, wf) = (k as f64, w as f64);
    let aic = 2.0 * kf - 2.0 * loglik;
    Ok(InfoCriteria {
        aic,
        bic: kf * wf.ln() - 2.0 * loglik,
        caic: aic + 2.0 * kf * (kf + 1.0) / (wf - kf - 1.0),
        hqic: 2.0 * kf * wf.ln().ln() - 2.0 * loglik,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exponential_relief_times() {
        let l = -20.0 * (1.0 + 1.9f64.ln());
        let c = info_criteria(l, 1, 20).unwrap();
        assert_abs_diff_eq!(c.aic, 67.67, epsilon = 0.005);
        assert_abs_diff_eq!(c.bic, 68.67, epsilon = 0.005);
    }

    #[test]
    fn guinea_pig_row() {
        let c = info_criteria(-98.71, 4, 72).unwrap();
        assert_abs_diff_eq!(c.aic, 205.42, epsilon = 1e-9);
        assert_abs_diff_eq!(c.bic, 214.53, epsilon = 0.05);
    }

    #[test]
    fn degenerate_cases() {
        let c = info_criteria(0.0, 0, 10).unwrap();
        assert_eq!((c.aic, c.bic, c.caic, c.hqic), (0.0, 0.0, 0.0, 0.0));
        assert!(info_criteria(-1.0, 4, 5).is_err());
    }
}
