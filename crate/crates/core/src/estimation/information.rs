use nalgebra::{Cholesky, DMatrix};

use crate::error::{Error, Result};

/// `Î⁻¹` by Cholesky factorisation; indefinite or singular input is an error.
pub fn invert_information(observed_info: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !observed_info.is_square() {
        return Err(Error::domain("information matrix must be square"));
    }
    if observed_info.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("information matrix has non-finite entries".into()));
    }
    let sym = 0.5 * (observed_info + observed_info.transpose());
    let chol = Cholesky::new(sym).ok_or(Error::NotPositiveDefinite)?;
    let inv = chol.inverse();
    if inv.iter().any(|v| !v.is_finite()) || inv.diagonal().iter().any(|&d| d <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(inv)
}
