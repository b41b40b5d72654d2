use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Default relative step for central second differences, `eps^{1/4}`.
pub fn default_rel_step() -> f64 {
    f64::EPSILON.powf(0.25)
}

/// Central-difference Hessian of `f` at `point`.
///
/// Step for coordinate `i` is `rel_step · max(1, |x_i|)`, shrunk to half
/// the coordinate when a positive parameter sits closer to zero than the
/// step. The result is symmetrized.
pub fn numerical_hessian<F>(f: F, point: &[f64], rel_step: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    if !(rel_step > 0.0) {
        return Err(Error::domain(format!("Hessian step must be positive, got {rel_step}")));
    }
    let k = point.len();
    let steps: Vec<f64> = point
        .iter()
        .map(|&x| {
            let mut h = rel_step * x.abs().max(1.0);
            if x > 0.0 && h >= x {
                h = 0.5 * x;
            }
            // exactly representable offset
            (x + h) - x
        })
        .collect();

    let eval = |x: &[f64]| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("objective at Hessian stencil point {x:?}")))
        }
    };

    let f0 = eval(point)?;
    let mut h = DMatrix::zeros(k, k);
    let mut x = point.to_vec();
    for i in 0..k {
        x[i] = point[i] + steps[i];
        let fp = eval(&x)?;
        x[i] = point[i] - steps[i];
        let fm = eval(&x)?;
        x[i] = point[i];
        h[(i, i)] = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);
        for j in 0..i {
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                x[i] = point[i] + si * steps[i];
                x[j] = point[j] + sj * steps[j];
                let v = eval(&x);
                x[i] = point[i];
                x[j] = point[j];
                v
            };
            let fpp = corner(1.0, 1.0)?;
            let fpm = corner(1.0, -1.0)?;
            let fmp = corner(-1.0, 1.0)?;
            let fmm = corner(-1.0, -1.0)?;
            let v = (fpp - fpm - fmp + fmm) / (4.0 * steps[i] * steps[j]);
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok((&h + h.transpose()) * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn square() {
        let h = numerical_hessian(|x| x[0] * x[0], &[3.0], default_rel_step()).unwrap();
        assert_abs_diff_eq!(h[(0, 0)], 2.0, epsilon = 1e-6);
    }

    #[test]
    fn bilinear() {
        let h = numerical_hessian(|x| x[0] * x[1], &[1.0, 1.0], default_rel_step()).unwrap();
        assert_abs_diff_eq!(h[(0, 0)], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(h[(1, 1)], 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(h[(0, 1)], 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(h[(1, 0)], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn failure_propagates() {
        let r = numerical_hessian(|x| x[0].ln(), &[1e-300], default_rel_step());
        assert!(r.is_ok());
        let r = numerical_hessian(|x| if x[0] > 1.0 { f64::NAN } else { x[0] }, &[1.0], 1e-3);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    proptest! {
        #[test]
        fn quadratic_form_recovers_matrix(
            a in prop::collection::vec(-3.0f64..3.0, 9),
            x in prop::collection::vec(-4.0f64..4.0, 3),
        ) {
            // symmetric positive definite A = B Bᵀ + I
            let b = DMatrix::from_row_slice(3, 3, &a);
            let m = &b * b.transpose() + DMatrix::identity(3, 3);
            let f = |v: &[f64]| {
                let v = nalgebra::DVector::from_row_slice(v);
                0.5 * (v.transpose() * &m * &v)[(0, 0)]
            };
            let h = numerical_hessian(f, &x, default_rel_step()).unwrap();
            let scale = m.abs().max();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((h[(i, j)] - m[(i, j)]).abs() <= 1e-6 * scale,
                        "entry ({}, {}) {} vs {}", i, j, h[(i, j)], m[(i, j)]);
                }
            }
        }
    }
}
