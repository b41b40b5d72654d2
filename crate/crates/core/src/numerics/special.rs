use crate::error::{Error, Result};

const CF_MAX_ITER: usize = 20_000;
const CF_EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const INV_MAX_ITER: usize = 400;

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

fn check_shapes(m: f64, n: f64) -> Result<()> {
    if !(m > 0.0 && n > 0.0 && m.is_finite() && n.is_finite()) {
        return Err(Error::domain(format!(
            "beta shapes must be positive and finite, got ({m}, {n})"
        )));
    }
    Ok(())
}

/// `ln B(m, n)`.
pub fn log_beta(m: f64, n: f64) -> Result<f64> {
    check_shapes(m, n)?;
    Ok(ln_gamma(m) + ln_gamma(n) - ln_gamma(m + n))
}

pub(crate) fn ln_beta_unchecked(m: f64, n: f64) -> f64 {
    ln_gamma(m) + ln_gamma(n) - ln_gamma(m + n)
}

/// Generalized binomial coefficient `C(a, k)` for real `a`.
pub fn binomial(a: f64, k: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c *= (a - i as f64) / (i as f64 + 1.0);
    }
    c
}

/// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_cf(x: f64, a: f64, b: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for k in 1..=CF_MAX_ITER {
        let k = k as f64;
        let k2 = 2.0 * k;
        let aa = k * (b - k) * x / ((qam + k2) * (a + k2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + k) * (qab + k) * x / ((a + k2) * (qap + k2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        what: "incomplete beta continued fraction",
        iterations: CF_MAX_ITER,
    })
}

/// Returns `(I_x(a, b), 1 - I_x(a, b))`, each computed without
/// subtractive cancellation on its own side of the distribution.
pub(crate) fn inc_beta_pair(x: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    if x <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if x >= 1.0 {
        return Ok((1.0, 0.0));
    }
    let ln_front = a * x.ln() + b * (-x).ln_1p() - ln_beta_unchecked(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        let lower = (ln_front.exp() * beta_cf(x, a, b)? / a).clamp(0.0, 1.0);
        Ok((lower, 1.0 - lower))
    } else {
        let upper = (ln_front.exp() * beta_cf(1.0 - x, b, a)? / b).clamp(0.0, 1.0);
        Ok((1.0 - upper, upper))
    }
}

/// Regularized incomplete beta ratio `I_x(m, n)`.
pub fn reg_inc_beta(x: f64, m: f64, n: f64) -> Result<f64> {
    check_shapes(m, n)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("incomplete beta argument {x} outside [0, 1]")));
    }
    Ok(inc_beta_pair(x, m, n)?.0)
}

/// `1 - I_x(m, n)` evaluated directly.
pub fn reg_inc_beta_complement(x: f64, m: f64, n: f64) -> Result<f64> {
    check_shapes(m, n)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("incomplete beta argument {x} outside [0, 1]")));
    }
    Ok(inc_beta_pair(x, m, n)?.1)
}

/// Coefficient `d_i` of the small-`u` power series of the beta quantile,
/// for `i` in `0..=4`.
pub fn beta_series_coefficient(i: usize, m: f64, n: f64) -> Result<f64> {
    let d = match i {
        0 => 0.0,
        1 => 1.0,
        2 => (n - 1.0) / (m + 1.0),
        3 => {
            (n - 1.0) * (m * m + 3.0 * m * n - m + 5.0 * n - 4.0)
                / (2.0 * (m + 1.0).powi(2) * (m + 2.0))
        }
        4 => {
            (n - 1.0)
                * (m.powi(4)
                    + (6.0 * n - 1.0) * m.powi(3)
                    + (n + 2.0) * (8.0 * n - 5.0) * m * m
                    + (33.0 * n * n - 30.0 * n + 4.0) * m
                    + n * (31.0 * n - 47.0)
                    + 18.0)
                / (3.0 * (m + 1.0).powi(3) * (m + 2.0) * (m + 3.0))
        }
        _ => {
            return Err(Error::domain(format!(
                "beta quantile series coefficients are known through d_4, requested d_{i}"
            )))
        }
    };
    Ok(d)
}

/// Truncated power series `Σ e_i u^{i/m}` for the beta quantile, with
/// `e_i = [m B(m, n)]^{i/m} d_i`. Accurate only when `u^{1/m}` is small.
pub fn beta_quantile_series(u: f64, m: f64, n: f64, terms: usize) -> Result<f64> {
    check_shapes(m, n)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("probability {u} outside [0, 1]")));
    }
    if !(1..=4).contains(&terms) {
        return Err(Error::domain(format!("series terms must be in 1..=4, got {terms}")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    let w = ((u.ln() + m.ln() + ln_beta_unchecked(m, n)) / m).exp();
    let mut z = 0.0;
    let mut wi = 1.0;
    for i in 1..=terms {
        wi *= w;
        z += beta_series_coefficient(i, m, n)? * wi;
    }
    Ok(z)
}

fn initial_guess(u: f64, a: f64, b: f64) -> f64 {
    if let Ok(z) = beta_quantile_series(u, a, b, 4) {
        let w = ((u.ln() + a.ln() + ln_beta_unchecked(a, b)) / a).exp();
        if w < 0.2 && z > 0.0 && z < 1.0 {
            return z;
        }
    }
    if a >= 1.0 && b >= 1.0 {
        let pp = if u < 0.5 { u } else { 1.0 - u };
        let t = (-2.0 * pp.ln()).sqrt();
        let mut x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if u < 0.5 {
            x = -x;
        }
        let al = (x * x - 3.0) / 6.0;
        let h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
        let w = x * (al + h).sqrt() / h
            - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
        a / (a + b * (2.0 * w).exp())
    } else {
        let lna = (a / (a + b)).ln();
        let lnb = (b / (a + b)).ln();
        let t = (a * lna).exp() / a;
        let v = (b * lnb).exp() / b;
        let w = t + v;
        if u < t / w {
            (a * w * u).powf(1.0 / a)
        } else {
            1.0 - (b * w * (1.0 - u)).powf(1.0 / b)
        }
    }
}

/// Inverse of the regularized incomplete beta ratio in its first argument.
///
/// Safeguarded Newton iteration inside a shrinking bracket, falling back to
/// bisection whenever the Newton step leaves the bracket.
pub fn inv_reg_inc_beta(u: f64, m: f64, n: f64) -> Result<f64> {
    check_shapes(m, n)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain(format!("probability {u} outside [0, 1]")));
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    if u == 1.0 {
        return Ok(1.0);
    }
    let ln_b = ln_beta_unchecked(m, n);
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let mut x = initial_guess(u, m, n);
    if !(x > 0.0 && x < 1.0) {
        x = 0.5;
    }
    for _ in 0..INV_MAX_ITER {
        let (lower, upper) = inc_beta_pair(x, m, n)?;
        // Residual taken from whichever tail is resolved more finely.
        let f = if u > 0.5 { (1.0 - u) - upper } else { lower - u };
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let ln_pdf = (m - 1.0) * x.ln() + (n - 1.0) * (-x).ln_1p() - ln_b;
        let step = f / ln_pdf.exp();
        let mut next = x - step;
        if !(next > lo && next < hi) || !step.is_finite() {
            next = if lo == 0.0 { 0.1 * hi } else { 0.5 * (lo + hi) };
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * next.abs() || hi - lo <= 4.0 * f64::EPSILON * hi
        {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Convergence {
        what: "inverse incomplete beta",
        iterations: INV_MAX_ITER,
    })
}

/// Standard normal quantile.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("normal quantile needs p in (0, 1), got {p}")));
    }
    Ok(std::f64::consts::SQRT_2 * statrs::function::erf::erf_inv(2.0 * p - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use crate::numerics::{integrate, QuadratureSpec};

    /// Simpson's rule on the beta integrand; independent of the continued fraction.
    fn beta_integral(x: f64, m: f64, n: f64) -> f64 {
        let f = |t: f64| t.powf(m - 1.0) * (1.0 - t).powf(n - 1.0);
        let spec = QuadratureSpec::with_tolerance(1e-13);
        integrate(f, 0.0, x, &spec).unwrap().value / log_beta(m, n).unwrap().exp()
    }

    #[test]
    fn log_beta_examples() {
        assert_abs_diff_eq!(log_beta(1.0, 1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(log_beta(2.0, 2.0).unwrap(), (1.0f64 / 6.0).ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(
            log_beta(0.5, 0.5).unwrap(),
            std::f64::consts::PI.ln(),
            epsilon = 1e-13
        );
        assert!(log_beta(0.0, 1.0).is_err());
        assert!(log_beta(1.0, -2.0).is_err());
    }

    #[test]
    fn incomplete_beta_examples() {
        assert_abs_diff_eq!(reg_inc_beta(0.5, 1.0, 1.0).unwrap(), 0.5, epsilon = 1e-15);
        let x: f64 = 0.25;
        assert_abs_diff_eq!(
            reg_inc_beta(x, 2.0, 2.0).unwrap(),
            3.0 * x * x - 2.0 * x.powi(3),
            epsilon = 1e-15
        );
        assert_eq!(reg_inc_beta(1.0, 7.3, 0.2).unwrap(), 1.0);
        assert_eq!(reg_inc_beta(0.0, 7.3, 0.2).unwrap(), 0.0);
        assert!(reg_inc_beta(1.1, 1.0, 1.0).is_err());
        assert!(reg_inc_beta(0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn incomplete_beta_matches_simpson() {
        for &(x, m, n) in &[(0.3, 2.5, 3.5), (0.7, 4.0, 1.5), (0.5, 13.4, 9.6), (0.9, 1.2, 6.0)] {
            assert_abs_diff_eq!(reg_inc_beta(x, m, n).unwrap(), beta_integral(x, m, n), epsilon = 1e-9);
        }
    }

    #[test]
    fn complement_is_consistent() {
        for &(x, m, n) in &[(0.01, 0.5, 3.0), (0.999, 2.0, 0.3), (0.4, 40.0, 60.0)] {
            let l = reg_inc_beta(x, m, n).unwrap();
            let u = reg_inc_beta_complement(x, m, n).unwrap();
            assert_abs_diff_eq!(l + u, 1.0, epsilon = 1e-14);
            // symmetry relation
            assert_abs_diff_eq!(u, reg_inc_beta(1.0 - x, n, m).unwrap(), epsilon = 1e-13);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_abs_diff_eq!(inv_reg_inc_beta(0.5, 1.0, 1.0).unwrap(), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(inv_reg_inc_beta(0.15625, 2.0, 2.0).unwrap(), 0.25, epsilon = 1e-12);
        assert_eq!(inv_reg_inc_beta(0.0, 3.0, 2.0).unwrap(), 0.0);
        assert_eq!(inv_reg_inc_beta(1.0, 3.0, 2.0).unwrap(), 1.0);
        assert!(inv_reg_inc_beta(-0.1, 3.0, 2.0).is_err());
    }

    #[test]
    fn inverse_extreme_shapes() {
        for &(u, m, n) in &[
            (1e-12, 5.0, 2.0),
            (1e-6, 0.1, 50.0),
            (0.999, 50.0, 0.5),
            (0.3, 4000.0, 1.1),
            (0.5, 0.05, 0.05),
        ] {
            let z = inv_reg_inc_beta(u, m, n).unwrap();
            let back = reg_inc_beta(z, m, n).unwrap();
            assert!((back - u).abs() <= 1e-12_f64.max(1e-9 * u), "u={u} m={m} n={n} z={z} back={back}");
        }
    }

    #[test]
    fn series_coefficients() {
        assert_abs_diff_eq!(beta_series_coefficient(2, 2.0, 3.0).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(beta_quantile_series(0.0, 2.0, 2.0, 4).unwrap(), 0.0);
        assert!(beta_quantile_series(0.1, 2.0, 2.0, 5).is_err());
        let s = beta_quantile_series(0.01, 2.0, 2.0, 4).unwrap();
        let z = inv_reg_inc_beta(0.01, 2.0, 2.0).unwrap();
        assert!((s - z).abs() < 1e-3, "series {s} vs inverse {z}");
    }

    #[test]
    fn series_truncation_error_has_fifth_order() {
        // With d_1..d_4 correct, the error is O(w^5), w = (u m B)^{1/m}.
        let (m, n) = (1.5, 3.5);
        let err = |u: f64| {
            (beta_quantile_series(u, m, n, 4).unwrap() - inv_reg_inc_beta(u, m, n).unwrap()).abs()
        };
        let e1 = err(1e-4);
        let e2 = err(1e-4 / 2f64.powf(m));
        // halving w must divide the error by about 2^5 = 32
        let ratio = e1 / e2;
        assert!(ratio > 25.0 && ratio < 40.0, "ratio {ratio}");
    }

    #[test]
    fn normal_quantile() {
        assert_abs_diff_eq!(std_normal_quantile(0.975).unwrap(), 1.959963984540054, epsilon = 1e-12);
        assert_abs_diff_eq!(std_normal_quantile(0.5).unwrap(), 0.0, epsilon = 1e-15);
    }
}
