//! Derivative-free local minimisation: Nelder–Mead simplex followed by a
//! coordinate-wise pattern polish.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iters: usize,
    pub x_tol: f64,
    pub f_tol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Nelder–Mead with dimension-adaptive coefficients.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], opts: &SimplexOptions) -> Minimum {
    let k = start.len();
    let kf = k as f64;
    let (alpha, gamma) = (1.0, 1.0 + 2.0 / kf);
    let (rho, sigma) = (0.75 - 1.0 / (2.0 * kf), 1.0 - 1.0 / kf);
    let mut evals = 0usize;
    let mut eval = |x: &[f64]| {
        evals += 1;
        sanitize(f(x))
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(k + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..k {
        let mut x = start.to_vec();
        x[i] += opts.initial_step;
        let v = eval(&x);
        simplex.push((x, v));
    }

    let mut converged = false;
    let mut iters = 0;
    while iters < opts.max_iters {
        iters += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[k].1;
        let f_spread = (worst - best).abs();
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if best.is_finite() && f_spread <= opts.f_tol * (1.0 + best.abs()) && x_spread <= opts.x_tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; k];
        for (x, _) in &simplex[..k] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / kf;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[k].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(alpha * gamma);
            let fe = eval(&xe);
            simplex[k] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[k - 1].1 {
            simplex[k] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[k].1 {
            let xc = along(alpha * rho);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < fr.min(simplex[k].1) {
            simplex[k] = (xc, fc);
            continue;
        }
        let x0 = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&x0) {
                *xi = bi + sigma * (*xi - bi);
            }
            *v = eval(x);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evaluations: evals,
        converged,
    }
}

/// Coordinate pattern search: tries `±h` along each axis, halving `h`
/// once no axis improves, until `h < x_tol`.
pub fn coordinate_polish<F: Fn(&[f64]) -> f64>(f: &F, start: &Minimum, opts: &SimplexOptions) -> Minimum {
    let mut x = start.x.clone();
    let mut fx = start.value;
    let mut evals = 0usize;
    let mut h = opts.initial_step.min(0.1);
    while h >= opts.x_tol && evals < 50 * opts.max_iters {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + dir * h;
                let v = sanitize(f(&x));
                evals += 1;
                if v < fx {
                    fx = v;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    Minimum {
        x,
        value: fx,
        evaluations: start.evaluations + evals,
        converged: start.converged,
    }
}

/// Simplex, polish, then a simplex restart from the polished point.
pub fn minimize<F: Fn(&[f64]) -> f64>(f: &F, start: &[f64], opts: &SimplexOptions) -> Minimum {
    let first = nelder_mead(f, start, opts);
    let polished = coordinate_polish(f, &first, opts);
    let restart = nelder_mead(
        f,
        &polished.x,
        &SimplexOptions {
            initial_step: (opts.initial_step * 0.1).max(10.0 * opts.x_tol),
            ..*opts
        },
    );
    let mut best = if restart.value < polished.value { restart } else { polished.clone() };
    best.evaluations = first.evaluations + polished.evaluations + best.evaluations;
    best.converged = first.converged || best.converged;
    coordinate_polish(f, &best, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> SimplexOptions {
        SimplexOptions {
            max_iters: 5000,
            x_tol: 1e-10,
            f_tol: 1e-14,
            initial_step: 0.5,
        }
    }

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5 * x[0] * x[1];
        let m = minimize(&f, &[5.0, 5.0], &opts());
        // gradient zero: 2(x−1) + 0.5y = 0, 6(y+2) + 0.5x = 0
        let y = -12.5 / 5.875;
        let x = 1.0 - 0.25 * y;
        assert!((m.x[0] - x).abs() < 1e-7 && (m.x[1] - y).abs() < 1e-7, "{:?}", m.x);
        assert!(m.converged);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2);
        let m = minimize(&f, &[-1.2, 1.0], &opts());
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6, "{:?}", m.x);
    }

    #[test]
    fn infinite_region_is_avoided() {
        let f = |x: &[f64]| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.1).powi(2) + x[1].powi(2) };
        let m = minimize(&f, &[2.0, 1.0], &opts());
        assert!((m.x[0] - 0.1).abs() < 1e-7);
    }
}
