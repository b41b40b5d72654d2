use crate::error::{Error, Result};

/// Scaled total-time-on-test points `(i/w, T(i/w))`, `i = 1..w`.
pub fn ttt_coordinates(data: &[f64]) -> Result<Vec<(f64, f64)>> {
    if data.is_empty() {
        return Err(Error::Dataset("TTT transform of an empty sample".into()));
    }
    if let Some(x) = data.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(Error::Dataset(format!("TTT needs non-negative observations, got {x}")));
    }
    let mut xs = data.to_vec();
    xs.sort_by(f64::total_cmp);
    let total: f64 = xs.iter().sum();
    if total <= 0.0 {
        return Err(Error::Dataset("TTT transform is degenerate for all-zero data".into()));
    }
    let w = xs.len();
    let mut partial = 0.0;
    Ok(xs
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let i = k + 1;
            partial += x;
            let t = if i == w { 1.0 } else { (partial + (w - i) as f64 * x) / total };
            (i as f64 / w as f64, t)
        })
        .collect())
}
