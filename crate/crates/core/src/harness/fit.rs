//! Limit extrapolation and decay-rate fits.

/// Value at `x = 0` of the polynomial through the points `(xs[i], ys[i])`
/// (Neville's scheme). With `x = e^{−r/2}` this is Richardson extrapolation
/// of a series in `e^{−r/2}`.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p.first().copied().unwrap_or(f64::NAN)
}

/// Least-squares line `y = a + b x`; returns `(a, b)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let b = sxy / sxx;
    Some((my - b * mx, b))
}

/// Gaps below this are treated as numerical noise.
pub const GAP_FLOOR: f64 = 1e-13;

/// Decay order `p` in `|gap| ≈ C e^{−p r/2}`, from the rows with
/// `|gap| ≥ GAP_FLOOR`; `None` with fewer than three usable rows.
pub fn decay_order(rs: &[f64], gaps: &[f64]) -> Option<f64> {
    let (x, y): (Vec<f64>, Vec<f64>) = rs
        .iter()
        .zip(gaps)
        .filter(|(r, g)| r.is_finite() && g.is_finite() && g.abs() >= GAP_FLOOR)
        .map(|(r, g)| (*r, g.abs().ln()))
        .unzip();
    if x.len() < 3 {
        return None;
    }
    linear_fit(&x, &y).map(|(_, slope)| -2.0 * slope)
}
