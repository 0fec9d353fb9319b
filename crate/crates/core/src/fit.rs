//! Least-squares slopes for convergence and scaling checks.

/// Slope of the least-squares line through `(xs[i], ys[i])`.
///
/// Returns NaN with fewer than two points or when all `xs` coincide.
pub fn linear_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return f64::NAN;
    }
    let nf = n as f64;
    let mx = xs[..n].iter().sum::<f64>() / nf;
    let my = ys[..n].iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs[..n].iter().zip(&ys[..n]) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        return f64::NAN;
    }
    sxy / sxx
}

/// Slope of `ln|y|` against `ln x`: the power `p` in `y ∝ x^p`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: alloc::vec::Vec<f64> = xs.iter().map(|&x| crate::math::ln(x)).collect();
    let ly: alloc::vec::Vec<f64> = ys.iter().map(|&y| crate::math::ln(crate::math::abs(y))).collect();
    linear_slope(&lx, &ly)
}
