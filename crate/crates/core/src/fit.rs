//! Least-squares line fits used by the decay and scaling diagnostics.

/// Ordinary least squares for `y ~ a + b x`; returns `(a, b, r_squared, rss)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    assert!(x.len() >= 2, "need at least two points for a line fit");
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let r = yi - a - b * xi;
            r * r
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - rss / syy } else { 1.0 };
    (a, b, r2, rss)
}

/// Fitted exponent `p` of `|y| ~ C x^p` over positive samples, ignoring
/// entries below `floor` (underflowed values carry no slope information).
pub fn log_log_slope(x: &[f64], y: &[f64], floor: f64) -> Option<(f64, f64)> {
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    for (&xi, &yi) in x.iter().zip(y) {
        if xi > 0.0 && yi.abs() > floor {
            lx.push(xi.ln());
            ly.push(yi.abs().ln());
        }
    }
    if lx.len() < 3 {
        return None;
    }
    let (_, slope, r2, _) = linear_fit(&lx, &ly);
    Some((slope, r2))
}
