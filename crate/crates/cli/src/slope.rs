//! Scaling-exponent estimation: ordinary least squares on log-log data.
//!
//! Every "grows like lambda^alpha" claim in the experiment catalogue is
//! reduced to a slope fit over a dyadic sweep, so the fit is the one
//! numeric primitive the summaries depend on.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SlopeError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("log-log fit needs positive data, got ({0}, {1})")]
    NonPositive(f64, f64),
    #[error("x values are all equal; slope undefined")]
    DegenerateX,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// OLS fit of log y against log x.
pub fn slope_fit(points: &[(f64, f64)]) -> Result<SlopeFit, SlopeError> {
    if points.len() < 3 {
        return Err(SlopeError::TooFewPoints(points.len()));
    }
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(x, y) in points {
        if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(SlopeError::NonPositive(x, y));
        }
        xs.push(x.ln());
        ys.push(y.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(SlopeError::DegenerateX);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    // Perfect fits and constant data both mean "no residual": r^2 = 1.
    // The variance test is relative so rounding in the mean of constant
    // logs does not manufacture spurious residual.
    let no_variation = syy <= 1e-20 * n * (1.0 + my * my);
    let r_squared = if no_variation { 1.0 } else { (sxy * sxy / (sxx * syy)).min(1.0) };
    Ok(SlopeFit { slope, intercept, r_squared, n_points: points.len() })
}
