//! Heat and spectral-multiplier kernels on the sphere.
//!
//! The heat kernel of L = -Laplacian + b is the spectral series
//! p(z, x, y) = sum_n (2n+1)/(4 pi) e^{-(n(n+1)+b) z} P_n(x . y),
//! convergent for Re z > 0. Alongside it live the smoothed projector
//! kernels K(x, y) = sum_n psi((n(n+1)+b)/lambda^2) (2n+1)/(4 pi)
//! P_n(x . y) and the spectral counting function. The profile sweeps
//! measure Gaussian-type domination constants empirically: each row
//! reports the supremum of p weighted by the inverse Gaussian factor
//! e^{d^2/(5 z)} over a distance sweep.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::geom::Point3;
use crate::specfun;
use crate::spectrum;

/// Smallest admissible Re z: below this the truncation degree needed
/// for a 1e-14 tail exceeds the practical budget.
pub const MIN_RE_TIME: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelError {
    /// Re z < MIN_RE_TIME (or nonpositive): tail cannot be controlled.
    TruncationInfeasible { re_time: f64 },
    /// Shift b must be nonnegative and finite.
    InvalidShift(f64),
    /// Plateau needs 0 < inner < outer.
    InvalidPlateau { inner: f64, outer: f64 },
    /// Hard cutoff needs a positive edge.
    InvalidEdge(f64),
    /// Multiplier and counting diagnostics need lambda >= 1.
    InvalidLambda(f64),
    /// Complex sweeps stay within |angle| <= 1.3.
    AngleOutOfRange(f64),
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::TruncationInfeasible { re_time } => {
                write!(f, "Re(time) = {re_time} below feasible minimum {MIN_RE_TIME}")
            }
            KernelError::InvalidShift(b) => write!(f, "shift {b} must be >= 0"),
            KernelError::InvalidPlateau { inner, outer } => {
                write!(f, "plateau needs 0 < inner < outer, got ({inner}, {outer})")
            }
            KernelError::InvalidEdge(e) => write!(f, "cutoff edge {e} must be > 0"),
            KernelError::InvalidLambda(l) => write!(f, "lambda {l} must be >= 1"),
            KernelError::AngleOutOfRange(a) => write!(f, "angle {a} outside [-1.3, 1.3]"),
        }
    }
}

/// Nonnegative shift b in L = -Laplacian + b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorShift {
    pub b: f64,
}

impl OperatorShift {
    pub fn new(b: f64) -> Result<Self, KernelError> {
        if !b.is_finite() || b < 0.0 {
            return Err(KernelError::InvalidShift(b));
        }
        Ok(OperatorShift { b })
    }

    pub fn none() -> Self {
        OperatorShift { b: 0.0 }
    }
}

/// Smooth monotone step: theta(u) = g(u) / (g(u) + g(1-u)) with
/// g(u) = e^{-1/u} on u > 0, so theta is 0 for u <= 0, 1 for u >= 1,
/// and C-infinity across the joints.
fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let g = libm::exp(-1.0 / u);
    let h = libm::exp(-1.0 / (1.0 - u));
    g / (g + h)
}

/// Plateau bump: exactly 1 on [-inner, inner], exactly 0 outside
/// [-outer, outer], smooth in between.
pub fn psi_plateau(s: f64, inner: f64, outer: f64) -> f64 {
    debug_assert!(0.0 < inner && inner < outer);
    smooth_step((outer - s.abs()) / (outer - inner))
}

/// Spectral multiplier shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MultiplierSpec {
    /// Smooth bump, 1 on [-inner, inner], 0 outside [-outer, outer].
    PlateauBump { inner: f64, outer: f64 },
    /// Sharp indicator of [-edge, edge].
    HardCutoff { edge: f64 },
}

impl MultiplierSpec {
    pub fn plateau(inner: f64, outer: f64) -> Result<Self, KernelError> {
        if !(0.0 < inner && inner < outer && outer.is_finite()) {
            return Err(KernelError::InvalidPlateau { inner, outer });
        }
        Ok(MultiplierSpec::PlateauBump { inner, outer })
    }

    pub fn hard_cutoff(edge: f64) -> Result<Self, KernelError> {
        if !(edge > 0.0 && edge.is_finite()) {
            return Err(KernelError::InvalidEdge(edge));
        }
        Ok(MultiplierSpec::HardCutoff { edge })
    }

    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            MultiplierSpec::PlateauBump { inner, outer } => psi_plateau(s, inner, outer),
            MultiplierSpec::HardCutoff { edge } => {
                if s.abs() <= edge {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Largest |s| where the multiplier can be nonzero.
    pub fn support_edge(&self) -> f64 {
        match *self {
            MultiplierSpec::PlateauBump { outer, .. } => outer,
            MultiplierSpec::HardCutoff { edge } => edge,
        }
    }
}

/// Truncation degree for Re z: (2n+1) e^{-n(n+1) re} tails drop below
/// 1e-14 once n^2 re >= 40.
pub fn heat_truncation(re_time: f64) -> usize {
    let n = libm::ceil(libm::sqrt(40.0 / re_time)) as usize;
    n.max(8)
}

/// One heat-kernel evaluation site with its truncation degree.
#[derive(Debug, Clone)]
pub struct HeatQuery {
    pub time: Complex64,
    pub x: Point3,
    pub y: Point3,
    pub n_trunc: usize,
}

impl HeatQuery {
    pub fn new(time: Complex64, x: Point3, y: Point3) -> Result<Self, KernelError> {
        if !(time.re >= MIN_RE_TIME) {
            return Err(KernelError::TruncationInfeasible { re_time: time.re });
        }
        Ok(HeatQuery { time, x, y, n_trunc: heat_truncation(time.re) })
    }
}

/// Heat series at a fixed inner product, truncated at n_trunc.
fn heat_series(time: Complex64, dot: f64, b: f64, n_trunc: usize) -> Complex64 {
    let mut legendre = vec![0.0; n_trunc + 1];
    specfun::legendre_p_all(n_trunc, dot.clamp(-1.0, 1.0), &mut legendre);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..=n_trunc {
        let a = n as f64 * (n as f64 + 1.0) + b;
        let arg = -time * a;
        let e = Complex64::from_polar(libm::exp(arg.re), arg.im);
        acc += e * ((2 * n + 1) as f64 / (4.0 * PI) * legendre[n]);
    }
    acc
}

/// Heat kernel p(z, x, y) of L = -Laplacian + b.
pub fn heat_kernel(q: &HeatQuery, shift: &OperatorShift) -> Complex64 {
    heat_series(q.time, q.x.dot(&q.y), shift.b, q.n_trunc)
}

/// Heat kernel as a function of the inner product x . y.
pub fn heat_kernel_dot(time: Complex64, dot: f64, shift: &OperatorShift) -> Result<Complex64, KernelError> {
    if !(time.re >= MIN_RE_TIME) {
        return Err(KernelError::TruncationInfeasible { re_time: time.re });
    }
    Ok(heat_series(time, dot, shift.b, heat_truncation(time.re)))
}

/// One row of a Gaussian-domination sweep.
#[derive(Debug, Clone, Copy)]
pub struct ProfileRow {
    pub t: f64,
    pub sup_profile: f64,
    pub argmax_distance: f64,
}

/// One row of a complex-time domination sweep, z = t e^{i angle}.
#[derive(Debug, Clone, Copy)]
pub struct ComplexProfileRow {
    pub t: f64,
    pub angle: f64,
    pub sup_profile: f64,
    pub argmax_distance: f64,
}

/// Shared profile core: sup over distance of
/// |p(z, d)| * Re(z) * e^{Re(d^2 / (5 z))}.
///
/// The sweep stops at the computability horizon d^2 Re(1/z) <= 144/4:
/// past it the true kernel sits below the f64 cancellation floor of the
/// series and the weight would amplify pure roundoff. The true weighted
/// profile decays like e^{-d^2 Re(1/z)/20} there, so the supremum is
/// unaffected.
fn bound_profile_z(z: Complex64, n_dist: usize, b: f64) -> (f64, f64) {
    let t = z.norm();
    let cos_angle = z.re / t;
    let d_cap = if t / cos_angle >= (PI / 12.0) * (PI / 12.0) {
        PI
    } else {
        12.0 * libm::sqrt(t / cos_angle)
    };
    let n_trunc = heat_truncation(z.re);
    let mut sup = 0.0;
    let mut arg = 0.0;
    for i in 0..=n_dist {
        let d = d_cap * i as f64 / n_dist as f64;
        let p = heat_series(z, libm::cos(d), b, n_trunc);
        let weight = libm::exp(d * d * cos_angle / (5.0 * t));
        let profile = p.norm() * z.re * weight;
        if profile > sup {
            sup = profile;
            arg = d;
        }
    }
    (sup, arg)
}

/// Gaussian-domination sweep at real times: for each t the supremum of
/// p(t, d) * t * e^{d^2/(5t)} over distances, with its maximizer.
pub fn gaussian_bound_profile(
    t_list: &[f64],
    n_dist: usize,
    shift: &OperatorShift,
) -> Result<Vec<ProfileRow>, KernelError> {
    let mut rows = Vec::with_capacity(t_list.len());
    for &t in t_list {
        if !(t >= MIN_RE_TIME) {
            return Err(KernelError::TruncationInfeasible { re_time: t });
        }
        let (sup_profile, argmax_distance) = bound_profile_z(Complex64::new(t, 0.0), n_dist, shift.b);
        rows.push(ProfileRow { t, sup_profile, argmax_distance });
    }
    Ok(rows)
}

/// Complex-time domination sweep over z = t e^{i angle}.
pub fn complex_bound_profile(
    angle_list: &[f64],
    t_list: &[f64],
    n_dist: usize,
    shift: &OperatorShift,
) -> Result<Vec<ComplexProfileRow>, KernelError> {
    let mut rows = Vec::with_capacity(angle_list.len() * t_list.len());
    for &angle in angle_list {
        if angle.abs() > 1.3 {
            return Err(KernelError::AngleOutOfRange(angle));
        }
        for &t in t_list {
            let z = Complex64::from_polar(t, angle);
            if !(z.re >= MIN_RE_TIME) {
                return Err(KernelError::TruncationInfeasible { re_time: z.re });
            }
            let (sup_profile, argmax_distance) = bound_profile_z(z, n_dist, shift.b);
            rows.push(ComplexProfileRow { t, angle, sup_profile, argmax_distance });
        }
    }
    Ok(rows)
}

/// Multiplier kernel as a function of the inner product:
/// sum_n psi((n(n+1)+b)/lambda^2) (2n+1)/(4 pi) P_n(dot).
pub fn multiplier_kernel_dot(
    spec: &MultiplierSpec,
    lambda: f64,
    dot: f64,
    shift: &OperatorShift,
) -> Result<f64, KernelError> {
    if !(lambda >= 1.0) {
        return Err(KernelError::InvalidLambda(lambda));
    }
    let lam2 = lambda * lambda;
    let cap = spec.support_edge() * lam2;
    let mut n_max = 0usize;
    while ((n_max + 1) * (n_max + 2)) as f64 + shift.b <= cap {
        n_max += 1;
    }
    let mut legendre = vec![0.0; n_max + 1];
    specfun::legendre_p_all(n_max, dot.clamp(-1.0, 1.0), &mut legendre);
    let mut acc = 0.0;
    for n in 0..=n_max {
        let s = (n as f64 * (n as f64 + 1.0) + shift.b) / lam2;
        let w = spec.eval(s);
        if w != 0.0 {
            acc += w * (2 * n + 1) as f64 / (4.0 * PI) * legendre[n];
        }
    }
    Ok(acc)
}

/// Multiplier kernel K(x, y).
pub fn multiplier_kernel(
    spec: &MultiplierSpec,
    lambda: f64,
    x: &Point3,
    y: &Point3,
    shift: &OperatorShift,
) -> Result<f64, KernelError> {
    multiplier_kernel_dot(spec, lambda, x.dot(y), shift)
}

/// Envelope decay order of a multiplier kernel: fit -slope of
/// log(max |K|) against log(1 + lambda d) over geometric distance bins.
/// Plateau multipliers decay superpolynomially; hard cutoffs stall
/// near order 3/2.
pub fn kernel_decay_order(
    spec: &MultiplierSpec,
    lambda: f64,
    shift: &OperatorShift,
    bins: usize,
) -> Result<f64, KernelError> {
    if !(lambda >= 1.0) {
        return Err(KernelError::InvalidLambda(lambda));
    }
    assert!(bins >= 3, "need at least three bins for a slope");
    let u_lo = 8.0;
    let u_hi = 1.0 + 2.0 * lambda;
    let per_bin = 16;
    let mut log_u = Vec::with_capacity(bins);
    let mut log_env = Vec::with_capacity(bins);
    for m in 0..bins {
        let a = u_lo * libm::pow(u_hi / u_lo, m as f64 / bins as f64);
        let b_edge = u_lo * libm::pow(u_hi / u_lo, (m + 1) as f64 / bins as f64);
        let mut env: f64 = 0.0;
        for j in 0..per_bin {
            let u = a + (b_edge - a) * (j as f64 + 0.5) / per_bin as f64;
            let d = (u - 1.0) / lambda;
            let k = multiplier_kernel_dot(spec, lambda, libm::cos(d), shift)?;
            env = env.max(k.abs());
        }
        log_u.push(libm::log(libm::sqrt(a * b_edge)));
        log_env.push(libm::log(env.max(1e-300)));
    }
    // Ordinary least squares slope of log env against log u.
    let n = bins as f64;
    let mx = log_u.iter().sum::<f64>() / n;
    let my = log_env.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in log_u.iter().zip(&log_env) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    Ok(-sxy / sxx)
}

/// Spectral counting function sum_{lambda_n <= lambda} (2n+1)/(4 pi)
/// = (N+1)^2/(4 pi); independent of the base point by rotation
/// invariance.
pub fn spectral_function(lambda: f64) -> Result<f64, KernelError> {
    if !(lambda >= 1.0) {
        return Err(KernelError::InvalidLambda(lambda));
    }
    let basis = spectrum::band_basis(lambda).map_err(|_| KernelError::InvalidLambda(lambda))?;
    let n = basis.n_max as f64;
    Ok((n + 1.0) * (n + 1.0) / (4.0 * PI))
}

/// Ratio of the spectral counting function to the planar main term
/// lambda^2 / (4 pi).
pub fn weyl_ratio(lambda: f64) -> Result<f64, KernelError> {
    Ok(spectral_function(lambda)? * 4.0 * PI / (lambda * lambda))
}
