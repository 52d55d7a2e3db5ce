//! Spectral subspaces of the sphere Laplacian and functions in them.
//!
//! The basis functions are Y_{n,k}(theta, phi) = Nbar(n, k, cos theta)
//! e^{i k phi} with eigenvalue frequency lambda_n = sqrt(n (n + 1)).
//! A band space collects all (n, k) with lambda_n <= lambda; a single
//! eigenspace fixes the degree n. Coefficients are stored degree-major,
//! k running from -n to n, so position(n, k) = n^2 + n + k in a band.
//!
//! Synthesis on product grids is separated: one pass builds per-order
//! profiles g_k(theta) from a normalized associated Legendre triangle,
//! a second pass sums g_k e^{i k phi} along each row. This keeps dense
//! evaluation at degree 128 and above within desk-scale budgets.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::geom::{self, Measure, Point3, QuadratureGrid};
use crate::rng::SplitMix64;
use crate::specfun::{
    self, triangle_idx, triangle_len, NormAssocTable, SpecFunError,
};

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumError {
    /// Zonal kernels need lambda_n > 0, i.e. degree at least 1.
    DegreeZero,
    /// Band limit must be a finite nonnegative number.
    InvalidBandLimit(f64),
    /// Lp exponent outside [1, infinity].
    InvalidExponent(f64),
    /// Coefficients do not match the basis dimension.
    DimensionMismatch { basis: usize, coeffs: usize },
    /// Harmonic extension restricted to |t| <= 10 / lambda.
    ExtensionTooFar { t: f64, limit: f64 },
    Quadrature(SpecFunError),
    Geometry(geom::GeomError),
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::DegreeZero => write!(f, "degree must be at least 1"),
            SpectrumError::InvalidBandLimit(l) => write!(f, "invalid band limit {l}"),
            SpectrumError::InvalidExponent(p) => write!(f, "Lp exponent {p} outside [1, inf]"),
            SpectrumError::DimensionMismatch { basis, coeffs } => {
                write!(f, "basis dimension {basis} but {coeffs} coefficients")
            }
            SpectrumError::ExtensionTooFar { t, limit } => {
                write!(f, "extension time {t} beyond stable range {limit}")
            }
            SpectrumError::Quadrature(e) => write!(f, "{e}"),
            SpectrumError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl From<SpecFunError> for SpectrumError {
    fn from(e: SpecFunError) -> Self {
        SpectrumError::Quadrature(e)
    }
}

impl From<geom::GeomError> for SpectrumError {
    fn from(e: geom::GeomError) -> Self {
        SpectrumError::Geometry(e)
    }
}

/// Frequency lambda_n = sqrt(n (n + 1)) of the degree-n eigenspace.
pub fn eigenvalue_lambda(n: usize) -> f64 {
    libm::sqrt(n as f64 * (n as f64 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisKind {
    /// All degrees with lambda_n <= lambda.
    Band { lambda: f64 },
    /// The single degree-n eigenspace.
    Eigenspace { n: usize },
}

/// Index set of a spectral subspace with its coefficient ordering.
#[derive(Debug, Clone)]
pub struct BasisIndex {
    pub kind: BasisKind,
    /// (degree, order) pairs, degree ascending, order from -n to n.
    pub entries: Vec<(usize, isize)>,
    pub n_max: usize,
    pub n_min: usize,
}

impl BasisIndex {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Largest eigenvalue frequency present.
    pub fn lambda_max(&self) -> f64 {
        eigenvalue_lambda(self.n_max)
    }

    /// Position of (n, k) in the coefficient vector, if present.
    pub fn position(&self, n: usize, k: isize) -> Option<usize> {
        if k.unsigned_abs() > n {
            return None;
        }
        match self.kind {
            BasisKind::Band { .. } => {
                if n > self.n_max {
                    None
                } else {
                    // n^2 entries precede degree n; offset k + n within it.
                    Some(n * n + (k + n as isize) as usize)
                }
            }
            BasisKind::Eigenspace { n: deg } => {
                if n != deg {
                    None
                } else {
                    Some((k + n as isize) as usize)
                }
            }
        }
    }
}

/// Band space of all (n, k) with sqrt(n(n+1)) <= lambda; dimension
/// (N+1)^2 where N is the largest admitted degree.
pub fn band_basis(lambda: f64) -> Result<BasisIndex, SpectrumError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(SpectrumError::InvalidBandLimit(lambda));
    }
    let lam2 = lambda * lambda;
    let mut n_max = 0usize;
    while ((n_max + 1) * (n_max + 2)) as f64 <= lam2 {
        n_max += 1;
    }
    let mut entries = Vec::with_capacity((n_max + 1) * (n_max + 1));
    for n in 0..=n_max {
        for k in -(n as isize)..=(n as isize) {
            entries.push((n, k));
        }
    }
    Ok(BasisIndex { kind: BasisKind::Band { lambda }, entries, n_max, n_min: 0 })
}

/// The degree-n eigenspace, dimension 2n + 1.
pub fn eigenspace_basis(n: usize) -> BasisIndex {
    let entries = (-(n as isize)..=(n as isize)).map(|k| (n, k)).collect();
    BasisIndex { kind: BasisKind::Eigenspace { n }, entries, n_max: n, n_min: n }
}

/// Function in a spectral subspace, stored by coefficients.
#[derive(Debug, Clone)]
pub struct SpectralFunction {
    pub basis: Arc<BasisIndex>,
    pub coeffs: Vec<Complex64>,
}

impl SpectralFunction {
    pub fn new(basis: Arc<BasisIndex>, coeffs: Vec<Complex64>) -> Result<Self, SpectrumError> {
        if basis.dim() != coeffs.len() {
            return Err(SpectrumError::DimensionMismatch { basis: basis.dim(), coeffs: coeffs.len() });
        }
        Ok(SpectralFunction { basis, coeffs })
    }

    /// Coefficient two-norm; equals the L^2 norm by orthonormality.
    pub fn coeff_norm(&self) -> f64 {
        libm::sqrt(self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>())
    }

    pub fn scaled(&self, factor: f64) -> SpectralFunction {
        SpectralFunction {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

/// Complex samples of a function on a grid.
pub struct GridSamples {
    pub grid: Arc<QuadratureGrid>,
    pub values: Vec<Complex64>,
}

/// Signed colatitude factor of Y_{n,k} from a packed k >= 0 triangle:
/// negative orders carry the (-1)^k parity.
#[inline]
fn signed_triangle_value(tri: &[f64], n: usize, k: isize) -> f64 {
    let ka = k.unsigned_abs();
    let v = tri[triangle_idx(n, ka)];
    if k < 0 && ka % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Evaluate a function at every grid node.
///
/// Product grids run the separated two-stage synthesis; rotated grids
/// fall back to per-node evaluation.
pub fn evaluate(f: &SpectralFunction, grid: Arc<QuadratureGrid>) -> GridSamples {
    let n_max = f.basis.n_max;
    if !grid.is_product() {
        let values = grid.points.iter().map(|p| evaluate_at(f, p)).collect();
        return GridSamples { grid, values };
    }
    let table = NormAssocTable::new(n_max);
    let mut tri = vec![0.0; triangle_len(n_max)];
    let span = 2 * n_max + 1;
    let n_phi = grid.n_phi();
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    // Azimuth phases e^{i phi_j}.
    let phase: Vec<Complex64> = grid
        .phis
        .iter()
        .map(|&p| Complex64::new(libm::cos(p), libm::sin(p)))
        .collect();
    let mut g = vec![Complex64::new(0.0, 0.0); span];
    for (i, &theta) in grid.thetas.iter().enumerate() {
        table.eval_triangle(theta, &mut tri);
        for v in g.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for (idx, &(n, k)) in f.basis.entries.iter().enumerate() {
            let slot = (k + n_max as isize) as usize;
            g[slot] += f.coeffs[idx] * signed_triangle_value(&tri, n, k);
        }
        for j in 0..n_phi {
            // Horner-style sweep over orders: start at k = -n_max.
            let mut e = phase[j].powi(-(n_max as i32));
            let mut acc = Complex64::new(0.0, 0.0);
            for v in g.iter() {
                acc += v * e;
                e *= phase[j];
            }
            values[i * n_phi + j] = acc;
        }
    }
    GridSamples { grid, values }
}

/// Evaluate a function at one arbitrary point.
pub fn evaluate_at(f: &SpectralFunction, p: &Point3) -> Complex64 {
    let (theta, phi) = p.to_spherical();
    let n_max = f.basis.n_max;
    let table = NormAssocTable::new(n_max);
    let mut tri = vec![0.0; triangle_len(n_max)];
    table.eval_triangle(theta, &mut tri);
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, &(n, k)) in f.basis.entries.iter().enumerate() {
        let e = Complex64::new(0.0, k as f64 * phi).exp();
        acc += f.coeffs[idx] * signed_triangle_value(&tri, n, k) * e;
    }
    acc
}

/// Values of every basis function at one point, in basis order.
pub fn basis_values_at(basis: &BasisIndex, p: &Point3) -> Vec<Complex64> {
    let (theta, phi) = p.to_spherical();
    let table = NormAssocTable::new(basis.n_max);
    let mut tri = vec![0.0; triangle_len(basis.n_max)];
    table.eval_triangle(theta, &mut tri);
    basis
        .entries
        .iter()
        .map(|&(n, k)| {
            Complex64::new(0.0, k as f64 * phi).exp() * signed_triangle_value(&tri, n, k)
        })
        .collect()
}

/// Adjoint of synthesis: c_j = sum_nodes weighted[node] conj(Y_j(node)).
/// The caller folds quadrature weights and densities into `weighted`.
pub fn analysis(basis: &BasisIndex, grid: &QuadratureGrid, weighted: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(weighted.len(), grid.len());
    let n_max = basis.n_max;
    if !grid.is_product() {
        let mut out = vec![Complex64::new(0.0, 0.0); basis.dim()];
        for (idx, p) in grid.points.iter().enumerate() {
            let vals = basis_values_at(basis, p);
            for (j, v) in vals.iter().enumerate() {
                out[j] += weighted[idx] * v.conj();
            }
        }
        return out;
    }
    let table = NormAssocTable::new(n_max);
    let mut tri = vec![0.0; triangle_len(n_max)];
    let span = 2 * n_max + 1;
    let n_phi = grid.n_phi();
    let phase: Vec<Complex64> = grid
        .phis
        .iter()
        .map(|&p| Complex64::new(libm::cos(p), libm::sin(p)))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); basis.dim()];
    let mut row_dft = vec![Complex64::new(0.0, 0.0); span];
    for (i, &theta) in grid.thetas.iter().enumerate() {
        table.eval_triangle(theta, &mut tri);
        for g in row_dft.iter_mut() {
            *g = Complex64::new(0.0, 0.0);
        }
        for j in 0..n_phi {
            let w = weighted[i * n_phi + j];
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            // Slot s holds sum_j weighted e^{-i k phi_j} for k = s - n_max.
            let mut e = phase[j].powi(n_max as i32);
            let conj_step = phase[j].conj();
            for g in row_dft.iter_mut() {
                *g += w * e;
                e *= conj_step;
            }
        }
        for (idx, &(n, k)) in basis.entries.iter().enumerate() {
            let slot = (k + n_max as isize) as usize;
            out[idx] += row_dft[slot] * signed_triangle_value(&tri, n, k);
        }
    }
    out
}

/// Samples of the pointwise gradient norm |grad f| on a product grid:
/// |grad f|^2 = |df/dtheta|^2 + |df/dphi|^2 / sin(theta)^2.
pub fn gradient_norm_samples(f: &SpectralFunction, grid: &QuadratureGrid) -> Vec<f64> {
    assert!(grid.is_product(), "gradient sampling needs a product grid");
    let n_max = f.basis.n_max;
    let table = NormAssocTable::new(n_max);
    let mut tri = vec![0.0; triangle_len(n_max)];
    let mut dtri = vec![0.0; triangle_len(n_max)];
    let span = 2 * n_max + 1;
    let n_phi = grid.n_phi();
    let mut out = vec![0.0; grid.len()];
    let phase: Vec<Complex64> = grid
        .phis
        .iter()
        .map(|&p| Complex64::new(libm::cos(p), libm::sin(p)))
        .collect();
    let mut g_dt = vec![Complex64::new(0.0, 0.0); span];
    let mut g_dp = vec![Complex64::new(0.0, 0.0); span];
    for (i, &theta) in grid.thetas.iter().enumerate() {
        table.eval_triangle(theta, &mut tri);
        table.dtheta_triangle(&tri, &mut dtri);
        for v in g_dt.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for v in g_dp.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for (idx, &(n, k)) in f.basis.entries.iter().enumerate() {
            let slot = (k + n_max as isize) as usize;
            g_dt[slot] += f.coeffs[idx] * signed_triangle_value(&dtri, n, k);
            // d/dphi brings down i k.
            g_dp[slot] += f.coeffs[idx]
                * signed_triangle_value(&tri, n, k)
                * Complex64::new(0.0, k as f64);
        }
        let inv_sin = 1.0 / libm::sin(theta);
        for j in 0..n_phi {
            let mut e = phase[j].powi(-(n_max as i32));
            let mut ddt = Complex64::new(0.0, 0.0);
            let mut ddp = Complex64::new(0.0, 0.0);
            for s in 0..span {
                ddt += g_dt[s] * e;
                ddp += g_dp[s] * e;
                e *= phase[j];
            }
            out[i * n_phi + j] =
                libm::sqrt(ddt.norm_sqr() + ddp.norm_sqr() * inv_sin * inv_sin);
        }
    }
    out
}

fn check_p(p: f64) -> Result<(), SpectrumError> {
    if p.is_nan() || p < 1.0 {
        return Err(SpectrumError::InvalidExponent(p));
    }
    Ok(())
}

/// Lp norm of complex samples with respect to a measure; `p` may be
/// `f64::INFINITY` for the essential supremum over the measure support.
pub fn lp_norm_samples(samples: &GridSamples, p: f64, mu: &Measure) -> Result<f64, SpectrumError> {
    check_p(p)?;
    assert!(
        Arc::ptr_eq(&samples.grid, &mu.grid) || samples.grid.len() == mu.grid.len(),
        "samples and measure must share a grid"
    );
    if p.is_infinite() {
        let mut sup: f64 = 0.0;
        for (i, v) in samples.values.iter().enumerate() {
            if mu.density[i] > 0.0 {
                sup = sup.max(v.norm());
            }
        }
        Ok(sup)
    } else {
        let mut acc = 0.0;
        for (i, v) in samples.values.iter().enumerate() {
            let d = mu.density[i];
            if d != 0.0 {
                acc += d * mu.grid.weights[i] * libm::pow(v.norm(), p);
            }
        }
        Ok(libm::pow(acc, 1.0 / p))
    }
}

/// Lp norm of a real sample field (e.g. gradient magnitudes).
pub fn lp_norm_real_samples(values: &[f64], p: f64, mu: &Measure) -> Result<f64, SpectrumError> {
    check_p(p)?;
    assert_eq!(values.len(), mu.grid.len());
    if p.is_infinite() {
        let mut sup: f64 = 0.0;
        for (i, v) in values.iter().enumerate() {
            if mu.density[i] > 0.0 {
                sup = sup.max(v.abs());
            }
        }
        Ok(sup)
    } else {
        let mut acc = 0.0;
        for (i, v) in values.iter().enumerate() {
            let d = mu.density[i];
            if d != 0.0 {
                acc += d * mu.grid.weights[i] * libm::pow(v.abs(), p);
            }
        }
        Ok(libm::pow(acc, 1.0 / p))
    }
}

/// Lp norm of a spectral function with respect to a measure: quadrature
/// over the measure's grid plus exact atom evaluations.
pub fn lp_norm(f: &SpectralFunction, p: f64, mu: &Measure) -> Result<f64, SpectrumError> {
    check_p(p)?;
    let samples = evaluate(f, mu.grid.clone());
    if mu.atoms.is_empty() {
        return lp_norm_samples(&samples, p, mu);
    }
    if p.is_infinite() {
        let mut sup = lp_norm_samples(&samples, p, mu)?;
        for a in &mu.atoms {
            if a.mass > 0.0 {
                sup = sup.max(evaluate_at(f, &a.location).norm());
            }
        }
        Ok(sup)
    } else {
        let grid_part = lp_norm_samples(&samples, p, mu)?;
        let mut acc = libm::pow(grid_part, p);
        for a in &mu.atoms {
            acc += a.mass * libm::pow(evaluate_at(f, &a.location).norm(), p);
        }
        Ok(libm::pow(acc, 1.0 / p))
    }
}

/// Zonal kernel of the degree-n eigenspace centered at xi, scaled by
/// lambda_n^{-1/2}: coefficients lambda_n^{-1/2} conj(Y_{n,k}(xi)).
/// Closed form: lambda_n^{-1/2} (2n+1)/(4 pi) P_n(x . xi).
pub fn zonal(n: usize, xi: &Point3) -> Result<SpectralFunction, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::DegreeZero);
    }
    let basis = Arc::new(eigenspace_basis(n));
    let scale = 1.0 / libm::sqrt(eigenvalue_lambda(n));
    let (theta, phi) = xi.to_spherical();
    let table = NormAssocTable::new(n);
    let mut tri = vec![0.0; triangle_len(n)];
    table.eval_triangle(theta, &mut tri);
    let coeffs = basis
        .entries
        .iter()
        .map(|&(deg, k)| {
            let v = signed_triangle_value(&tri, deg, k);
            // conj(Y_{n,k}(xi)) = Nbar e^{-i k phi}.
            Complex64::new(0.0, -(k as f64) * phi).exp() * v * scale
        })
        .collect();
    SpectralFunction::new(basis, coeffs)
}

/// Closed-form zonal kernel value at x.
pub fn zonal_closed_form(n: usize, xi: &Point3, x: &Point3) -> f64 {
    let scale = 1.0 / libm::sqrt(eigenvalue_lambda(n));
    scale * (2 * n + 1) as f64 / (4.0 * PI) * specfun::legendre_p(n, x.dot(xi).clamp(-1.0, 1.0))
}

/// L^2-normalizing constant of the great-circle beam of degree n:
/// c_n = (surface integral of sin^{2n})^{-1/2}.
pub fn beam_constant(n: usize) -> f64 {
    libm::exp(-0.5 * specfun::wallis_l2n_log(n))
}

/// Degree-n beam concentrated on the great circle normal to `axis`:
/// in the frame where that circle is the equator the beam is
/// c_n (sin theta)^n e^{i n phi}, a single extreme-order harmonic.
/// Coefficients in the fixed frame come from exact projection.
pub fn beam(n: usize, axis: &Point3) -> Result<SpectralFunction, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::DegreeZero);
    }
    let basis = Arc::new(eigenspace_basis(n));
    let axis_obj = geom::GeodesicAxis::new(*axis);
    let (u, v) = axis_obj.frame();
    let c = beam_constant(n);
    let grid = geom::make_grid(n + 2, 2 * n + 3)?;
    let n_phi = grid.n_phi();
    let table = NormAssocTable::new(n);
    let mut tri = vec![0.0; triangle_len(n)];
    let span = 2 * n + 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); span];
    let mut row_dft = vec![Complex64::new(0.0, 0.0); span];
    let phase: Vec<Complex64> = grid
        .phis
        .iter()
        .map(|&p| Complex64::new(libm::cos(p), libm::sin(p)))
        .collect();
    for (i, &theta) in grid.thetas.iter().enumerate() {
        table.eval_triangle(theta, &mut tri);
        for g in row_dft.iter_mut() {
            *g = Complex64::new(0.0, 0.0);
        }
        for j in 0..n_phi {
            let idx = i * n_phi + j;
            let val = beam_value(n, c, &u, &v, &grid.points[idx]) * grid.weights[idx];
            // Accumulate sum_j w G e^{-i k phi_j} for every order k.
            let mut e = phase[j].powi(n as i32);
            let conj_step = phase[j].conj();
            for g in row_dft.iter_mut() {
                // slot s corresponds to k = s - n; e runs from e^{+i n phi}.
                *g += val * e;
                e *= conj_step;
            }
        }
        for (s, g) in row_dft.iter().enumerate() {
            let k = s as isize - n as isize;
            coeffs[s] += g * signed_triangle_value(&tri, n, k);
        }
    }
    SpectralFunction::new(basis, coeffs)
}

/// Closed-form beam value: c_n ((x.u) + i (x.v))^n in polar form.
pub fn beam_value(n: usize, c: f64, u: &Point3, v: &Point3, x: &Point3) -> Complex64 {
    let re = x.dot(u);
    let im = x.dot(v);
    let r = libm::sqrt(re * re + im * im);
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mag = libm::exp(n as f64 * libm::log(r));
    let ang = n as f64 * libm::atan2(im, re);
    Complex64::new(mag * libm::cos(ang) * c, mag * libm::sin(ang) * c)
}

/// Beam closed form against the standard frame of `axis`.
pub fn beam_closed_form(n: usize, axis: &Point3, x: &Point3) -> Complex64 {
    let (u, v) = geom::GeodesicAxis::new(*axis).frame();
    beam_value(n, beam_constant(n), &u, &v, x)
}

/// Band function with coefficients psi(n(n+1)/lambda^2) conj(Y_{n,k}(y)):
/// a smoothed spectral projector kernel anchored at y.
pub fn projector_testfn<F>(lambda: f64, y: &Point3, psi: F) -> Result<SpectralFunction, SpectrumError>
where
    F: Fn(f64) -> f64,
{
    let basis = Arc::new(band_basis(lambda)?);
    let (theta, phi) = y.to_spherical();
    let table = NormAssocTable::new(basis.n_max);
    let mut tri = vec![0.0; triangle_len(basis.n_max)];
    table.eval_triangle(theta, &mut tri);
    let lam2 = lambda * lambda;
    let coeffs = basis
        .entries
        .iter()
        .map(|&(n, k)| {
            let w = psi(n as f64 * (n as f64 + 1.0) / lam2);
            let v = signed_triangle_value(&tri, n, k);
            Complex64::new(0.0, -(k as f64) * phi).exp() * v * w
        })
        .collect();
    SpectralFunction::new(basis, coeffs)
}

/// Random function in the given basis: i.i.d. complex Gaussian
/// coefficients from the seeded generator, normalized to unit L^2 norm.
pub fn random_band_function(basis: Arc<BasisIndex>, seed: u64) -> SpectralFunction {
    let mut g = SplitMix64::new(seed);
    let mut coeffs: Vec<Complex64> = (0..basis.dim()).map(|_| g.next_complex_normal()).collect();
    let norm = libm::sqrt(coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>());
    for c in &mut coeffs {
        *c /= norm;
    }
    SpectralFunction { basis, coeffs }
}

/// Harmonic extension to the cylinder: h(x, t) has coefficients scaled
/// by exp(lambda_n t), so that h is harmonic in (x, t) and h(., 0) = f.
/// Restricted to |t| <= 10 / lambda_max to keep the scaling stable.
pub fn harmonic_extension(f: &SpectralFunction, t: f64) -> Result<SpectralFunction, SpectrumError> {
    let lambda = f.basis.lambda_max().max(1.0);
    let limit = 10.0 / lambda;
    if t.abs() > limit {
        return Err(SpectrumError::ExtensionTooFar { t, limit });
    }
    let coeffs = f
        .basis
        .entries
        .iter()
        .zip(&f.coeffs)
        .map(|(&(n, _), c)| c * libm::exp(eigenvalue_lambda(n) * t))
        .collect();
    Ok(SpectralFunction { basis: f.basis.clone(), coeffs })
}

/// Interior mean-value diagnostic for the harmonic extension of a band
/// function: the ratio |h(z, 0)|^2 / ((lambda/r)^3 * integral of |h|^2
/// over B(z, r/lambda) x [-r/lambda, r/lambda]). Bounded uniformly over
/// the band by the interior estimate for harmonic functions.
pub fn mean_value_ratio(f: &SpectralFunction, z: &Point3, r: f64) -> Result<f64, SpectrumError> {
    let lambda = match f.basis.kind {
        BasisKind::Band { lambda } => lambda,
        BasisKind::Eigenspace { n } => eigenvalue_lambda(n),
    };
    let s = r / lambda;
    let (rho_nodes, rho_weights) = specfun::gauss_legendre_nodes(12)?;
    let (t_nodes, t_weights) = specfun::gauss_legendre_nodes(12)?;
    let n_psi = 24;
    let to_z = geom::Rotation::pole_to(z);
    // Space-time quadrature of |h|^2 over the product of the geodesic
    // ball and the time slab.
    let mut integral = 0.0;
    for (tn, tw) in t_nodes.iter().zip(&t_weights) {
        let t = tn * s;
        let h = harmonic_extension(f, t)?;
        let mut space = 0.0;
        for (rn, rw) in rho_nodes.iter().zip(&rho_weights) {
            let rho = (rn + 1.0) * 0.5 * s;
            let ring_weight = rw * 0.5 * s * libm::sin(rho) * (2.0 * PI / n_psi as f64);
            for j in 0..n_psi {
                let psi = 2.0 * PI * j as f64 / n_psi as f64;
                let p = to_z.apply(&Point3::from_spherical(rho, psi));
                space += ring_weight * evaluate_at(&h, &p).norm_sqr();
            }
        }
        integral += tw * s * space;
    }
    let center = evaluate_at(f, z).norm_sqr();
    let scale = libm::pow(lambda / r, 3.0);
    Ok(center / (scale * integral))
}
