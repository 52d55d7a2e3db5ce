//! Concentration matrices and extremal constants.
//!
//! For a basis (e_j) of a spectral subspace and a measure mu, the Gram
//! matrix G_{ij} = integral of e_i conj(e_j) d mu turns the sampling
//! and embedding functionals into finite eigenproblems: the smallest
//! eigenvalue of the Gram of an indicator region is the sharp p = 2
//! sampling constant, the largest eigenvalue of the Gram of mu is the
//! sharp p = 2 embedding constant. General p has no eigen formulation;
//! `search_extremal_p` runs projected-gradient local search from
//! structured starts and reports an uncertified feasible-point bound.
//!
//! Eigenvalues come from cyclic Jacobi on the real symmetric doubling
//! [[Re G, -Im G], [Im G, Re G]]. Rotations skip entries that are
//! exactly zero, so the block structure of axisymmetric measures
//! (the Gram is then diagonal in the azimuthal order) is exploited
//! without any special-casing.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::geom::{GeomError, Measure, Point3, QuadratureGrid, RegionSpec};
use crate::spectrum::{
    self, analysis, basis_values_at, evaluate, evaluate_at, BasisIndex, SpectralFunction,
    SpectrumError,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalError {
    /// Grid must integrate products of two basis functions exactly.
    GridTooCoarse { needed: usize, exact: usize },
    /// Jacobi failed to reach the off-diagonal tolerance.
    NonConvergence { sweeps: usize },
    /// The Rayleigh denominator vanished.
    ZeroDenominator,
    /// Search requires p > 1.
    InvalidExponent(f64),
    Spectrum(SpectrumError),
    Geometry(GeomError),
}

impl fmt::Display for ExtremalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalError::GridTooCoarse { needed, exact } => {
                write!(f, "grid exact to degree {exact}, need {needed}")
            }
            ExtremalError::NonConvergence { sweeps } => {
                write!(f, "eigensolver did not converge in {sweeps} sweeps")
            }
            ExtremalError::ZeroDenominator => write!(f, "zero denominator in ratio"),
            ExtremalError::InvalidExponent(p) => write!(f, "search needs p > 1, got {p}"),
            ExtremalError::Spectrum(e) => write!(f, "{e}"),
            ExtremalError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl From<SpectrumError> for ExtremalError {
    fn from(e: SpectrumError) -> Self {
        ExtremalError::Spectrum(e)
    }
}

impl From<GeomError> for ExtremalError {
    fn from(e: GeomError) -> Self {
        ExtremalError::Geometry(e)
    }
}

/// Dense Hermitian matrix, row-major.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = HermitianMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Largest |G_{ij} - conj(G_{ji})|.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Rank-one update: self += w v v*.
    pub fn add_rank_one(&mut self, w: f64, v: &[Complex64]) {
        assert_eq!(v.len(), self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i * self.dim + j] += w * v[i] * v[j].conj();
            }
        }
    }
}

/// Eigen-solution of a p = 2 problem, or best local-search bound for
/// general p. `certified` is true only for eigen-solutions.
#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub value: f64,
    pub extremizer: SpectralFunction,
    pub certified: bool,
    pub iterations: usize,
}

fn require_exact(basis: &BasisIndex, grid: &QuadratureGrid) -> Result<(), ExtremalError> {
    let needed = 2 * basis.n_max;
    let exact = grid.exact_degree();
    if exact < needed {
        return Err(ExtremalError::GridTooCoarse { needed, exact });
    }
    Ok(())
}

/// Gram matrix of the basis against a measure, oriented as the
/// quadratic form on coefficient vectors: G_{ij} = sum over nodes of
/// density w conj(e_i) e_j plus atom contributions, so that
/// x* G x = integral of |sum_j x_j e_j|^2 d mu and eigenvectors are
/// extremizer coefficients directly.
///
/// On product grids the azimuthal sums are separated: each colatitude
/// row contributes through T_i(d) = sum_j density w e^{i d phi_j} with
/// d the order difference, which cuts assembly from dim^2 x nodes to
/// dim^2 x rows; rows carrying no mass are skipped.
pub fn gram_matrix(basis: &BasisIndex, mu: &Measure) -> Result<HermitianMatrix, ExtremalError> {
    require_exact(basis, &mu.grid)?;
    let dim = basis.dim();
    let mut g = HermitianMatrix::zeros(dim);
    let grid = &mu.grid;
    if grid.is_product() {
        let n_max = basis.n_max;
        let n_phi = grid.n_phi();
        let n_theta = grid.n_theta();
        // Colatitude factors of every basis entry on every row.
        let table = crate::specfun::NormAssocTable::new(n_max);
        let mut tri = vec![0.0; crate::specfun::triangle_len(n_max)];
        let mut v = vec![0.0; dim * n_theta];
        for (i, &theta) in grid.thetas.iter().enumerate() {
            table.eval_triangle(theta, &mut tri);
            for (idx, &(n, k)) in basis.entries.iter().enumerate() {
                let ka = k.unsigned_abs();
                let mut val = tri[crate::specfun::triangle_idx(n, ka)];
                if k < 0 && ka % 2 == 1 {
                    val = -val;
                }
                v[idx * n_theta + i] = val;
            }
        }
        // Row transforms T_i(d), |d| <= 2 n_max; rows with no mass are
        // marked inactive and skipped in assembly.
        let span = 4 * n_max + 1;
        let mut t = vec![Complex64::new(0.0, 0.0); n_theta * span];
        let mut active = vec![false; n_theta];
        let phase: Vec<Complex64> = grid
            .phis
            .iter()
            .map(|&p| Complex64::new(libm::cos(p), libm::sin(p)))
            .collect();
        for i in 0..n_theta {
            for j in 0..n_phi {
                let idx = i * n_phi + j;
                let rho = mu.density[idx];
                if rho == 0.0 {
                    continue;
                }
                active[i] = true;
                let w = rho * grid.weights[idx];
                let mut e = phase[j].powi(-2 * n_max as i32);
                for d in 0..span {
                    t[i * span + d] += w * e;
                    e *= phase[j];
                }
            }
        }
        let rows: Vec<usize> = (0..n_theta).filter(|&i| active[i]).collect();
        for a in 0..dim {
            let (_, ka) = basis.entries[a];
            for b in a..dim {
                let (_, kb) = basis.entries[b];
                // conj(e_a) e_b carries azimuthal order k_b - k_a.
                let d_slot = (kb - ka + 2 * n_max as isize) as usize;
                let mut acc = Complex64::new(0.0, 0.0);
                for &i in &rows {
                    let prod = v[a * n_theta + i] * v[b * n_theta + i];
                    if prod != 0.0 {
                        acc += prod * t[i * span + d_slot];
                    }
                }
                g.set(a, b, acc);
                if a != b {
                    g.set(b, a, acc.conj());
                }
            }
        }
    } else {
        for (idx, p) in grid.points.iter().enumerate() {
            let rho = mu.density[idx];
            if rho == 0.0 {
                continue;
            }
            let w = rho * grid.weights[idx];
            let vals: Vec<Complex64> =
                basis_values_at(basis, p).iter().map(|z| z.conj()).collect();
            g.add_rank_one(w, &vals);
        }
    }
    for atom in &mu.atoms {
        let vals: Vec<Complex64> = basis_values_at(basis, &atom.location)
            .iter()
            .map(|z| z.conj())
            .collect();
        g.add_rank_one(atom.mass, &vals);
    }
    Ok(g)
}

/// Cyclic Jacobi on a real symmetric matrix (row-major, modified in
/// place). Returns ascending eigenvalues, optional eigenvectors as
/// columns, and the sweep count. Entries that are exactly zero are
/// never rotated, so block-diagonal inputs cost only their blocks.
pub fn sym_eigs(
    a: &mut [f64],
    n: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<f64>>, usize), ExtremalError> {
    assert_eq!(a.len(), n * n);
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    let fro = libm::sqrt(a.iter().map(|x| x * x).sum::<f64>());
    let tol = 1e-12 * fro.max(f64::MIN_POSITIVE);
    // Entries below tol/n are zeroed instead of rotated: the combined
    // perturbation stays under the convergence tolerance, and nearly
    // block-diagonal matrices (axisymmetric Grams with phase-roundoff
    // crumbs off the blocks) cost only their blocks.
    let negligible = tol / n as f64;
    let max_sweeps = 60;
    let mut sweeps = 0;
    loop {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        let off = libm::sqrt(2.0 * off);
        if off <= tol {
            break;
        }
        if sweeps >= max_sweeps {
            return Err(ExtremalError::NonConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                if apq.abs() <= negligible {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // Column rotation on (p, q), then the symmetric row
                // rotation; afterwards a[p][q] is exactly zero.
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = c * arp - s * arq;
                    a[r * n + q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = a[p * n + r];
                    let aqr = a[q * n + r];
                    a[p * n + r] = c * apr - s * aqr;
                    a[q * n + r] = s * apr + c * aqr;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                if let Some(vm) = v.as_mut() {
                    for r in 0..n {
                        let vrp = vm[r * n + p];
                        let vrq = vm[r * n + q];
                        vm[r * n + p] = c * vrp - s * vrq;
                        vm[r * n + q] = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let evals: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = v.map(|vm| {
        let mut out = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for r in 0..n {
                out[r * n + col] = vm[r * n + src];
            }
        }
        out
    });
    Ok((evals, vectors, sweeps))
}

/// Eigenvalues (ascending) and optional eigenvectors of a Hermitian
/// matrix via the real symmetric doubling [[Re, -Im], [Im, Re]]. Each
/// eigenvalue of H appears twice in the doubling; the sorted list is
/// deduplicated by taking alternate entries.
pub fn hermitian_eigs(
    h: &HermitianMatrix,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Vec<Complex64>>>, usize), ExtremalError> {
    let d = h.dim;
    let n = 2 * d;
    let mut m = vec![0.0; n * n];
    for i in 0..d {
        for j in 0..d {
            let z = h.get(i, j);
            m[i * n + j] = z.re;
            m[i * n + (j + d)] = -z.im;
            m[(i + d) * n + j] = z.im;
            m[(i + d) * n + (j + d)] = z.re;
        }
    }
    let (evals2, vecs2, sweeps) = sym_eigs(&mut m, n, want_vectors)?;
    let mut evals = Vec::with_capacity(d);
    let mut vectors = want_vectors.then(|| Vec::with_capacity(d));
    for pair in 0..d {
        let idx = 2 * pair;
        debug_assert!(
            (evals2[idx + 1] - evals2[idx]).abs()
                <= 1e-9 * evals2[idx].abs().max(1.0) + 1e-9,
            "doubling pair mismatch"
        );
        evals.push(evals2[idx]);
        if let (Some(out), Some(vm)) = (vectors.as_mut(), vecs2.as_ref()) {
            // Doubled eigenvector [u; v] encodes the complex vector
            // u + i v; any vector in the doubled pair-space maps to the
            // same complex line, up to phase.
            let mut x: Vec<Complex64> = (0..d)
                .map(|r| Complex64::new(vm[r * n + idx], vm[(r + d) * n + idx]))
                .collect();
            let norm = libm::sqrt(x.iter().map(|z| z.norm_sqr()).sum::<f64>());
            for z in &mut x {
                *z /= norm;
            }
            out.push(x);
        }
    }
    Ok((evals, vectors, sweeps))
}

/// Sharp p = 2 sampling constant of a region: smallest Rayleigh
/// quotient of the region's Gram matrix over the subspace. Certified.
pub fn ls_constant_2(
    region: &RegionSpec,
    basis: Arc<BasisIndex>,
    grid: Arc<QuadratureGrid>,
) -> Result<ExtremalResult, ExtremalError> {
    let mu = crate::geom::region_indicator(region, grid)?;
    let g = gram_matrix(&basis, &mu)?;
    let (evals, vecs, sweeps) = hermitian_eigs(&g, true)?;
    let coeffs = vecs.unwrap().swap_remove(0);
    // The Gram of a nonnegative measure is positive semidefinite;
    // rounding can leave a deeply-excluded eigenvalue a hair below
    // zero.  Clamp those, but let a genuinely negative value surface.
    let value = if evals[0] < 0.0 && evals[0] > -1e-9 { 0.0 } else { evals[0] };
    Ok(ExtremalResult {
        value,
        extremizer: SpectralFunction::new(basis, coeffs)?,
        certified: true,
        iterations: sweeps,
    })
}

/// Sharp p = 2 embedding constant of a measure: largest Rayleigh
/// quotient of its Gram matrix. Certified.
pub fn carleson_constant_2(
    mu: &Measure,
    basis: Arc<BasisIndex>,
) -> Result<ExtremalResult, ExtremalError> {
    let g = gram_matrix(&basis, mu)?;
    let (evals, vecs, sweeps) = hermitian_eigs(&g, true)?;
    let top = evals.len() - 1;
    let coeffs = vecs.unwrap().swap_remove(top);
    Ok(ExtremalResult {
        value: evals[top],
        extremizer: SpectralFunction::new(basis, coeffs)?,
        certified: true,
        iterations: sweeps,
    })
}

/// Concentration ratio (integral of |f|^p d mu) / (integral |f|^p dV),
/// both integrals over the measure's grid.
pub fn ratio_p(f: &SpectralFunction, mu: &Measure, p: f64) -> Result<f64, ExtremalError> {
    if !(p >= 1.0) {
        return Err(ExtremalError::InvalidExponent(p));
    }
    let samples = evaluate(f, mu.grid.clone());
    let mut num = 0.0;
    let mut den = 0.0;
    for (idx, v) in samples.values.iter().enumerate() {
        let a = libm::pow(v.norm(), p);
        den += samples.grid.weights[idx] * a;
        let rho = mu.density[idx];
        if rho != 0.0 {
            num += rho * samples.grid.weights[idx] * a;
        }
    }
    for atom in &mu.atoms {
        num += atom.mass * libm::pow(evaluate_at(f, &atom.location).norm(), p);
    }
    if den <= f64::MIN_POSITIVE {
        return Err(ExtremalError::ZeroDenominator);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalDirection {
    Min,
    Max,
}

struct Objective<'a> {
    basis: &'a Arc<BasisIndex>,
    mu: &'a Measure,
    p: f64,
    atom_values: Vec<Vec<Complex64>>,
}

impl<'a> Objective<'a> {
    fn new(basis: &'a Arc<BasisIndex>, mu: &'a Measure, p: f64) -> Self {
        let atom_values =
            mu.atoms.iter().map(|a| basis_values_at(basis, &a.location)).collect();
        Objective { basis, mu, p, atom_values }
    }

    /// Ratio value and its complex gradient with respect to the
    /// coefficients. The gradient of each integral I(nu) is
    /// p |f|^{p-2} f tested against conj(e_j) d nu.
    fn value_grad(&self, coeffs: &[Complex64]) -> (f64, Vec<Complex64>) {
        let f = SpectralFunction { basis: self.basis.clone(), coeffs: coeffs.to_vec() };
        let samples = evaluate(&f, self.mu.grid.clone());
        let p = self.p;
        let grid = &self.mu.grid;
        let mut i_mu = 0.0;
        let mut i_v = 0.0;
        let mut wf_mu = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut wf_v = vec![Complex64::new(0.0, 0.0); grid.len()];
        for (idx, val) in samples.values.iter().enumerate() {
            let m = val.norm();
            let a = libm::pow(m, p);
            let w = grid.weights[idx];
            i_v += w * a;
            let fac = if m > 1e-150 { libm::pow(m, p - 2.0) } else { 0.0 };
            let core = val * (p * fac);
            wf_v[idx] = core * w;
            let rho = self.mu.density[idx];
            if rho != 0.0 {
                i_mu += rho * w * a;
                wf_mu[idx] = core * (w * rho);
            }
        }
        let mut g_mu = analysis(self.basis, grid, &wf_mu);
        let g_v = analysis(self.basis, grid, &wf_v);
        for (atom, vals) in self.mu.atoms.iter().zip(&self.atom_values) {
            let mut fx = Complex64::new(0.0, 0.0);
            for (v, c) in vals.iter().zip(coeffs) {
                fx += v * c;
            }
            let m = fx.norm();
            i_mu += atom.mass * libm::pow(m, p);
            let fac = if m > 1e-150 { libm::pow(m, p - 2.0) } else { 0.0 };
            let scale = atom.mass * p * fac;
            for (g, v) in g_mu.iter_mut().zip(vals) {
                *g += fx * v.conj() * scale;
            }
        }
        let value = i_mu / i_v;
        // Quotient rule: grad R = (grad I_mu - R grad I_V) / I_V.
        let grad = g_mu
            .iter()
            .zip(&g_v)
            .map(|(a, b)| (a - b * value) / i_v)
            .collect();
        (value, grad)
    }
}

fn normalize(coeffs: &mut [Complex64]) {
    let norm = libm::sqrt(coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>());
    for c in coeffs.iter_mut() {
        *c /= norm;
    }
}

/// One projected-gradient run; returns (value, point, iterations).
fn projected_gradient(
    obj: &Objective<'_>,
    start: Vec<Complex64>,
    direction: ExtremalDirection,
) -> (f64, Vec<Complex64>, usize) {
    let sign = match direction {
        ExtremalDirection::Max => 1.0,
        ExtremalDirection::Min => -1.0,
    };
    let mut x = start;
    normalize(&mut x);
    let (mut value, mut grad) = obj.value_grad(&x);
    let mut iterations = 0;
    for _ in 0..500 {
        iterations += 1;
        // Project the gradient onto the tangent space of the sphere.
        let inner: Complex64 = x.iter().zip(&grad).map(|(a, b)| a.conj() * b).sum();
        let tangent: Vec<Complex64> =
            grad.iter().zip(&x).map(|(g, xi)| g - inner * xi).collect();
        let tnorm2: f64 = tangent.iter().map(|t| t.norm_sqr()).sum();
        if tnorm2 <= 1e-30 {
            break;
        }
        let mut step = 1.0;
        let mut accepted = false;
        let mut moved = 0.0;
        for _ in 0..45 {
            let mut cand: Vec<Complex64> = x
                .iter()
                .zip(&tangent)
                .map(|(xi, t)| xi + t * (sign * step))
                .collect();
            normalize(&mut cand);
            let (cand_value, cand_grad) = obj.value_grad(&cand);
            if sign * (cand_value - value) >= 1e-4 * step * tnorm2 {
                moved = libm::sqrt(
                    cand.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>(),
                );
                x = cand;
                value = cand_value;
                grad = cand_grad;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted || moved < 1e-9 {
            break;
        }
    }
    (value, x, iterations)
}

/// Direction the measure's grid mass points toward, for centering
/// structured starts; falls back to the first atom, then the pole.
fn mass_center(mu: &Measure) -> Point3 {
    if let Some(a) = mu.atoms.first() {
        return a.location;
    }
    let mut m = [0.0; 3];
    for (idx, p) in mu.grid.points.iter().enumerate() {
        let w = mu.density[idx] * mu.grid.weights[idx];
        m[0] += w * p.x;
        m[1] += w * p.y;
        m[2] += w * p.z;
    }
    let norm = libm::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    if norm > 1e-9 {
        Point3::new(m[0], m[1], m[2])
    } else {
        Point3::north_pole()
    }
}

/// Local search for the p-ratio extremum over the unit coefficient
/// sphere: projected gradient with backtracking from structured starts
/// (peaked kernel, tangential beam, smoothed projector or random, the
/// two p = 2 eigenvectors when the grid is exact, and random fills).
/// The result is a feasible-point bound, never certified.
pub fn search_extremal_p(
    basis: Arc<BasisIndex>,
    mu: &Measure,
    p: f64,
    direction: ExtremalDirection,
    seed: u64,
    restarts: usize,
) -> Result<ExtremalResult, ExtremalError> {
    if !(p > 1.0) {
        return Err(ExtremalError::InvalidExponent(p));
    }
    let obj = Objective::new(&basis, mu, p);
    let center = mass_center(mu);
    let dim = basis.dim();
    let n_top = basis.n_max;
    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    // Peaked zonal-type start: reproducing-kernel coefficients of the
    // top degree at the mass center.
    {
        let vals = basis_values_at(&basis, &center);
        let mut c = vec![Complex64::new(0.0, 0.0); dim];
        for (idx, &(n, _)) in basis.entries.iter().enumerate() {
            if n == n_top {
                c[idx] = vals[idx].conj();
            }
        }
        starts.push(c);
    }
    // Beam through the mass center: great circle orthogonal to a frame
    // vector of the center.
    if n_top >= 1 {
        let (axis, _) = crate::geom::GeodesicAxis::new(center).frame();
        if let Ok(b) = spectrum::beam(n_top, &axis) {
            let mut c = vec![Complex64::new(0.0, 0.0); dim];
            for (slot, &(_, k)) in b.basis.entries.iter().enumerate() {
                if let Some(pos) = basis.position(n_top, k) {
                    c[pos] = b.coeffs[slot];
                }
            }
            starts.push(c);
        }
    }
    // Smoothed projector at the center for band bases; spread kernel
    // over all degrees otherwise.
    {
        let vals = basis_values_at(&basis, &center);
        let lam = basis.lambda_max().max(1.0);
        let c: Vec<Complex64> = basis
            .entries
            .iter()
            .zip(&vals)
            .map(|(&(n, _), v)| {
                let s = n as f64 * (n as f64 + 1.0) / (lam * lam);
                v.conj() * crate::kernels::psi_plateau(s.min(0.999), 0.5, 1.0)
            })
            .collect();
        starts.push(c);
    }
    // p = 2 eigenvectors bracket the p = 2 problem; useful starts for
    // nearby p when the grid is exact enough to form the Gram.
    if mu.grid.exact_degree() >= 2 * basis.n_max {
        if let Ok(g) = gram_matrix(&basis, mu) {
            if let Ok((_, Some(mut vecs), _)) = hermitian_eigs(&g, true) {
                let top = vecs.len() - 1;
                starts.push(vecs.swap_remove(top));
                if !vecs.is_empty() {
                    starts.push(vecs.swap_remove(0));
                }
            }
        }
    }
    let mut salt = 0;
    while starts.len() < restarts.max(1) {
        let f = spectrum::random_band_function(basis.clone(), seed.wrapping_add(salt));
        starts.push(f.coeffs);
        salt += 1;
    }
    starts.truncate(restarts.max(1));
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    let mut total_iters = 0;
    for start in starts {
        if start.iter().all(|c| c.norm_sqr() == 0.0) {
            continue;
        }
        let (value, x, iters) = projected_gradient(&obj, start, direction);
        total_iters += iters;
        let better = match &best {
            None => true,
            Some((bv, _)) => match direction {
                ExtremalDirection::Max => value > *bv,
                ExtremalDirection::Min => value < *bv,
            },
        };
        if better {
            best = Some((value, x));
        }
    }
    let (value, coeffs) = best.expect("at least one start");
    Ok(ExtremalResult {
        value,
        extremizer: SpectralFunction::new(basis, coeffs)?,
        certified: false,
        iterations: total_iters,
    })
}
