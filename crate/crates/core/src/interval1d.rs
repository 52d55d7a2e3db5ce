//! One-dimensional boundary laboratory on [0, pi].
//!
//! Explicit Dirichlet and Neumann eigenbases make every constant
//! checkable by hand: sampling and embedding behavior at the boundary,
//! the boundary atom that embeds harmlessly under Dirichlet but grows
//! linearly under Neumann, near-boundary mass smallness, and the
//! Neumann heat diagonal. The model is one-dimensional on purpose;
//! every table row downstream carries the `interval-1d` label so these
//! results are never mistaken for sphere results.
//!
//! Gram matrices against sampled densities are assembled from cosine
//! moments: products of modes reduce to cos((j-k)x) and cos((j+k)x),
//! so one pass of composite Simpson per moment covers the whole
//! matrix. Simpson cell counts are accuracy-driven (error for cos(mx)
//! is pi^5 m^4 / (180 n^4)), with the coarse floor of 8 modes' worth
//! of cells enforced as a precondition.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::extremal::{self, ExtremalError};

/// Label for downstream outputs of this module.
pub const MODEL_LABEL: &str = "interval-1d";

#[derive(Debug, Clone, PartialEq)]
pub enum IntervalError {
    /// Band limit must give at least one oscillating mode.
    InvalidBand(f64),
    /// Composite Simpson needs an even, positive cell count.
    InvalidCells(usize),
    /// Fewer cells than the 8-per-mode floor.
    CoarseGrid { cells: usize, needed: usize },
    NegativeDensity,
    /// Atom position outside [0, pi].
    AtomOutOfRange(f64),
    InvalidExponent(f64),
    Eigen(ExtremalError),
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::InvalidBand(l) => write!(f, "band limit {l} below 1"),
            IntervalError::InvalidCells(n) => write!(f, "cell count {n} must be even and positive"),
            IntervalError::CoarseGrid { cells, needed } => {
                write!(f, "{cells} cells, need at least {needed}")
            }
            IntervalError::NegativeDensity => write!(f, "density must be nonnegative"),
            IntervalError::AtomOutOfRange(x) => write!(f, "atom at {x} outside [0, pi]"),
            IntervalError::InvalidExponent(p) => write!(f, "exponent {p} outside [1, inf)"),
            IntervalError::Eigen(e) => write!(f, "{e}"),
        }
    }
}

impl From<ExtremalError> for IntervalError {
    fn from(e: ExtremalError) -> Self {
        IntervalError::Eigen(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

impl BoundaryCondition {
    pub fn label(&self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

/// Band-limited eigenbasis of -d^2/dx^2 on [0, pi]: frequencies are
/// the integers k <= floor(lambda). Dirichlet modes sqrt(2/pi) sin(kx)
/// for k = 1..K; Neumann modes 1/sqrt(pi) and sqrt(2/pi) cos(kx).
#[derive(Debug, Clone, Copy)]
pub struct IntervalBasis {
    pub bc: BoundaryCondition,
    pub lambda: f64,
    pub k_max: usize,
}

impl IntervalBasis {
    pub fn new(bc: BoundaryCondition, lambda: f64) -> Result<Self, IntervalError> {
        if !(lambda >= 1.0) || !lambda.is_finite() {
            return Err(IntervalError::InvalidBand(lambda));
        }
        Ok(IntervalBasis { bc, lambda, k_max: libm::floor(lambda) as usize })
    }

    pub fn dim(&self) -> usize {
        match self.bc {
            BoundaryCondition::Dirichlet => self.k_max,
            BoundaryCondition::Neumann => self.k_max + 1,
        }
    }

    /// Value of mode j at x.
    pub fn mode(&self, j: usize, x: f64) -> f64 {
        let amp = libm::sqrt(2.0 / PI);
        match self.bc {
            BoundaryCondition::Dirichlet => amp * libm::sin((j + 1) as f64 * x),
            BoundaryCondition::Neumann => {
                if j == 0 {
                    1.0 / libm::sqrt(PI)
                } else {
                    amp * libm::cos(j as f64 * x)
                }
            }
        }
    }

    /// f(x) = sum_j coeffs[j] mode_j(x).
    pub fn eval(&self, coeffs: &[f64], x: f64) -> f64 {
        assert_eq!(coeffs.len(), self.dim());
        coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * self.mode(j, x))
            .sum()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntervalAtom {
    pub position: f64,
    pub mass: f64,
}

/// Density sampled on the uniform Simpson grid x_i = pi i / cells,
/// plus point masses.
#[derive(Debug, Clone)]
pub struct IntervalMeasure {
    pub cells: usize,
    pub density: Vec<f64>,
    pub atoms: Vec<IntervalAtom>,
}

impl IntervalMeasure {
    pub fn lebesgue(cells: usize) -> Result<Self, IntervalError> {
        if cells == 0 || cells % 2 != 0 {
            return Err(IntervalError::InvalidCells(cells));
        }
        Ok(IntervalMeasure { cells, density: vec![1.0; cells + 1], atoms: Vec::new() })
    }

    pub fn from_density(cells: usize, density: Vec<f64>) -> Result<Self, IntervalError> {
        if cells == 0 || cells % 2 != 0 || density.len() != cells + 1 {
            return Err(IntervalError::InvalidCells(cells));
        }
        if density.iter().any(|&d| d < 0.0 || !d.is_finite()) {
            return Err(IntervalError::NegativeDensity);
        }
        Ok(IntervalMeasure { cells, density, atoms: Vec::new() })
    }

    pub fn with_atom(mut self, position: f64, mass: f64) -> Result<Self, IntervalError> {
        if !(0.0..=PI).contains(&position) {
            return Err(IntervalError::AtomOutOfRange(position));
        }
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(IntervalError::NegativeDensity);
        }
        self.atoms.push(IntervalAtom { position, mass });
        Ok(self)
    }
}

/// Even Simpson cell count making the worst cosine-moment error
/// (frequency 2 floor(lambda)) at most `target`:
/// n = 2 k (pi^5 / (180 target))^{1/4}, floored at 8 cells per mode.
pub fn simpson_cells(lambda: f64, target: f64) -> usize {
    let k = libm::floor(lambda).max(1.0);
    let n = 2.0 * k * libm::pow(libm::pow(PI, 5.0) / (180.0 * target), 0.25);
    let n = libm::ceil(n) as usize;
    let n = n.max(8 * k as usize).max(16);
    n + n % 2
}

/// Composite Simpson weights times density, one pass.
fn simpson_weighted_moment(mu: &IntervalMeasure, m: usize) -> f64 {
    let n = mu.cells;
    let h = PI / n as f64;
    let mut acc = 0.0;
    for (i, &rho) in mu.density.iter().enumerate() {
        if rho == 0.0 {
            continue;
        }
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * rho * libm::cos(m as f64 * h * i as f64);
    }
    acc * h / 3.0
}

/// Real symmetric matrix, row-major.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    pub dim: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Ascending eigenvalues by cyclic Jacobi.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, IntervalError> {
        let mut work = self.data.clone();
        let (evals, _, _) = extremal::sym_eigs(&mut work, self.dim, false)?;
        Ok(evals)
    }

    /// Ascending eigenvalues with eigenvectors as columns.
    pub fn eigen_decomposition(&self) -> Result<(Vec<f64>, Vec<f64>), IntervalError> {
        let mut work = self.data.clone();
        let (evals, vecs, _) = extremal::sym_eigs(&mut work, self.dim, true)?;
        Ok((evals, vecs.unwrap()))
    }
}

/// Gram matrix G_{jk} = integral of e_j e_k d mu, assembled from the
/// cosine moments of the density plus exact atom contributions.
pub fn interval_gram(basis: &IntervalBasis, mu: &IntervalMeasure) -> Result<SymMatrix, IntervalError> {
    let needed = 8 * basis.k_max;
    if mu.cells < needed {
        return Err(IntervalError::CoarseGrid { cells: mu.cells, needed });
    }
    let dim = basis.dim();
    let mut moments = vec![0.0; 2 * basis.k_max + 1];
    for (m, slot) in moments.iter_mut().enumerate() {
        *slot = simpson_weighted_moment(mu, m);
    }
    let mut g = SymMatrix { dim, data: vec![0.0; dim * dim] };
    match basis.bc {
        BoundaryCondition::Dirichlet => {
            // sin(jx) sin(kx) = [cos((j-k)x) - cos((j+k)x)] / 2.
            for a in 0..dim {
                let j = a + 1;
                for b in a..dim {
                    let k = b + 1;
                    let v = (moments[k - j] - moments[j + k]) / PI;
                    g.data[a * dim + b] = v;
                    g.data[b * dim + a] = v;
                }
            }
        }
        BoundaryCondition::Neumann => {
            for a in 0..dim {
                for b in a..dim {
                    let v = if a == 0 && b == 0 {
                        moments[0] / PI
                    } else if a == 0 {
                        libm::sqrt(2.0) / PI * moments[b]
                    } else {
                        // cos(jx) cos(kx) = [cos((j-k)x) + cos((j+k)x)] / 2.
                        (moments[b - a] + moments[a + b]) / PI
                    };
                    g.data[a * dim + b] = v;
                    g.data[b * dim + a] = v;
                }
            }
        }
    }
    for atom in &mu.atoms {
        if atom.mass == 0.0 {
            continue;
        }
        let vals: Vec<f64> = (0..dim).map(|j| basis.mode(j, atom.position)).collect();
        for a in 0..dim {
            if vals[a] == 0.0 {
                continue;
            }
            for b in 0..dim {
                g.data[a * dim + b] += atom.mass * vals[a] * vals[b];
            }
        }
    }
    Ok(g)
}

/// One row of the boundary-atom embedding table.
#[derive(Debug, Clone, Copy)]
pub struct CounterexampleRow {
    pub lambda: f64,
    pub dirichlet_carleson2: f64,
    pub neumann_carleson2: f64,
    /// mu([0, 1/lambda]) / |[0, 1/lambda]| = 1 + lambda.
    pub sparsity_ratio: f64,
}

/// Embedding constants of mu = Lebesgue + unit atom at the boundary
/// point 0, under both boundary conditions. Dirichlet modes vanish at
/// the atom, so the constant stays 1; Neumann modes do not, and the
/// constant grows like (2 floor(lambda) + 1) / pi. The sparsity ratio
/// of mu at scale 1/lambda is 1 + lambda, unbounded: the atom measure
/// embeds under Dirichlet without being sparse.
pub fn dirichlet_counterexample(lambda_list: &[f64]) -> Result<Vec<CounterexampleRow>, IntervalError> {
    let mut rows = Vec::with_capacity(lambda_list.len());
    for &lambda in lambda_list {
        if !(lambda >= 2.0) {
            return Err(IntervalError::InvalidBand(lambda));
        }
        let cells = simpson_cells(lambda, 1e-10);
        let mu = IntervalMeasure::lebesgue(cells)?.with_atom(0.0, 1.0)?;
        let mut values = [0.0; 2];
        for (slot, bc) in
            [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann].iter().enumerate()
        {
            let basis = IntervalBasis::new(*bc, lambda)?;
            let g = interval_gram(&basis, &mu)?;
            let evals = g.eigenvalues()?;
            values[slot] = evals[evals.len() - 1];
        }
        rows.push(CounterexampleRow {
            lambda,
            dirichlet_carleson2: values[0],
            neumann_carleson2: values[1],
            sparsity_ratio: 1.0 + lambda,
        });
    }
    Ok(rows)
}

/// Simpson integral of |f|^p over [lo, hi] with the given cells.
fn lp_mass(basis: &IntervalBasis, coeffs: &[f64], lo: f64, hi: f64, p: f64, cells: usize) -> f64 {
    let n = cells + cells % 2;
    let h = (hi - lo) / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let v = basis.eval(coeffs, lo + h * i as f64).abs();
        acc += w * libm::pow(v, p);
    }
    acc * h / 3.0
}

/// Near-boundary mass fraction ||f||_{L^p(0, delta/lambda)} divided by
/// ||f||_{L^p(0, pi)}.
pub fn near_boundary_mass(
    basis: &IntervalBasis,
    coeffs: &[f64],
    delta: f64,
    p: f64,
) -> Result<f64, IntervalError> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(IntervalError::InvalidExponent(p));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(IntervalError::InvalidBand(delta));
    }
    let s = delta / basis.lambda;
    let near = lp_mass(basis, coeffs, 0.0, s, p, 2048);
    let denom_cells = (128 * basis.k_max * p as usize).max(4096);
    let total = lp_mass(basis, coeffs, 0.0, PI, p, denom_cells);
    Ok(libm::pow(near / total, 1.0 / p))
}

/// One heat-diagonal sample.
#[derive(Debug, Clone, Copy)]
pub struct HeatDiagRow {
    pub t: f64,
    pub x: f64,
    pub diag: f64,
    pub diag_times_sqrt_t: f64,
}

/// Neumann heat diagonal p(t, x, x) = 1/pi + (2/pi) sum_k e^{-k^2 t}
/// cos^2(kx), truncated when the tail drops below 1e-15.
pub fn neumann_heat_diag(t_list: &[f64], xs: &[f64]) -> Vec<HeatDiagRow> {
    let mut rows = Vec::with_capacity(t_list.len() * xs.len());
    for &t in t_list {
        let k_max = libm::ceil(libm::sqrt(40.0 / t.max(1e-6))) as usize;
        for &x in xs {
            let mut p = 1.0 / PI;
            for k in 1..=k_max {
                let c = libm::cos(k as f64 * x);
                p += 2.0 / PI * libm::exp(-((k * k) as f64) * t) * c * c;
            }
            rows.push(HeatDiagRow { t, x, diag: p, diag_times_sqrt_t: p * libm::sqrt(t) });
        }
    }
    rows
}

/// Dirichlet heat diagonal, for the boundary contrast: vanishes
/// identically at x = 0.
pub fn dirichlet_heat_diag(t: f64, x: f64) -> f64 {
    let k_max = libm::ceil(libm::sqrt(40.0 / t.max(1e-6))) as usize;
    let mut p = 0.0;
    for k in 1..=k_max {
        let s = libm::sin(k as f64 * x);
        p += 2.0 / PI * libm::exp(-((k * k) as f64) * t) * s * s;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn slope(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        for (x, y) in xs.iter().zip(ys) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
        sxy / sxx
    }

    #[test]
    fn bases_are_orthonormal() {
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for lambda in [10.0, 16.7] {
                let basis = IntervalBasis::new(bc, lambda).unwrap();
                let mu = IntervalMeasure::lebesgue(simpson_cells(lambda, 1e-13)).unwrap();
                let g = interval_gram(&basis, &mu).unwrap();
                for i in 0..g.dim {
                    for j in 0..g.dim {
                        let expect = if i == j { 1.0 } else { 0.0 };
                        assert!(
                            (g.get(i, j) - expect).abs() < 1e-12,
                            "{bc:?} lambda={lambda} ({i},{j}) {}",
                            g.get(i, j)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn boundary_atom_is_invisible_to_dirichlet() {
        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, 12.0).unwrap();
        let cells = simpson_cells(12.0, 1e-13);
        let plain = interval_gram(&basis, &IntervalMeasure::lebesgue(cells).unwrap()).unwrap();
        let with_atom = interval_gram(
            &basis,
            &IntervalMeasure::lebesgue(cells).unwrap().with_atom(0.0, 1.0).unwrap(),
        )
        .unwrap();
        // sin(k 0) = 0 exactly: the atom contributes nothing at all.
        for (a, b) in plain.data.iter().zip(&with_atom.data) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn neumann_boundary_atom_rank_one_law() {
        let lambda = 10.0;
        let basis = IntervalBasis::new(BoundaryCondition::Neumann, lambda).unwrap();
        let mu = IntervalMeasure::lebesgue(simpson_cells(lambda, 1e-13))
            .unwrap()
            .with_atom(0.0, 1.0)
            .unwrap();
        let g = interval_gram(&basis, &mu).unwrap();
        let evals = g.eigenvalues().unwrap();
        // lambda_max = 1 + sum e_k(0)^2 = 1 + (2 floor(lambda) + 1)/pi.
        let expect = 1.0 + 21.0 / PI;
        let top = evals[evals.len() - 1];
        assert!((top - expect).abs() < 1e-9, "top={top} expect={expect}");
        // All other eigenvalues stay at 1.
        for e in &evals[..evals.len() - 1] {
            assert!((e - 1.0).abs() < 1e-9);
        }
        // Top eigenvector is the boundary-value vector, normalized.
        let (_, vecs) = g.eigen_decomposition().unwrap();
        let dim = g.dim;
        let norm2 = (2.0 * lambda.floor() + 1.0) / PI;
        for j in 0..dim {
            let expect_j = basis.mode(j, 0.0) / norm2.sqrt();
            let got = vecs[j * dim + (dim - 1)];
            assert!((got.abs() - expect_j.abs()).abs() < 1e-8);
        }
    }

    #[test]
    fn boundary_atom_table() {
        let lambdas = [8.0, 16.0, 32.0, 64.0, 128.0, 256.0];
        let rows = dirichlet_counterexample(&lambdas).unwrap();
        for r in &rows {
            assert!((r.dirichlet_carleson2 - 1.0).abs() < 1e-9, "{:?}", r);
            let expect = 1.0 + (2.0 * r.lambda.floor() + 1.0) / PI;
            assert!((r.neumann_carleson2 - expect).abs() < 1e-8);
            assert!((r.sparsity_ratio - (1.0 + r.lambda)).abs() < 1e-12);
        }
        // Neumann growth is linear in lambda: the atom part has log-log
        // slope 1 up to the additive Lebesgue offset.
        let xs: Vec<f64> = rows.iter().map(|r| r.lambda.ln()).collect();
        let excess: Vec<f64> = rows.iter().map(|r| (r.neumann_carleson2 - 1.0).ln()).collect();
        let s_excess = slope(&xs, &excess);
        assert!((s_excess - 1.0).abs() < 0.05, "excess slope {s_excess}");
        let raw: Vec<f64> = rows.iter().map(|r| r.neumann_carleson2.ln()).collect();
        let s_raw = slope(&xs, &raw);
        assert!(s_raw > 0.9 && s_raw < 1.05, "raw slope {s_raw}");
        // Sparsity arithmetic: at lambda = 99 the ratio is exactly 100.
        let one = dirichlet_counterexample(&[99.0]).unwrap();
        assert_eq!(one[0].sparsity_ratio, 100.0);
        assert!(dirichlet_counterexample(&[1.5]).is_err());
    }

    #[test]
    fn interior_atom_grows_under_dirichlet_too() {
        // An atom away from the boundary is seen by the sine modes, so
        // the embedding constant grows with lambda: the boundary
        // location is what makes the Dirichlet case flat.
        let z = 1.0;
        let mut values = Vec::new();
        let lambdas = [8.0, 16.0, 32.0, 64.0];
        for &lambda in &lambdas {
            let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, lambda).unwrap();
            let mu = IntervalMeasure::lebesgue(simpson_cells(lambda, 1e-10))
                .unwrap()
                .with_atom(z, 1.0)
                .unwrap();
            let evals = interval_gram(&basis, &mu).unwrap().eigenvalues().unwrap();
            values.push(evals[evals.len() - 1]);
        }
        let xs: Vec<f64> = lambdas.iter().map(|l| l.ln()).collect();
        let ys: Vec<f64> = values.iter().map(|v| (v - 1.0).ln()).collect();
        let s = slope(&xs, &ys);
        assert!(s > 0.85 && s < 1.1, "interior-atom slope {s}");
    }

    #[test]
    fn near_boundary_single_mode() {
        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, 1.0).unwrap();
        let coeffs = [1.0];
        let delta = 0.1;
        let r = near_boundary_mass(&basis, &coeffs, delta, 2.0).unwrap();
        // Exact: integral of sin^2 over [0, 0.1] = delta/2 - sin(2 delta)/4.
        let near = delta / 2.0 - libm::sin(2.0 * delta) / 4.0;
        let expect = (near / (PI / 2.0)).sqrt();
        assert!((r - expect).abs() < 1e-6 * expect);
        // Much smaller than delta itself.
        assert!(r < delta * delta * 2.5);
    }

    #[test]
    fn near_boundary_random_band_functions() {
        let mut rng = SplitMix64::new(77);
        for &lambda in &[16.0, 64.0] {
            let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, lambda).unwrap();
            for _ in 0..25 {
                let coeffs: Vec<f64> = (0..basis.dim()).map(|_| rng.next_normal()).collect();
                for &delta in &[0.05, 0.2] {
                    for &p in &[2.0, 4.0] {
                        let r = near_boundary_mass(&basis, &coeffs, delta, p).unwrap();
                        assert!(r / delta <= 3.0, "lambda={lambda} delta={delta} p={p} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn near_boundary_neumann_constant_contrast() {
        // The constant mode keeps full density at the boundary: the
        // fraction is (delta / (lambda pi))^{1/p}, not o(delta).
        let lambda = 16.0;
        let basis = IntervalBasis::new(BoundaryCondition::Neumann, lambda).unwrap();
        let mut coeffs = vec![0.0; basis.dim()];
        coeffs[0] = 1.0;
        for &p in &[2.0, 4.0] {
            let delta = 0.1;
            let r = near_boundary_mass(&basis, &coeffs, delta, p).unwrap();
            let expect = libm::pow(delta / (lambda * PI), 1.0 / p);
            assert!((r - expect).abs() < 1e-9, "p={p} r={r} expect={expect}");
        }
    }

    #[test]
    fn neumann_heat_diagonal_band() {
        // Long time: constant mode only.
        let long = neumann_heat_diag(&[50.0], &[0.3]);
        assert!((long[0].diag - 1.0 / PI).abs() < 1e-12);
        // Interior point: sqrt(t) p -> 1/(2 sqrt(pi)); boundary point
        // doubles by reflection.
        let small = neumann_heat_diag(&[1e-4], &[PI / 2.0, 0.0]);
        assert!((small[0].diag_times_sqrt_t - 0.5 / PI.sqrt()).abs() < 1e-3);
        assert!((small[1].diag_times_sqrt_t - 1.0 / PI.sqrt()).abs() < 1e-3);
        // Two-sided band over t in [1e-3, 0.3] at both sample points.
        let ts: Vec<f64> = (0..20).map(|i| 1e-3 * libm::pow(300.0f64, i as f64 / 19.0)).collect();
        let rows = neumann_heat_diag(&ts, &[0.0, PI / 2.0]);
        let lo = rows.iter().map(|r| r.diag_times_sqrt_t).fold(f64::INFINITY, f64::min);
        let hi = rows.iter().map(|r| r.diag_times_sqrt_t).fold(0.0, f64::max);
        assert!(hi / lo <= 4.0, "band ratio {}", hi / lo);
        // Dirichlet diagonal at the boundary is identically zero.
        for &t in &[1e-3, 0.1, 0.3] {
            assert_eq!(dirichlet_heat_diag(t, 0.0), 0.0);
        }
    }

    #[test]
    fn validation_errors() {
        assert!(IntervalBasis::new(BoundaryCondition::Dirichlet, 0.5).is_err());
        assert!(IntervalMeasure::lebesgue(7).is_err());
        assert!(IntervalMeasure::from_density(4, vec![1.0, -1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(IntervalMeasure::lebesgue(8).unwrap().with_atom(4.0, 1.0).is_err());
        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, 10.0).unwrap();
        let coarse = IntervalMeasure::lebesgue(16).unwrap();
        assert!(matches!(
            interval_gram(&basis, &coarse),
            Err(IntervalError::CoarseGrid { .. })
        ));
        assert!(near_boundary_mass(&basis, &vec![1.0; basis.dim()], 1.5, 2.0).is_err());
    }
}
