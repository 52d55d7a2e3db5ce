//! Legendre polynomials, normalized associated Legendre functions and
//! Gauss-Legendre quadrature.
//!
//! The associated functions are fully normalized: with
//! `Nbar(n, k, theta)` denoting the colatitude factor, the products
//! `Nbar(n, k, theta) * exp(i k phi)` form an orthonormal family in
//! L^2 of the unit sphere with surface measure, i.e.
//! `integral of Nbar^2 * 2 pi sin(theta) d theta = 1`.
//! The Condon-Shortley phase `(-1)^k` is included, and negative orders
//! follow `Nbar(n, -k) = (-1)^k Nbar(n, k)`.
//!
//! Recurrences run upward in degree at fixed order. The sectoral seed
//! `(sin theta)^k` underflows near the poles for large `k`, so seeds and
//! intermediate values carry an explicit power-of-1e280 scale factor that
//! is peeled off as the recurrence brings magnitudes back into range.
//! This keeps the tables exact (to roundoff) up to degree 2048 at all
//! colatitudes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

/// Magnitude bounds outside which values switch to the scaled
/// representation `value * SCALE^e`.
const SCALE: f64 = 1e280;
const INV_SCALE: f64 = 1e-280;
const SCALE_LO: f64 = 1e-280;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFunError {
    /// |k| exceeds the degree n.
    OrderOutOfRange { n: usize, k: isize },
    /// Quadrature rule with zero nodes requested.
    EmptyRule,
    /// Newton iteration for a quadrature node failed to converge.
    NewtonDiverged { node: usize },
}

impl fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFunError::OrderOutOfRange { n, k } => {
                write!(f, "order k = {k} out of range for degree n = {n}")
            }
            SpecFunError::EmptyRule => write!(f, "quadrature rule needs at least one node"),
            SpecFunError::NewtonDiverged { node } => {
                write!(f, "Newton iteration diverged for quadrature node {node}")
            }
        }
    }
}

/// Legendre polynomial P_n(x) by the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
pub fn legendre_p(n: usize, x: f64) -> f64 {
    debug_assert!(x.abs() <= 1.0 + 1e-12, "legendre_p outside [-1, 1]");
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p_curr = x;
    for m in 1..n {
        let p_next = ((2 * m + 1) as f64 * x * p_curr - m as f64 * p_prev) / (m + 1) as f64;
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// All Legendre polynomials P_0(x) .. P_nmax(x) in one pass.
/// `out` must have length nmax + 1.
pub fn legendre_p_all(n_max: usize, x: f64, out: &mut [f64]) {
    debug_assert_eq!(out.len(), n_max + 1);
    out[0] = 1.0;
    if n_max == 0 {
        return;
    }
    out[1] = x;
    for m in 1..n_max {
        out[m + 1] = ((2 * m + 1) as f64 * x * out[m] - m as f64 * out[m - 1]) / (m + 1) as f64;
    }
}

/// Derivative P_n'(x) via (1 - x^2) P_n' = n (P_{n-1} - x P_n).
/// At the endpoints P_n'(1) = n(n+1)/2 and P_n'(-1) mirrors with parity.
pub fn legendre_p_deriv(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let omx2 = 1.0 - x * x;
    if omx2 < 1e-14 {
        let val = (n * (n + 1)) as f64 / 2.0;
        return if x > 0.0 {
            val
        } else if n % 2 == 0 {
            -val
        } else {
            val
        };
    }
    n as f64 * (legendre_p(n - 1, x) - x * legendre_p(n, x)) / omx2
}

/// Gauss-Legendre rule with `q` nodes on [-1, 1], nodes ascending.
/// Nodes are Newton-refined from the Chebyshev-like initial guesses
/// cos(pi (i - 1/4) / (q + 1/2)); weights are 2 / ((1 - x^2) P_q'(x)^2).
/// The weights sum to 2 up to roundoff.
pub fn gauss_legendre_nodes(q: usize) -> Result<(Vec<f64>, Vec<f64>), SpecFunError> {
    if q == 0 {
        return Err(SpecFunError::EmptyRule);
    }
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let half = q.div_ceil(2);
    for i in 0..half {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (q as f64 + 0.5));
        let mut converged = false;
        for _ in 0..100 {
            // One Newton step for P_q(x) = 0; derivative from the same pass.
            let mut p_prev = 1.0;
            let mut p_curr = x;
            for m in 1..q {
                let p_next =
                    ((2 * m + 1) as f64 * x * p_curr - m as f64 * p_prev) / (m + 1) as f64;
                p_prev = p_curr;
                p_curr = p_next;
            }
            let deriv = q as f64 * (p_prev - x * p_curr) / (1.0 - x * x);
            let dx = p_curr / deriv;
            x -= dx;
            if dx.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecFunError::NewtonDiverged { node: i });
        }
        let deriv = legendre_p_deriv(q, x);
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        // Guesses run from the positive end; store mirrored pairs.
        nodes[q - 1 - i] = x;
        weights[q - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if q % 2 == 1 {
        nodes[half - 1] = 0.0;
        let deriv = legendre_p_deriv(q, 0.0);
        weights[half - 1] = 2.0 / (deriv * deriv);
    }
    Ok((nodes, weights))
}

/// Surface integral of (sin theta)^(2n) over the unit sphere:
/// 4 pi * prod_{j=1..n} 2j / (2j+1), accumulated in the log domain.
pub fn wallis_l2n(n: usize) -> f64 {
    libm::exp(wallis_l2n_log(n))
}

/// log of `wallis_l2n`, exact enough for normalizing (sin theta)^n
/// profiles up to n = 4096.
pub fn wallis_l2n_log(n: usize) -> f64 {
    let mut acc = libm::log(4.0 * PI);
    for j in 1..=n {
        acc += libm::log(2.0 * j as f64) - libm::log(2.0 * j as f64 + 1.0);
    }
    acc
}

#[inline]
pub(crate) fn triangle_len(n_max: usize) -> usize {
    (n_max + 1) * (n_max + 2) / 2
}

/// Flat index of (n, k), 0 <= k <= n, in a packed triangle.
#[inline]
pub(crate) fn triangle_idx(n: usize, k: usize) -> usize {
    n * (n + 1) / 2 + k
}

/// Precomputed degree-recurrence coefficients for the normalized
/// associated Legendre functions up to a fixed maximal degree.
///
/// With x = cos theta the recurrence at fixed order k reads
/// Nbar_n = a(n,k) x Nbar_{n-1} - b(n,k) Nbar_{n-2}, where
/// a = sqrt((2n-1)(2n+1) / ((n-k)(n+k))) and
/// b = sqrt((2n+1)(n-1+k)(n-1-k) / ((2n-3)(n-k)(n+k))).
pub struct NormAssocTable {
    n_max: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    /// Seed ratios: Nbar_{k,k} / Nbar_{k-1,k-1} = -sin(theta) * seed_ratio[k].
    seed_ratio: Vec<f64>,
}

impl NormAssocTable {
    pub fn new(n_max: usize) -> Self {
        let len = triangle_len(n_max);
        let mut a = vec![0.0; len];
        let mut b = vec![0.0; len];
        for k in 0..=n_max {
            for n in (k + 1)..=n_max {
                let nf = n as f64;
                let kf = k as f64;
                let idx = triangle_idx(n, k);
                a[idx] = libm::sqrt((2.0 * nf - 1.0) * (2.0 * nf + 1.0) / ((nf - kf) * (nf + kf)));
                if n >= k + 2 {
                    b[idx] = libm::sqrt(
                        (2.0 * nf + 1.0) * (nf - 1.0 + kf) * (nf - 1.0 - kf)
                            / ((2.0 * nf - 3.0) * (nf - kf) * (nf + kf)),
                    );
                }
            }
        }
        let mut seed_ratio = vec![0.0; n_max + 1];
        for k in 1..=n_max {
            seed_ratio[k] = libm::sqrt((2.0 * k as f64 + 1.0) / (2.0 * k as f64));
        }
        NormAssocTable { n_max, a, b, seed_ratio }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Fill `out` (packed triangle, length `triangle_len(n_max)`) with
    /// Nbar(n, k, theta) for all 0 <= k <= n <= n_max.
    pub fn eval_triangle(&self, theta: f64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), triangle_len(self.n_max));
        let x = libm::cos(theta);
        let s = libm::sin(theta);
        // Sectoral seed in scaled form: value = seed * SCALE^seed_exp.
        let mut seed = libm::sqrt(1.0 / (4.0 * PI));
        let mut seed_exp: i32 = 0;
        for k in 0..=self.n_max {
            if k > 0 {
                seed *= -s * self.seed_ratio[k];
                if seed != 0.0 && seed.abs() < SCALE_LO {
                    seed *= SCALE;
                    seed_exp -= 1;
                }
            }
            let mut p_prev = 0.0;
            let mut p_curr = seed;
            let mut e = seed_exp;
            out[triangle_idx(k, k)] = descale(p_curr, e);
            for n in (k + 1)..=self.n_max {
                let idx = triangle_idx(n, k);
                let p_next = self.a[idx] * x * p_curr - self.b[idx] * p_prev;
                p_prev = p_curr;
                p_curr = p_next;
                if e < 0 && p_curr.abs() > SCALE {
                    p_curr *= INV_SCALE;
                    p_prev *= INV_SCALE;
                    e += 1;
                }
                out[idx] = descale(p_curr, e);
            }
        }
    }

    /// Fill `out` with the theta-derivatives d/d theta Nbar(n, k, theta),
    /// derived from a value triangle via the order-shift identity
    /// 2 dNbar_n^k = sqrt((n-k)(n+k+1)) Nbar_n^{k+1}
    ///             - sqrt((n+k)(n-k+1)) Nbar_n^{k-1},
    /// with Nbar_n^{-1} = -Nbar_n^1 and Nbar_n^{n+1} = 0.
    pub fn dtheta_triangle(&self, values: &[f64], out: &mut [f64]) {
        debug_assert_eq!(values.len(), triangle_len(self.n_max));
        debug_assert_eq!(out.len(), triangle_len(self.n_max));
        for n in 0..=self.n_max {
            for k in 0..=n {
                let nf = n as f64;
                let kf = k as f64;
                let up = if k + 1 <= n {
                    libm::sqrt((nf - kf) * (nf + kf + 1.0)) * values[triangle_idx(n, k + 1)]
                } else {
                    0.0
                };
                let down = if k >= 1 {
                    libm::sqrt((nf + kf) * (nf - kf + 1.0)) * values[triangle_idx(n, k - 1)]
                } else if n >= 1 {
                    // k = 0 uses the negative-order value -Nbar_n^1.
                    libm::sqrt(nf * (nf + 1.0)) * (-values[triangle_idx(n, 1)])
                } else {
                    0.0
                };
                out[triangle_idx(n, k)] = 0.5 * (up - down);
            }
        }
    }
}

#[inline]
fn descale(v: f64, e: i32) -> f64 {
    match e {
        0 => v,
        -1 => v * INV_SCALE,
        _ => 0.0,
    }
}

/// Normalized associated Legendre function Nbar(n, k, theta) for a single
/// (n, k); negative orders via Nbar(n, -k) = (-1)^k Nbar(n, k).
pub fn assoc_legendre_norm(n: usize, k: isize, theta: f64) -> Result<f64, SpecFunError> {
    let k_abs = k.unsigned_abs();
    if k_abs > n {
        return Err(SpecFunError::OrderOutOfRange { n, k });
    }
    let x = libm::cos(theta);
    let s = libm::sin(theta);
    let mut seed = libm::sqrt(1.0 / (4.0 * PI));
    let mut e: i32 = 0;
    for j in 1..=k_abs {
        seed *= -s * libm::sqrt((2.0 * j as f64 + 1.0) / (2.0 * j as f64));
        if seed != 0.0 && seed.abs() < SCALE_LO {
            seed *= SCALE;
            e -= 1;
        }
    }
    let mut p_prev = 0.0;
    let mut p_curr = seed;
    let kf = k_abs as f64;
    for m in (k_abs + 1)..=n {
        let nf = m as f64;
        let a = libm::sqrt((2.0 * nf - 1.0) * (2.0 * nf + 1.0) / ((nf - kf) * (nf + kf)));
        let b = if m >= k_abs + 2 {
            libm::sqrt(
                (2.0 * nf + 1.0) * (nf - 1.0 + kf) * (nf - 1.0 - kf)
                    / ((2.0 * nf - 3.0) * (nf - kf) * (nf + kf)),
            )
        } else {
            0.0
        };
        let p_next = a * x * p_curr - b * p_prev;
        p_prev = p_curr;
        p_curr = p_next;
        if e < 0 && p_curr.abs() > SCALE {
            p_curr *= INV_SCALE;
            p_prev *= INV_SCALE;
            e += 1;
        }
    }
    let value = descale(p_curr, e);
    if k < 0 && k_abs % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

/// d/d theta of `assoc_legendre_norm` at a single (n, k).
pub fn dtheta_assoc_legendre(n: usize, k: isize, theta: f64) -> Result<f64, SpecFunError> {
    let k_abs = k.unsigned_abs();
    if k_abs > n {
        return Err(SpecFunError::OrderOutOfRange { n, k });
    }
    let nf = n as f64;
    let kf = k_abs as f64;
    let up = if k_abs + 1 <= n {
        libm::sqrt((nf - kf) * (nf + kf + 1.0)) * assoc_legendre_norm(n, (k_abs + 1) as isize, theta)?
    } else {
        0.0
    };
    let down = if k_abs >= 1 {
        libm::sqrt((nf + kf) * (nf - kf + 1.0)) * assoc_legendre_norm(n, (k_abs - 1) as isize, theta)?
    } else if n >= 1 {
        libm::sqrt(nf * (nf + 1.0)) * (-assoc_legendre_norm(n, 1, theta)?)
    } else {
        0.0
    };
    let value = 0.5 * (up - down);
    if k < 0 && k_abs % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_low_degrees() {
        // P_2(x) = (3x^2 - 1)/2, P_3(x) = (5x^3 - 3x)/2,
        // P_5(x) = (63x^5 - 70x^3 + 15x)/8.
        assert!((legendre_p(2, 0.5) - (-0.125)).abs() < 1e-15);
        assert!((legendre_p(3, 0.5) - (-0.4375)).abs() < 1e-15);
        assert!((legendre_p(5, 0.3) - 0.34538625).abs() < 1e-15);
        assert!((legendre_p(10, 1.0) - 1.0).abs() < 1e-13);
        assert!((legendre_p(11, -1.0) + 1.0).abs() < 1e-13);
    }

    #[test]
    fn legendre_parity() {
        for n in 0..20 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let x = 0.37;
            assert!((legendre_p(n, -x) - sign * legendre_p(n, x)).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_all_matches_single() {
        let mut all = vec![0.0; 33];
        legendre_p_all(32, -0.62, &mut all);
        for n in 0..=32 {
            assert!((all[n] - legendre_p(n, -0.62)).abs() < 1e-14);
        }
    }

    #[test]
    fn legendre_deriv_matches_difference() {
        for &n in &[1usize, 2, 5, 13, 40] {
            for &x in &[-0.9, -0.3, 0.0, 0.44, 0.81] {
                let h = 1e-6;
                let fd = (legendre_p(n, x + h) - legendre_p(n, x - h)) / (2.0 * h);
                let an = legendre_p_deriv(n, x);
                assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn gauss_two_point_rule() {
        let (x, w) = gauss_legendre_nodes(2).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert!((x[0] + r).abs() < 1e-15);
        assert!((x[1] - r).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        assert!((w[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_exactness_monomials() {
        // q = 16 integrates x^30 exactly: 2/31.
        let (x, w) = gauss_legendre_nodes(16).unwrap();
        let integral: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(30)).sum();
        assert!((integral - 2.0 / 31.0).abs() < 1e-15);
        // Degree 2q - 1 = 31 (odd) integrates to zero by symmetry.
        let odd: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(31)).sum();
        assert!(odd.abs() < 1e-16);
    }

    #[test]
    fn gauss_weight_sums() {
        for &q in &[1usize, 7, 64, 257, 1040] {
            let (x, w) = gauss_legendre_nodes(q).unwrap();
            let total: f64 = w.iter().sum();
            assert!((total - 2.0).abs() < 1e-12, "q={q} sum={total}");
            for i in 1..q {
                assert!(x[i] > x[i - 1]);
            }
        }
    }

    #[test]
    fn gauss_rejects_empty() {
        assert!(matches!(gauss_legendre_nodes(0), Err(SpecFunError::EmptyRule)));
    }

    #[test]
    fn wallis_small_cases() {
        assert!((wallis_l2n(0) - 4.0 * PI).abs() < 1e-12);
        assert!((wallis_l2n(1) - 8.0 * PI / 3.0).abs() < 1e-12);
        // n = 2: 4 pi * (2/3) * (4/5) = 32 pi / 15.
        assert!((wallis_l2n(2) - 32.0 * PI / 15.0).abs() < 1e-12);
    }

    #[test]
    fn wallis_against_quadrature() {
        // integral of (sin theta)^(2n) over the sphere equals
        // 2 pi * integral of (1 - t^2)^n dt on [-1, 1].
        let (x, w) = gauss_legendre_nodes(64).unwrap();
        for &n in &[5usize, 17, 50] {
            let q: f64 = x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| wi * (1.0 - xi * xi).powi(n as i32))
                .sum();
            let reference = 2.0 * PI * q;
            assert!((wallis_l2n(n) - reference).abs() < 1e-12 * reference);
        }
    }

    #[test]
    fn assoc_norm_base_values() {
        // Nbar(0,0) = sqrt(1/(4 pi)); Nbar(1,0,theta) = sqrt(3/(4 pi)) cos theta.
        let v00 = assoc_legendre_norm(0, 0, 1.234).unwrap();
        assert!((v00 - 0.28209479177387814).abs() < 1e-15);
        let v10 = assoc_legendre_norm(1, 0, 0.0).unwrap();
        assert!((v10 - 0.4886025119029199).abs() < 1e-14);
        // Nbar(1,1,theta) = -sqrt(3/(8 pi)) sin theta.
        let th = 0.77;
        let v11 = assoc_legendre_norm(1, 1, th).unwrap();
        assert!((v11 + (3.0 / (8.0 * PI)).sqrt() * th.sin()).abs() < 1e-14);
        // Negative order flips sign for odd k.
        let v1m1 = assoc_legendre_norm(1, -1, th).unwrap();
        assert!((v1m1 + v11).abs() < 1e-15);
    }

    #[test]
    fn assoc_norm_zero_order_is_legendre() {
        for &n in &[0usize, 1, 4, 25, 120] {
            for &th in &[0.3f64, 1.0, 2.2] {
                let scale = ((2 * n + 1) as f64 / (4.0 * PI)).sqrt();
                let expect = scale * legendre_p(n, th.cos());
                let got = assoc_legendre_norm(n, 0, th).unwrap();
                assert!((got - expect).abs() < 1e-12 * (1.0 + expect.abs()), "n={n} th={th}");
            }
        }
    }

    #[test]
    fn assoc_norm_colatitude_normalization() {
        // integral over [0, pi] of Nbar^2 * 2 pi sin(theta) = 1.
        let (x, w) = gauss_legendre_nodes(400).unwrap();
        for &(n, k) in &[(3usize, 2isize), (10, 0), (40, 17), (300, 117)] {
            let mut total = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                let th = xi.acos();
                let v = assoc_legendre_norm(n, k, th).unwrap();
                total += wi * 2.0 * PI * v * v;
            }
            assert!((total - 1.0).abs() < 1e-10, "n={n} k={k} total={total}");
        }
    }

    #[test]
    fn assoc_norm_rejects_bad_order() {
        assert!(assoc_legendre_norm(3, 4, 0.5).is_err());
        assert!(assoc_legendre_norm(3, -4, 0.5).is_err());
    }

    #[test]
    fn triangle_matches_single_values() {
        let table = NormAssocTable::new(60);
        let mut tri = vec![0.0; triangle_len(60)];
        for &th in &[1e-3, 0.4, std::f64::consts::FRAC_PI_2, 2.9] {
            table.eval_triangle(th, &mut tri);
            for &(n, k) in &[(0usize, 0usize), (1, 1), (7, 3), (60, 0), (60, 59), (33, 33)] {
                let single = assoc_legendre_norm(n, k as isize, th).unwrap();
                let got = tri[triangle_idx(n, k)];
                assert!(
                    (got - single).abs() <= 1e-12 * (1.0 + single.abs()),
                    "n={n} k={k} th={th} got={got} single={single}"
                );
            }
        }
    }

    #[test]
    fn addition_theorem_high_degree_near_pole() {
        // sum over k of |Y_{n,k}|^2 = (2n+1)/(4 pi), exercised where the
        // sectoral seeds underflow without the scaled representation.
        let n = 2048;
        let table = NormAssocTable::new(n);
        let mut tri = vec![0.0; triangle_len(n)];
        for &th in &[1e-3, 1e-2, 0.1, PI - 1e-3] {
            table.eval_triangle(th, &mut tri);
            let mut sum = tri[triangle_idx(n, 0)] * tri[triangle_idx(n, 0)];
            for k in 1..=n {
                let v = tri[triangle_idx(n, k)];
                sum += 2.0 * v * v;
            }
            let expect = (2 * n + 1) as f64 / (4.0 * PI);
            assert!((sum - expect).abs() < 1e-10 * expect, "th={th} sum={sum}");
        }
    }

    #[test]
    fn dtheta_matches_finite_difference() {
        for &(n, k) in &[(1usize, 0isize), (2, 1), (9, -4), (40, 13), (40, 40)] {
            for &th in &[0.3, 1.1, 2.0] {
                let h = 1e-5;
                let fp = assoc_legendre_norm(n, k, th + h).unwrap();
                let fm = assoc_legendre_norm(n, k, th - h).unwrap();
                let fd = (fp - fm) / (2.0 * h);
                let an = dtheta_assoc_legendre(n, k, th).unwrap();
                let scale = 1.0 + an.abs();
                assert!((fd - an).abs() < 1e-6 * scale, "n={n} k={k} th={th} fd={fd} an={an}");
            }
        }
    }

    #[test]
    fn dtheta_triangle_matches_single() {
        let table = NormAssocTable::new(24);
        let mut tri = vec![0.0; triangle_len(24)];
        let mut dtri = vec![0.0; triangle_len(24)];
        let th = 0.9;
        table.eval_triangle(th, &mut tri);
        table.dtheta_triangle(&tri, &mut dtri);
        for n in 0..=24usize {
            for k in 0..=n {
                let single = dtheta_assoc_legendre(n, k as isize, th).unwrap();
                assert!(
                    (dtri[triangle_idx(n, k)] - single).abs() < 1e-11 * (1.0 + single.abs()),
                    "n={n} k={k}"
                );
            }
        }
    }
}
