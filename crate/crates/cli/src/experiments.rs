//! Named experiments: each one sweeps a family, writes CSV tables, and
//! records pass/fail checks against declared slopes or bounds in a
//! summary. Everything is deterministic for a fixed config.
//!
//! Conventions used throughout:
//! * Zonal kernels and beams are axisymmetric (about the base point,
//!   resp. the great-circle normal), so their L^p norms reduce to 1-D
//!   Gauss-Legendre integrals in cos(theta) — exact for even p, cheap
//!   always.
//! * Gram-matrix experiments center their caps and balls on the pole.
//!   Axisymmetric measures make the Gram block-diagonal in the order,
//!   which the eigensolver exploits; results are rotation-invariant.
//! * Slope gates follow the catalogue: fitted exponents on dyadic
//!   sweeps of at least 5 points with +-0.05 tolerance, boundedness as
//!   explicit max/min ratio thresholds.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use lslab_core::extremal::{carleson_constant_2, gram_matrix, hermitian_eigs};
use lslab_core::geom::{
    density_report, fibonacci_lattice, grid_for_degree, make_grid, region_indicator, tube_volume,
    Condition, Measure, Point3, QuadratureGrid, RegionSpec, SweepConfig, Target,
};
use lslab_core::interval1d::{
    dirichlet_counterexample, dirichlet_heat_diag, near_boundary_mass, neumann_heat_diag,
    BoundaryCondition, IntervalBasis, MODEL_LABEL as INTERVAL_MODEL,
};
use lslab_core::kernels::{
    complex_bound_profile, gaussian_bound_profile, heat_kernel_dot, heat_truncation,
    kernel_decay_order, multiplier_kernel_dot, weyl_ratio, MultiplierSpec, OperatorShift,
};
use lslab_core::rng::SplitMix64;
use lslab_core::specfun::{gauss_legendre_nodes, legendre_p};
use lslab_core::spectrum::{
    band_basis, beam_closed_form, beam_constant, eigenspace_basis, eigenvalue_lambda, evaluate,
    gradient_norm_samples, lp_norm_real_samples, lp_norm_samples, random_band_function,
    mean_value_ratio,
};
use num_complex::Complex64;

use crate::config::ExperimentConfig;
use crate::output::{cell_f, cell_i, cell_s, Check, CsvTable, Summary};
use crate::slope::slope_fit;

pub const SPHERE_MODEL: &str = "sphere-s2";

pub const CATALOGUE: [&str; 16] = [
    "zonal-norms",
    "beam-norms",
    "zonal-decay",
    "ls2-cap-complement",
    "ls-eigen-smallp",
    "ls-eigen-largep",
    "carleson-dichotomy",
    "carleson-largep",
    "tgcc-beam",
    "weyl",
    "heat-gaussian",
    "heat-complex",
    "kernel-decay",
    "bernstein",
    "meanvalue",
    "boundary-1d",
];

pub fn run_experiment(name: &str, cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    match name {
        "zonal-norms" => zonal_norms(cfg, out),
        "beam-norms" => beam_norms(cfg, out),
        "zonal-decay" => zonal_decay(cfg, out),
        "ls2-cap-complement" => ls2_cap_complement(cfg, out),
        "ls-eigen-smallp" => ls_eigen_smallp(cfg, out),
        "ls-eigen-largep" => ls_eigen_largep(cfg, out),
        "carleson-dichotomy" => carleson_dichotomy(cfg, out),
        "carleson-largep" => carleson_largep(cfg, out),
        "tgcc-beam" => tgcc_beam(cfg, out),
        "weyl" => weyl(cfg, out),
        "heat-gaussian" => heat_gaussian(cfg, out),
        "heat-complex" => heat_complex(cfg, out),
        "kernel-decay" => kernel_decay(cfg, out),
        "bernstein" => bernstein(cfg, out),
        "meanvalue" => meanvalue(cfg, out),
        "boundary-1d" => boundary_1d(cfg, out),
        _ => bail!("unknown experiment '{name}'; known: {}", CATALOGUE.join(", ")),
    }
}

// ---------------------------------------------------------------- helpers

// Every CSV carries the model label; tables built without one get the
// summary's label prepended here.
fn emit(summary: &mut Summary, table: &CsvTable, out: &Path) -> Result<()> {
    if table.header.first().map(String::as_str) == Some("model") {
        table.write_to(out)?;
    } else {
        let mut labeled = CsvTable::new(
            &table.name,
            &std::iter::once("model")
                .chain(table.header.iter().map(String::as_str))
                .collect::<Vec<_>>(),
        );
        for row in &table.rows {
            let mut cells = vec![cell_s(&summary.model)];
            cells.extend(row.iter().cloned());
            labeled.push(cells);
        }
        labeled.write_to(out)?;
    }
    summary.csv_files.push(table.name.clone());
    Ok(())
}

/// Integral over [-1, 1] with a q-point Gauss-Legendre rule.
fn gl_integral(q: usize, f: impl Fn(f64) -> f64) -> Result<f64> {
    let (nodes, weights) = gauss_legendre_nodes(q).map_err(|e| anyhow!("{e}"))?;
    Ok(nodes.iter().zip(&weights).map(|(&x, &w)| w * f(x)).sum())
}

/// Integral over [a, b] by affine transport of the same rule.
fn gl_integral_ab(q: usize, a: f64, b: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    Ok(half * gl_integral(q, |x| f(mid + half * x))?)
}

/// Peak amplitude of the L^2-normalized zonal kernel of degree n.
fn zonal_amp(n: usize) -> f64 {
    (2.0 * n as f64 + 1.0) / (4.0 * std::f64::consts::PI * eigenvalue_lambda(n).sqrt())
}

/// ||Z_n||_p via the axisymmetric profile amp * P_n(cos theta).
pub fn zonal_lp_norm(n: usize, p: f64) -> Result<f64> {
    let amp = zonal_amp(n);
    let q = if (p.round() - p).abs() < 1e-12 && (p as usize) % 2 == 0 {
        (p as usize) * n / 2 + 16
    } else {
        24 * n + 64
    };
    let mass = 2.0
        * std::f64::consts::PI
        * gl_integral(q, |x| (amp * legendre_p(n, x)).abs().powf(p))?;
    Ok(mass.powf(1.0 / p))
}

/// Zonal |.|^p mass restricted to colatitudes [th_lo, th_hi].
fn zonal_lp_mass_window(n: usize, p: f64, th_lo: f64, th_hi: f64, q: usize) -> Result<f64> {
    let amp = zonal_amp(n);
    // integral over the window in x = cos theta, reversed orientation.
    let mass = 2.0
        * std::f64::consts::PI
        * gl_integral_ab(q, th_hi.cos(), th_lo.cos(), |x| {
            (amp * legendre_p(n, x)).abs().powf(p)
        })?;
    Ok(mass)
}

/// ||G_n||_p via the beam profile c_n sin^n(theta) about its normal.
pub fn beam_lp_norm(n: usize, p: f64) -> Result<f64> {
    let c = beam_constant(n);
    let q = if (p.round() - p).abs() < 1e-12 && (p as usize) % 2 == 0 {
        (p as usize) * n / 2 + 16
    } else {
        24 * n + 64
    };
    let mass =
        2.0 * std::f64::consts::PI * gl_integral(q, |x| (c * (1.0 - x * x).sqrt().powi(n as i32)).powf(p))?;
    Ok(mass.powf(1.0 / p))
}

/// L^2 mass of the beam inside the tube of the given halfwidth.
pub fn beam_tube_mass(n: usize, halfwidth: f64) -> Result<f64> {
    let c = beam_constant(n);
    let s = halfwidth.sin();
    Ok(2.0
        * std::f64::consts::PI
        * c
        * c
        * gl_integral_ab(512, -s, s, |x| (1.0 - x * x).powi(n as i32))?)
}

fn arc_grid(n_theta: usize, n_phi: usize) -> Result<Arc<QuadratureGrid>> {
    Ok(Arc::new(make_grid(n_theta, n_phi).map_err(|e| anyhow!("{e}"))?))
}

/// Exact-plus-oversampled grid for bilinear work at degree n_max.
fn gram_grid(n_max: usize, oversample: usize) -> Result<Arc<QuadratureGrid>> {
    let (nt, np) = grid_for_degree(2 * n_max, oversample);
    arc_grid(nt, np)
}

/// Embedding constant of `scale * 1_{B(pole, radius)} dV` over the
/// degree-n eigenspace, computed exactly: the measure is axisymmetric,
/// so the Gram matrix is diagonal in the order and its top eigenvalue
/// is the largest of the 1-D profile integrals
/// 2 pi scale int_0^radius Nbar_{n,k}(theta)^2 sin(theta) d(theta).
fn eigen_cap_carleson2_exact(n: usize, radius: f64, scale: f64) -> Result<f64> {
    let table = lslab_core::specfun::NormAssocTable::new(n);
    let q = n + 8;
    let (nodes, weights) = gauss_legendre_nodes(q).map_err(|e| anyhow!("{e}"))?;
    let a = radius.cos();
    let mid = 0.5 * (a + 1.0);
    let half = 0.5 * (1.0 - a);
    let mut acc = vec![0.0f64; n + 1];
    let mut tri = vec![0.0; (n + 1) * (n + 2) / 2];
    let base = n * (n + 1) / 2;
    for (&xt, &w) in nodes.iter().zip(&weights) {
        let x = (mid + half * xt).clamp(-1.0, 1.0);
        table.eval_triangle(x.acos(), &mut tri);
        for (k, slot) in acc.iter_mut().enumerate() {
            let v = tri[base + k];
            *slot += w * half * v * v;
        }
    }
    let top = acc.iter().cloned().fold(0.0, f64::max);
    Ok(2.0 * std::f64::consts::PI * scale * top)
}

/// Quadrature nodes of a polar cap in local polar coordinates, with
/// surface-measure weights; resolution-independent of any global grid.
fn polar_cap_nodes(radius: f64, n_r: usize, n_phi: usize) -> Vec<(Point3, f64)> {
    let d_theta = radius / n_r as f64;
    let d_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut out = Vec::with_capacity(n_r * n_phi);
    for i in 0..n_r {
        let theta = radius * (i as f64 + 0.5) / n_r as f64;
        let w_row = theta.sin() * d_theta * d_phi;
        for j in 0..n_phi {
            let phi = d_phi * j as f64;
            out.push((Point3::from_spherical(theta, phi), w_row));
        }
    }
    out
}

/// Top eigenvalue of the Gram matrix of mu over the basis.
fn gram_top(basis: &lslab_core::spectrum::BasisIndex, mu: &Measure) -> Result<f64> {
    let g = gram_matrix(basis, mu).map_err(|e| anyhow!("{e}"))?;
    let (evals, _, _) = hermitian_eigs(&g, false).map_err(|e| anyhow!("{e}"))?;
    Ok(*evals.last().unwrap())
}

/// Pole-centered spherical cap region of the given radius.
fn pole_cap(radius: f64) -> RegionSpec {
    RegionSpec::cap(Point3::north_pole(), radius)
}

fn degrees_or(cfg: &ExperimentConfig, default: &[usize]) -> Vec<usize> {
    cfg.degrees.clone().unwrap_or_else(|| default.to_vec())
}

fn lambdas_or(cfg: &ExperimentConfig, default: &[f64]) -> Vec<f64> {
    cfg.lambdas.clone().unwrap_or_else(|| default.to_vec())
}

// ------------------------------------------------------------ experiments

/// L^p norms of zonal kernels: flat below p = 4, log-kink at p = 4,
/// exponent 1/2 - 2/p above.
fn zonal_norms(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("zonal-norms", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let ps = cfg.p.clone().unwrap_or_else(|| vec![2.0, 3.0, 4.0, 6.0, 8.0]);
    let mut table = CsvTable::new("zonal-norms.csv", &["n", "lambda", "p", "norm"]);
    let mut by_p: Vec<(f64, Vec<(f64, f64)>)> = ps.iter().map(|&p| (p, Vec::new())).collect();
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        for (slot, &p) in ps.iter().enumerate() {
            let norm = zonal_lp_norm(n, p)?;
            table.push(vec![cell_i(n), cell_f(lambda), cell_f(p), cell_f(norm)]);
            by_p[slot].1.push((lambda, norm));
        }
    }
    emit(&mut summary, &table, out)?;

    for (p, pts) in &by_p {
        if *p == 2.0 {
            // Exact closed form: the scaled kernel has squared L2 norm
            // (2n+1) / (4 pi lambda_n).
            let dev = pts
                .iter()
                .zip(&degrees)
                .map(|((_, v), &n)| {
                    let closed = ((2.0 * n as f64 + 1.0)
                        / (4.0 * std::f64::consts::PI * eigenvalue_lambda(n)))
                    .sqrt();
                    (v - closed).abs()
                })
                .fold(0.0, f64::max);
            summary.add(Check::at_most("zonal L2 norm matches its closed form", dev, 1e-10));
            continue;
        }
        if *p == 4.0 {
            // Quartic norm grows like log of the degree: the normalized
            // values stay within a fixed ratio band.
            let vals: Vec<f64> = pts
                .iter()
                .zip(&degrees)
                .map(|((_, v), &n)| v.powi(4) / (n as f64).ln())
                .collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(0.0, f64::max);
            summary.add(Check::at_most("zonal p=4 quartic norm per log-degree ratio band", hi / lo, 3.0));
            continue;
        }
        let expected = if *p < 4.0 { 0.0 } else { 0.5 - 2.0 / p };
        let fit = slope_fit(pts)?;
        summary.add(Check::within(
            &format!("zonal norm exponent at p={p}"),
            fit.slope,
            expected,
            0.05,
        ));
    }
    summary.write_to(out)?;
    Ok(summary)
}

/// L^p norms and tube concentration of highest-weight beams.
fn beam_norms(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("beam-norms", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let ps = cfg.p.clone().unwrap_or_else(|| vec![2.0, 6.0]);
    let mut norms = CsvTable::new("beam-norms.csv", &["n", "lambda", "p", "norm"]);
    let mut tube = CsvTable::new("beam-tube.csv", &["n", "halfwidth", "mass"]);
    let mut by_p: Vec<(f64, Vec<(f64, f64)>)> = ps.iter().map(|&p| (p, Vec::new())).collect();
    let mut min_tube = f64::INFINITY;
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        for (slot, &p) in ps.iter().enumerate() {
            let norm = beam_lp_norm(n, p)?;
            norms.push(vec![cell_i(n), cell_f(lambda), cell_f(p), cell_f(norm)]);
            by_p[slot].1.push((lambda, norm));
        }
        let w = 3.0 / (n as f64).sqrt();
        let mass = beam_tube_mass(n, w)?;
        min_tube = min_tube.min(mass);
        tube.push(vec![cell_i(n), cell_f(w), cell_f(mass)]);
    }
    emit(&mut summary, &norms, out)?;
    emit(&mut summary, &tube, out)?;
    for (p, pts) in &by_p {
        if *p == 2.0 {
            let dev = pts.iter().map(|(_, v)| (v - 1.0).abs()).fold(0.0, f64::max);
            summary.add(Check::at_most("beam L2 norms stay exactly 1", dev, 1e-10));
        } else {
            let fit = slope_fit(pts)?;
            summary.add(Check::within(
                &format!("beam norm exponent at p={p}"),
                fit.slope,
                0.5 * (0.5 - 1.0 / p),
                0.05,
            ));
        }
    }
    summary.add(Check::at_least(
        "beam mass inside the 3/sqrt(n) tube",
        min_tube,
        0.99,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Off-diagonal decay envelope of zonal kernels.
fn zonal_decay(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("zonal-decay", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let mut table = CsvTable::new(
        "zonal-decay.csv",
        &["n", "lambda", "envelope_sqrt", "envelope_linear"],
    );
    let mut env_sqrt = Vec::new();
    let mut env_lin = Vec::new();
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let amp = zonal_amp(n);
        let d_lo = 1.0 / lambda;
        let d_hi = 3.0 * std::f64::consts::PI / 4.0;
        let mut e_sqrt: f64 = 0.0;
        let mut e_lin: f64 = 0.0;
        for i in 0..=256 {
            let d = d_lo * (d_hi / d_lo).powf(i as f64 / 256.0);
            let v = (amp * legendre_p(n, d.cos())).abs();
            let w = (1.0 + lambda * d).sqrt();
            e_sqrt = e_sqrt.max(v * w / lambda.sqrt());
            e_lin = e_lin.max(v * w / lambda);
        }
        table.push(vec![cell_i(n), cell_f(lambda), cell_f(e_sqrt), cell_f(e_lin)]);
        env_sqrt.push(e_sqrt);
        env_lin.push(e_lin);
    }
    emit(&mut summary, &table, out)?;
    let lo = env_sqrt.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = env_sqrt.iter().cloned().fold(0.0, f64::max);
    summary.add(Check::at_most(
        "sqrt-normalized off-diagonal envelope is two-sided bounded",
        hi / lo,
        2.5,
    ));
    let hi_lin = env_lin.iter().cloned().fold(0.0, f64::max);
    summary.add(Check::at_most(
        "lambda-normalized envelope bounded by its smallest-degree value",
        hi_lin,
        env_lin[0] * 1.2,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Sampling constant of cap complements over band spaces: radius c/lambda
/// keeps the constant bounded below, radius c/sqrt(lambda) kills it.
fn ls2_cap_complement(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("ls2-cap-complement", SPHERE_MODEL, cfg.seed());
    let lambdas = lambdas_or(cfg, &[8.0, 16.0, 24.0, 32.0]);
    let oversample = cfg.oversample.unwrap_or(4);
    let mut table = CsvTable::new(
        "ls2-cap-complement.csv",
        &["lambda", "family", "radius", "ls2"],
    );
    let mut inv_vals = Vec::new();
    let mut sqrt_vals = Vec::new();
    for &lambda in &lambdas {
        let basis = Arc::new(band_basis(lambda).map_err(|e| anyhow!("{e}"))?);
        let grid = gram_grid(basis.n_max, oversample)?;
        for (family, radius) in [("inv", 2.0 / lambda), ("sqrt", 2.0 / lambda.sqrt())] {
            let mu = region_indicator(&pole_cap(radius), grid.clone()).map_err(|e| anyhow!("{e}"))?;
            // Complement identity on an exact grid: the sampling constant
            // of the complement is one minus the cap's top concentration.
            let ls2 = 1.0 - gram_top(&basis, &mu)?;
            table.push(vec![cell_f(lambda), cell_s(family), cell_f(radius), cell_f(ls2)]);
            if family == "inv" {
                inv_vals.push((lambda, ls2));
            } else {
                sqrt_vals.push((lambda, ls2));
            }
        }
    }
    emit(&mut summary, &table, out)?;
    let at = |vals: &[(f64, f64)], l: f64| {
        vals.iter().find(|(x, _)| (*x - l).abs() < 1e-9).map(|(_, v)| *v)
    };
    if let Some(v16) = at(&inv_vals, 16.0) {
        let worst = inv_vals
            .iter()
            .filter(|(l, _)| *l > 16.0)
            .map(|(_, v)| v / v16)
            .fold(f64::INFINITY, f64::min);
        summary.add(Check::at_least(
            "cap radius 2/lambda: sampling constant retained past lambda=16",
            worst,
            0.5,
        ));
    }
    if let (Some(v16), Some(v32)) = (at(&sqrt_vals, 16.0), at(&sqrt_vals, 32.0)) {
        summary.add(Check::at_least(
            "cap radius 2/sqrt(lambda): sampling constant collapses 16 -> 32",
            v16 / v32,
            3.0,
        ));
        let mono = sqrt_vals.windows(2).all(|w| w[1].1 < w[0].1);
        summary.add(Check::at_least(
            "cap radius 2/sqrt(lambda): sampling constant strictly decreasing",
            if mono { 1.0 } else { 0.0 },
            1.0,
        ));
    }
    summary.write_to(out)?;
    Ok(summary)
}

/// Antipodal cap pair of shrinking radius: eigenspace sampling constant
/// tends to 1 although the symmetric density ratio tends to 0.
fn ls_eigen_smallp(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("ls-eigen-smallp", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[64, 256]);
    let mut table = CsvTable::new(
        "ls-eigen-smallp.csv",
        &["n", "lambda", "radius", "ls2_eigenspace", "symdense_worst"],
    );
    let mut last = (0.0, 0.0);
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let radius = 1.0 / (lambda.sqrt() * lambda.ln());
        let pair = RegionSpec::union(
            pole_cap(radius),
            RegionSpec::cap(Point3::north_pole().antipode(), radius),
        );
        let basis = Arc::new(eigenspace_basis(n));
        let grid = gram_grid(n, 2)?;
        let mu = region_indicator(&pair, grid).map_err(|e| anyhow!("{e}"))?;
        let ls2 = 1.0 - gram_top(&basis, &mu)?;
        let survivor = RegionSpec::complement(pair);
        // Lattice spacing one probe radius: the removed caps are a few
        // probe radii wide, so every cap still receives many centers,
        // at 1/16 the default sweep cost.
        let sweep = SweepConfig { spacing: Some(1.0 / lambda), ..SweepConfig::default() };
        let report = density_report(
            &Target::Region(&survivor),
            Condition::SymDense,
            lambda,
            1.0,
            &sweep,
        )
        .map_err(|e| anyhow!("{e}"))?;
        table.push(vec![
            cell_i(n),
            cell_f(lambda),
            cell_f(radius),
            cell_f(ls2),
            cell_f(report.worst_ratio),
        ]);
        last = (ls2, report.worst_ratio);
    }
    emit(&mut summary, &table, out)?;
    summary.add(Check::at_least(
        "eigenspace sampling constant survives the shrinking antipodal caps",
        last.0,
        0.9,
    ));
    summary.add(Check::at_most(
        "symmetric density ratio collapses on the same family",
        last.1,
        0.1,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Necessity mechanism at p = 6: removing antipodal caps of radius
/// lambda^{-1/4} starves the zonal kernel, whose retained mass fraction
/// decays at a measurable negative rate.
fn ls_eigen_largep(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("ls-eigen-largep", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let p = 6.0;
    let mut table = CsvTable::new(
        "ls-eigen-largep.csv",
        &["n", "lambda", "radius", "ratio_p6"],
    );
    let mut pts = Vec::new();
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let radius = lambda.powf(-0.25);
        let q = 3 * n + 64;
        let kept = zonal_lp_mass_window(n, p, radius, std::f64::consts::PI - radius, q)?;
        let total = zonal_lp_mass_window(n, p, 0.0, std::f64::consts::PI, q)?;
        let ratio = kept / total;
        table.push(vec![cell_i(n), cell_f(lambda), cell_f(radius), cell_f(ratio)]);
        pts.push((lambda, ratio));
    }
    emit(&mut summary, &table, out)?;
    let fit = slope_fit(&pts)?;
    summary.add(Check::at_most(
        "zonal retained-mass exponent under antipodal cap removal (expect about -3/4)",
        fit.slope,
        -0.5,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Shrinking-ball measure with log weight: embedding constants decay on
/// single eigenspaces but grow over full band spaces.
fn carleson_dichotomy(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("carleson-dichotomy", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let band_lambdas = lambdas_or(cfg, &[4.0, 8.0, 16.0]);
    let mut table = CsvTable::new(
        "carleson-dichotomy.csv",
        &["kind", "n_or_lambda", "lambda", "carleson2"],
    );
    let mut eig_pts = Vec::new();
    let mut cross_dev: f64 = 0.0;
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let value = eigen_cap_carleson2_exact(n, 1.0 / lambda, lambda.ln())?;
        if n <= 64 {
            // Cross-check the exact diagonal reduction against the full
            // Gram pipeline on an oversampled grid.
            let basis = Arc::new(eigenspace_basis(n));
            let grid = gram_grid(n, 16)?;
            let mu = region_indicator(&pole_cap(1.0 / lambda), grid)
                .map_err(|e| anyhow!("{e}"))?
                .scaled(lambda.ln());
            let grid_value =
                carleson_constant_2(&mu, basis).map_err(|e| anyhow!("{e}"))?.value;
            cross_dev = cross_dev.max((grid_value - value).abs() / value);
        }
        table.push(vec![cell_s("eigenspace"), cell_i(n), cell_f(lambda), cell_f(value)]);
        eig_pts.push((lambda, value));
    }
    let mut band_vals = Vec::new();
    for &lambda in &band_lambdas {
        let basis = Arc::new(band_basis(lambda).map_err(|e| anyhow!("{e}"))?);
        let grid = gram_grid(basis.n_max, 4)?;
        let mu = region_indicator(&pole_cap(1.0 / lambda), grid)
            .map_err(|e| anyhow!("{e}"))?
            .scaled(lambda.ln());
        let value = carleson_constant_2(&mu, basis.clone()).map_err(|e| anyhow!("{e}"))?.value;
        table.push(vec![
            cell_s("band"),
            cell_i(lambda.round() as usize),
            cell_f(lambda),
            cell_f(value),
        ]);
        band_vals.push(value);
    }
    emit(&mut summary, &table, out)?;
    let fit = slope_fit(&eig_pts)?;
    // The closed form lambda^{-1} log(lambda) fits to about -0.75 over
    // this range; any slope at or below -0.3 certifies decay.
    summary.add(Check::at_most(
        "eigenspace embedding constant decays (expect about -3/4)",
        fit.slope,
        -0.3,
    ));
    summary.add(Check::at_most(
        "diagonal reduction agrees with the Gram pipeline (rel)",
        cross_dev,
        0.1,
    ));
    let mono = band_vals.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    summary.add(Check::at_least(
        "band embedding constant nondecreasing on the same family",
        if mono { 1.0 } else { 0.0 },
        1.0,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Ball measures normalized to violate sparsity: the zonal kernel's
/// p = 6 concentration ratio grows with a positive exponent.
fn carleson_largep(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("carleson-largep", SPHERE_MODEL, cfg.seed());
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let p = 6.0;
    let mut table = CsvTable::new("carleson-largep.csv", &["n", "lambda", "ratio_p6"]);
    let mut pts = Vec::new();
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let q = 3 * n + 64;
        let near = zonal_lp_mass_window(n, p, 0.0, 1.0 / lambda, 128)?;
        let total = zonal_lp_mass_window(n, p, 0.0, std::f64::consts::PI, q)?;
        let ratio = lambda.powf(1.5) * near / total;
        table.push(vec![cell_i(n), cell_f(lambda), cell_f(ratio)]);
        pts.push((lambda, ratio));
    }
    emit(&mut summary, &table, out)?;
    let fit = slope_fit(&pts)?;
    summary.add(Check::at_least(
        "zonal concentration ratio grows against the sparsity-violating balls (expect about 3/2)",
        fit.slope,
        0.5,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Tube-controlled sets retain beam mass; the shrinking-ball measure
/// passes every tube test yet its eigenspace embedding constant grows.
fn tgcc_beam(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("tgcc-beam", SPHERE_MODEL, cfg.seed());
    let beam_degrees = degrees_or(cfg, &[64, 256]);
    let sqrt3 = 3.0f64.sqrt();
    let axes = [
        ("polar-normal", Point3::north_pole()),
        ("equatorial-normal", Point3::new(1.0, 0.0, 0.0)),
        ("tilted-normal", Point3::new(1.0 / sqrt3, 1.0 / sqrt3, 1.0 / sqrt3)),
    ];
    let mut beams = CsvTable::new("tgcc-beam-mass.csv", &["n", "axis", "hemisphere_ratio"]);
    let mut min_ratio = f64::INFINITY;
    for &n in &beam_degrees {
        let grid = gram_grid(n, 1)?;
        for (label, axis) in &axes {
            let mut num = 0.0;
            let mut den = 0.0;
            for (idx, pnt) in grid.points.iter().enumerate() {
                let v = beam_closed_form(n, axis, pnt).norm_sqr() * grid.weights[idx];
                den += v;
                if pnt.z >= 0.0 {
                    num += v;
                }
            }
            let ratio = num / den;
            min_ratio = min_ratio.min(ratio);
            beams.push(vec![cell_i(n), cell_s(label), cell_f(ratio)]);
        }
    }
    emit(&mut summary, &beams, out)?;
    summary.add(Check::at_least(
        "beam mass retained on a hemisphere (tube fraction rho = 1/2)",
        min_ratio,
        0.2,
    ));

    // Non-sufficiency family: measure lambda^{3/2} on balls of radius
    // 1/lambda. Tube densities stay below 2 while the eigenspace
    // embedding constant grows like lambda^{1/2}.
    let degrees = degrees_or(cfg, &[16, 32, 64, 128, 256]);
    let mut tubes = CsvTable::new(
        "tgcc-tube-vs-embedding.csv",
        &["n", "lambda", "tube_ratio_max", "carleson2"],
    );
    let mut pts = Vec::new();
    let mut tube_max_all: f64 = 0.0;
    let mut cross_dev: f64 = 0.0;
    let normals = {
        let mut v = fibonacci_lattice(4000);
        v.push(Point3::new(1.0, 0.0, 0.0));
        v.push(Point3::new(0.0, 1.0, 0.0));
        v
    };
    for &n in &degrees {
        let lambda = eigenvalue_lambda(n);
        let scale = lambda.powf(1.5);
        // Tube masses against a local polar quadrature of the ball.
        let mass_nodes = polar_cap_nodes(1.0 / lambda, 200, 64);
        let w = 1.0 / lambda.sqrt();
        let volume = tube_volume(w);
        let sin_w = w.sin();
        let mut tube_max: f64 = 0.0;
        for normal in &normals {
            let mut mass = 0.0;
            for (pnt, m) in &mass_nodes {
                if (pnt.dot(normal)).abs() <= sin_w {
                    mass += m;
                }
            }
            tube_max = tube_max.max(scale * mass / volume);
        }
        tube_max_all = tube_max_all.max(tube_max);
        let value = eigen_cap_carleson2_exact(n, 1.0 / lambda, scale)?;
        if n <= 32 {
            let basis = Arc::new(eigenspace_basis(n));
            let grid = gram_grid(n, 16)?;
            let mu = region_indicator(&pole_cap(1.0 / lambda), grid)
                .map_err(|e| anyhow!("{e}"))?
                .scaled(scale);
            let grid_value =
                carleson_constant_2(&mu, basis).map_err(|e| anyhow!("{e}"))?.value;
            cross_dev = cross_dev.max((grid_value - value).abs() / value);
        }
        tubes.push(vec![cell_i(n), cell_f(lambda), cell_f(tube_max), cell_f(value)]);
        pts.push((lambda, value));
    }
    emit(&mut summary, &tubes, out)?;
    summary.add(Check::at_most(
        "tube densities of the shrinking-ball measure (expect about 1/4)",
        tube_max_all,
        2.0,
    ));
    let fit = slope_fit(&pts)?;
    summary.add(Check::within(
        "eigenspace embedding exponent of the same measure",
        fit.slope,
        0.5,
        0.1,
    ));
    summary.add(Check::at_most(
        "diagonal reduction agrees with the Gram pipeline (rel)",
        cross_dev,
        0.1,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Eigenvalue counting against the planar main term, plus the closed
/// form of the spectral function against a brute spherical-harmonic sum.
fn weyl(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("weyl", SPHERE_MODEL, cfg.seed());
    // Fractional band limits: at integer lambda the counting ratio is
    // identically 1, so the sweep would not probe the fluctuation.
    let lambdas =
        lambdas_or(cfg, &[10.5, 13.3, 17.9, 23.7, 31.4, 41.8, 55.9, 74.3, 99.1]);
    let mut table = CsvTable::new("weyl.csv", &["lambda", "ratio"]);
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for &lambda in &lambdas {
        let ratio = weyl_ratio(lambda).map_err(|e| anyhow!("{e}"))?;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        table.push(vec![cell_f(lambda), cell_f(ratio)]);
    }
    emit(&mut summary, &table, out)?;
    summary.add(Check::at_least("counting ratio lower edge", lo, 0.8));
    summary.add(Check::at_most("counting ratio upper edge", hi, 1.25));

    // Brute-force spectral function at a generic point: sum of
    // |Y_{n,k}|^2 over the band matches (N+1)^2/(4 pi).
    let n_top = 64usize;
    let theta = 0.83;
    let table = lslab_core::specfun::NormAssocTable::new(n_top);
    let mut vals = vec![0.0; (n_top + 1) * (n_top + 2) / 2];
    table.eval_triangle(theta, &mut vals);
    let mut total = 0.0;
    for n in 0..=n_top {
        let base = n * (n + 1) / 2;
        total += vals[base] * vals[base];
        for k in 1..=n {
            total += 2.0 * vals[base + k] * vals[base + k];
        }
    }
    let closed = (n_top as f64 + 1.0).powi(2) / (4.0 * std::f64::consts::PI);
    summary.add(Check::at_most(
        "pointwise band sum matches the closed-form counting function (rel)",
        (total - closed).abs() / closed,
        1e-9,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Real-time heat kernel: Gaussian-dominated profiles, conservation,
/// the semigroup identity, and a finite-difference gradient envelope.
fn heat_gaussian(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("heat-gaussian", SPHERE_MODEL, cfg.seed());
    let t_list = cfg
        .t
        .clone()
        .unwrap_or_else(|| vec![1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1, 3.16e-1, 1.0]);
    let shift = OperatorShift::none();
    let rows = gaussian_bound_profile(&t_list, 96, &shift).map_err(|e| anyhow!("{e}"))?;
    let mut table = CsvTable::new("heat-gaussian.csv", &["t", "sup_profile", "argmax_distance"]);
    for r in &rows {
        table.push(vec![cell_f(r.t), cell_f(r.sup_profile), cell_f(r.argmax_distance)]);
    }
    emit(&mut summary, &table, out)?;
    let lo = rows.iter().map(|r| r.sup_profile).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.sup_profile).fold(0.0, f64::max);
    summary.add(Check::at_most("Gaussian-weighted profile ratio band over t", hi / lo, 10.0));

    // Conservation: the kernel integrates to one at every time.
    let mut cons_dev: f64 = 0.0;
    for &t in &[1e-3, 1e-1, 1.0] {
        let n_trunc = heat_truncation(t);
        let grid = gram_grid(n_trunc.div_ceil(2), 1)?;
        let pole = Point3::north_pole();
        let mut total = 0.0;
        for (idx, pnt) in grid.points.iter().enumerate() {
            let p = heat_kernel_dot(Complex64::new(t, 0.0), pole.dot(pnt), &shift)
                .map_err(|e| anyhow!("{e}"))?;
            total += grid.weights[idx] * p.re;
        }
        cons_dev = cons_dev.max((total - 1.0).abs());
    }
    summary.add(Check::at_most("kernel mass conservation", cons_dev, 1e-10));

    // Semigroup: composing two half-time kernels reproduces the full
    // one. The composition is a polynomial the grid integrates exactly.
    let (t1, t2) = (0.05, 0.05);
    let deg = heat_truncation(t1) + heat_truncation(t2);
    let grid = gram_grid(deg.div_ceil(2), 1)?;
    let x = Point3::north_pole();
    let y = Point3::from_spherical(0.7, 0.0);
    let mut composed = 0.0;
    for (idx, z) in grid.points.iter().enumerate() {
        let a = heat_kernel_dot(Complex64::new(t1, 0.0), x.dot(z), &shift).map_err(|e| anyhow!("{e}"))?;
        let b = heat_kernel_dot(Complex64::new(t2, 0.0), z.dot(&y), &shift).map_err(|e| anyhow!("{e}"))?;
        composed += grid.weights[idx] * a.re * b.re;
    }
    let direct = heat_kernel_dot(Complex64::new(t1 + t2, 0.0), x.dot(&y), &shift)
        .map_err(|e| anyhow!("{e}"))?
        .re;
    summary.add(Check::at_most("semigroup identity", (composed - direct).abs(), 1e-8));

    // Gradient envelope by central differences in the distance, swept
    // to the same computability horizon as the profiles.
    let mut grad_sups = Vec::new();
    for &t in &[1e-2f64, 1e-1] {
        let d_hi = (12.0 * t.sqrt()).min(std::f64::consts::PI - 1e-3);
        let h = 1e-4;
        let mut sup: f64 = 0.0;
        for i in 0..=200 {
            let d = 0.01 + (d_hi - 0.01) * i as f64 / 200.0;
            let pp = heat_kernel_dot(Complex64::new(t, 0.0), (d + h).cos(), &shift)
                .map_err(|e| anyhow!("{e}"))?;
            let pm = heat_kernel_dot(Complex64::new(t, 0.0), (d - h).cos(), &shift)
                .map_err(|e| anyhow!("{e}"))?;
            let g = (pp.re - pm.re).abs() / (2.0 * h);
            sup = sup.max(g * t.powf(1.5) * (d * d / (5.0 * t)).exp());
        }
        grad_sups.push(sup);
    }
    let glo = grad_sups.iter().cloned().fold(f64::INFINITY, f64::min);
    let ghi = grad_sups.iter().cloned().fold(0.0, f64::max);
    summary.add(Check::at_most("gradient envelope ratio band over t", ghi / glo, 5.0));
    summary.write_to(out)?;
    Ok(summary)
}

/// Complex-time heat kernel profiles stay bounded across the sector.
fn heat_complex(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("heat-complex", SPHERE_MODEL, cfg.seed());
    let angles = cfg.angles.clone().unwrap_or_else(|| vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    let t_list = cfg.t.clone().unwrap_or_else(|| vec![1e-2, 1e-1]);
    let rows = complex_bound_profile(&angles, &t_list, 96, &OperatorShift::none())
        .map_err(|e| anyhow!("{e}"))?;
    let mut table = CsvTable::new(
        "heat-complex.csv",
        &["t", "angle", "sup_profile", "argmax_distance"],
    );
    for r in &rows {
        table.push(vec![
            cell_f(r.t),
            cell_f(r.angle),
            cell_f(r.sup_profile),
            cell_f(r.argmax_distance),
        ]);
    }
    emit(&mut summary, &table, out)?;
    let lo = rows.iter().map(|r| r.sup_profile).fold(f64::INFINITY, f64::min);
    let hi = rows.iter().map(|r| r.sup_profile).fold(0.0, f64::max);
    summary.add(Check::at_most(
        "complex-time weighted profile ratio band over the sector",
        hi / lo,
        6.0,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// Multiplier kernels: smooth cutoffs decay at high order, hard
/// cutoffs stall; the weighted envelope is stable in lambda.
fn kernel_decay(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("kernel-decay", SPHERE_MODEL, cfg.seed());
    let lambdas = lambdas_or(cfg, &[32.0, 64.0, 128.0]);
    let shift = OperatorShift::none();
    let plateau = MultiplierSpec::plateau(0.5, 1.0).map_err(|e| anyhow!("{e}"))?;
    let mut table = CsvTable::new("kernel-decay.csv", &["lambda", "weighted_envelope"]);
    let mut envs = Vec::new();
    for &lambda in &lambdas {
        let d_lo = 1.0 / lambda;
        let d_hi = 3.0 * std::f64::consts::PI / 4.0;
        let mut env: f64 = 0.0;
        for i in 0..=192 {
            let d = d_lo * (d_hi / d_lo).powf(i as f64 / 192.0);
            let k = multiplier_kernel_dot(&plateau, lambda, d.cos(), &shift)
                .map_err(|e| anyhow!("{e}"))?;
            env = env.max(k.abs() * (1.0 + lambda * d).powi(4) / (lambda * lambda));
        }
        table.push(vec![cell_f(lambda), cell_f(env)]);
        envs.push(env);
    }
    emit(&mut summary, &table, out)?;
    let lo = envs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = envs.iter().cloned().fold(0.0, f64::max);
    summary.add(Check::at_most(
        "order-4 weighted envelope stable across lambda",
        hi / lo,
        2.0,
    ));
    let smooth = kernel_decay_order(&plateau, 128.0, &shift, 12).map_err(|e| anyhow!("{e}"))?;
    summary.add(Check::at_least("smooth-cutoff decay order", smooth, 3.5));
    let hard = MultiplierSpec::hard_cutoff(1.0).map_err(|e| anyhow!("{e}"))?;
    let stalled = kernel_decay_order(&hard, 128.0, &shift, 12).map_err(|e| anyhow!("{e}"))?;
    summary.add(Check::at_most("hard-cutoff decay order stalls", stalled, 1.5));
    summary.write_to(out)?;
    Ok(summary)
}

/// Gradient-to-value ratios of random band functions scale linearly
/// with the band limit, uniformly in p.
fn bernstein(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("bernstein", SPHERE_MODEL, cfg.seed());
    let lambdas = lambdas_or(cfg, &[16.0, 32.0, 64.0, 128.0]);
    let ps = cfg.p.clone().unwrap_or_else(|| vec![1.0, 2.0, f64::INFINITY]);
    let n_fns = 20;
    let mut table = CsvTable::new(
        "bernstein.csv",
        &["lambda", "p", "max_ratio", "mean_ratio"],
    );
    // max over functions, keyed by p then lambda.
    let mut per_p: Vec<Vec<f64>> = vec![Vec::new(); ps.len()];
    for &lambda in &lambdas {
        let basis = Arc::new(band_basis(lambda).map_err(|e| anyhow!("{e}"))?);
        let (nt, np) = grid_for_degree(basis.n_max, 2);
        let grid = arc_grid(nt, np)?;
        let lebesgue = Measure::lebesgue(grid.clone());
        let mut maxima = vec![0.0f64; ps.len()];
        let mut sums = vec![0.0f64; ps.len()];
        for i in 0..n_fns {
            let f = random_band_function(basis.clone(), cfg.seed().wrapping_add(i));
            let samples = evaluate(&f, grid.clone());
            let grads = gradient_norm_samples(&f, &grid);
            for (slot, &p) in ps.iter().enumerate() {
                let num = lp_norm_real_samples(&grads, p, &lebesgue).map_err(|e| anyhow!("{e}"))?;
                let den = lp_norm_samples(&samples, p, &lebesgue).map_err(|e| anyhow!("{e}"))?;
                let ratio = num / (lambda * den);
                maxima[slot] = maxima[slot].max(ratio);
                sums[slot] += ratio;
            }
        }
        for (slot, &p) in ps.iter().enumerate() {
            table.push(vec![
                cell_f(lambda),
                cell_f(p),
                cell_f(maxima[slot]),
                cell_f(sums[slot] / n_fns as f64),
            ]);
            per_p[slot].push(maxima[slot]);
        }
    }
    emit(&mut summary, &table, out)?;
    for (slot, &p) in ps.iter().enumerate() {
        let lo = per_p[slot].iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = per_p[slot].iter().cloned().fold(0.0, f64::max);
        summary.add(Check::at_most(
            &format!("normalized gradient ratio stable across lambda at p={p}"),
            hi / lo,
            3.0,
        ));
    }
    summary.write_to(out)?;
    Ok(summary)
}

/// Sub-mean-value property of harmonic extensions of band functions.
fn meanvalue(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("meanvalue", SPHERE_MODEL, cfg.seed());
    let lambdas = lambdas_or(cfg, &[16.0, 32.0]);
    let z = Point3::from_spherical(0.9, 1.7);
    let mut table = CsvTable::new("meanvalue.csv", &["lambda", "seed", "ratio"]);
    let mut worst: f64 = 0.0;
    for &lambda in &lambdas {
        let basis = Arc::new(band_basis(lambda).map_err(|e| anyhow!("{e}"))?);
        for seed in 0..5u64 {
            let f = random_band_function(basis.clone(), cfg.seed().wrapping_add(seed));
            let ratio = mean_value_ratio(&f, &z, 1.0).map_err(|e| anyhow!("{e}"))?;
            worst = worst.max(ratio);
            table.push(vec![cell_f(lambda), cell_i(seed as usize), cell_f(ratio)]);
        }
    }
    emit(&mut summary, &table, out)?;
    summary.add(Check::at_most(
        "peak value controlled by the solid mean of the extension",
        worst,
        200.0,
    ));
    summary.write_to(out)?;
    Ok(summary)
}

/// One-dimensional boundary laboratory: the boundary atom that embeds
/// for Dirichlet but not Neumann, near-boundary mass smallness, and the
/// Neumann heat diagonal.
fn boundary_1d(cfg: &ExperimentConfig, out: &Path) -> Result<Summary> {
    let mut summary = Summary::new("boundary-1d", INTERVAL_MODEL, cfg.seed());
    let lambdas = lambdas_or(cfg, &[8.0, 16.0, 32.0, 64.0, 128.0, 256.0]);
    let rows = dirichlet_counterexample(&lambdas).map_err(|e| anyhow!("{e}"))?;
    let mut atom_table = CsvTable::new(
        "boundary-atom.csv",
        &["model", "lambda", "dirichlet_carleson2", "neumann_carleson2", "sparsity_ratio"],
    );
    for r in &rows {
        atom_table.push(vec![
            cell_s(INTERVAL_MODEL),
            cell_f(r.lambda),
            cell_f(r.dirichlet_carleson2),
            cell_f(r.neumann_carleson2),
            cell_f(r.sparsity_ratio),
        ]);
    }
    emit(&mut summary, &atom_table, out)?;
    let dir_max = rows.iter().map(|r| r.dirichlet_carleson2).fold(0.0, f64::max);
    summary.add(Check::at_most(
        "boundary atom invisible to the vanishing boundary condition",
        dir_max,
        1.0 + 1e-12,
    ));
    let neu_pts: Vec<(f64, f64)> =
        rows.iter().map(|r| (r.lambda, r.neumann_carleson2 - 1.0)).collect();
    let fit = slope_fit(&neu_pts)?;
    summary.add(Check::within(
        "Neumann boundary-atom excess grows linearly",
        fit.slope,
        1.0,
        0.05,
    ));
    let spars_ok = rows
        .iter()
        .all(|r| (r.sparsity_ratio - (1.0 + r.lambda)).abs() < 1e-12);
    summary.add(Check::at_least(
        "sparsity ratio of the atom measure is 1 + lambda",
        if spars_ok { 1.0 } else { 0.0 },
        1.0,
    ));

    // Near-boundary mass fractions of random vanishing-boundary
    // functions: ratio/delta stays bounded across the sweep.  Raw
    // levels scale like delta^{1/p} * lambda^{-1/p} times a Gaussian
    // draw factor, so the pooled max-vs-median band must absorb that
    // hand-derivable spread (gate 16, measured below); dividing the
    // scaling out collapses the bucket maxima onto one level, where
    // the factor-2 uniformity band applies with real margin.
    let mut nb_table = CsvTable::new(
        "near-boundary.csv",
        &["model", "lambda", "delta", "p", "max_ratio_over_delta"],
    );
    let mut rng = SplitMix64::new(cfg.seed().wrapping_add(41));
    let mut pooled: Vec<f64> = Vec::new();
    let mut scaled_maxima: Vec<f64> = Vec::new();
    for &lambda in &[16.0, 64.0] {
        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, lambda)
            .map_err(|e| anyhow!("{e}"))?;
        let mut fns = Vec::new();
        for _ in 0..25 {
            let coeffs: Vec<f64> = (0..basis.dim()).map(|_| rng.next_normal()).collect();
            fns.push(coeffs);
        }
        for &delta in &[0.05, 0.2] {
            for &p in &[2.0, 4.0] {
                let mut bucket_max: f64 = 0.0;
                for coeffs in &fns {
                    let r = near_boundary_mass(&basis, coeffs, delta, p)
                        .map_err(|e| anyhow!("{e}"))?;
                    bucket_max = bucket_max.max(r / delta);
                    pooled.push(r / delta);
                }
                nb_table.push(vec![
                    cell_s(INTERVAL_MODEL),
                    cell_f(lambda),
                    cell_f(delta),
                    cell_f(p),
                    cell_f(bucket_max),
                ]);
                scaled_maxima.push(bucket_max / (delta / lambda).powf(1.0 / p));
            }
        }
    }
    emit(&mut summary, &nb_table, out)?;
    let median = |v: &mut Vec<f64>| {
        v.sort_by(f64::total_cmp);
        0.5 * (v[v.len() / 2] + v[(v.len() - 1) / 2])
    };
    let nb_max = pooled.iter().copied().fold(0.0, f64::max);
    let pooled_med = median(&mut pooled);
    summary.add(Check::at_most(
        "near-boundary mass fraction per delta, max over sweep vs median \
         (band widened from 2 to 16: levels split by exponent, delta, and \
         band limit before any uniformity question arises)",
        nb_max / pooled_med,
        16.0,
    ));
    let scaled_max = scaled_maxima.iter().copied().fold(0.0, f64::max);
    let scaled_med = median(&mut scaled_maxima);
    summary.add(Check::at_most(
        "near-boundary mass fraction with the (delta/lambda)^(1/p) scaling \
         divided out, max vs median over buckets",
        scaled_max / scaled_med,
        2.0,
    ));
    summary.add(Check::at_most(
        "near-boundary mass fraction per delta, absolute bound over full sweep",
        nb_max,
        3.0,
    ));

    // Heat diagonal: interior band behavior and the boundary contrast.
    let ts: Vec<f64> = (0..16).map(|i| 1e-3 * 300.0f64.powf(i as f64 / 15.0)).collect();
    let heat_rows = neumann_heat_diag(&ts, &[std::f64::consts::PI / 2.0]);
    let mut heat_table = CsvTable::new(
        "heat-diag-1d.csv",
        &["model", "t", "x", "diag", "diag_times_sqrt_t"],
    );
    for r in &heat_rows {
        heat_table.push(vec![
            cell_s(INTERVAL_MODEL),
            cell_f(r.t),
            cell_f(r.x),
            cell_f(r.diag),
            cell_f(r.diag_times_sqrt_t),
        ]);
    }
    emit(&mut summary, &heat_table, out)?;
    let lo = heat_rows.iter().map(|r| r.diag_times_sqrt_t).fold(f64::INFINITY, f64::min);
    let hi = heat_rows.iter().map(|r| r.diag_times_sqrt_t).fold(0.0, f64::max);
    summary.add(Check::at_most("interior Neumann heat diagonal band", hi / lo, 4.0));
    let dir0 = [1e-3, 1e-2, 1e-1, 0.3]
        .iter()
        .map(|&t| dirichlet_heat_diag(t, 0.0))
        .fold(0.0, f64::max);
    summary.add(Check::at_most("Dirichlet heat diagonal vanishes at the boundary", dir0, 0.0));
    summary.write_to(out)?;
    Ok(summary)
}
