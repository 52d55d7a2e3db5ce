//! `lslab`: sampling/embedding constants, structured test-function
//! norms, kernel profiles, density sweeps, and the named experiment
//! catalogue, on the sphere and the boundary interval model.
//!
//! Exit status: 0 when every declared check passed, 1 when some check
//! failed, 2 on usage or numerical errors. All tabular output carries
//! a model column; all floats are printed losslessly.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand};
use lslab::config::{parse_degree_sweep, parse_sweep, ExperimentConfig};
use lslab::experiments::{
    beam_lp_norm, beam_tube_mass, run_experiment, zonal_lp_norm, SPHERE_MODEL,
};
use lslab::output::fmt_float;
use lslab::parse::{parse_measure, parse_region};
use lslab_core::extremal::{carleson_constant_2, ls_constant_2};
use lslab_core::geom::{
    density_report, grid_for_degree, make_grid, Condition, QuadratureGrid, SweepConfig, Target,
};
use lslab_core::interval1d::{
    dirichlet_counterexample, dirichlet_heat_diag, near_boundary_mass, neumann_heat_diag,
    BoundaryCondition, IntervalBasis, MODEL_LABEL as INTERVAL_MODEL,
};
use lslab_core::kernels::{complex_bound_profile, gaussian_bound_profile, OperatorShift};
use lslab_core::rng::SplitMix64;
use lslab_core::spectrum::{band_basis, eigenspace_basis, eigenvalue_lambda, BasisIndex};

#[derive(Parser)]
#[command(name = "lslab", version, about = "spectral sampling laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named experiment; writes CSV tables and a JSON summary.
    Experiment {
        /// A catalogue name such as zonal-norms or carleson-dichotomy.
        name: String,
        /// TOML file overriding the experiment's default sweeps.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Seed override for randomized sweeps.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sampling constant of a region over a spectral basis.
    Ls2 {
        /// Region expression, e.g. "not(cap(0, 0, 2*inv-sqrt-lambda))".
        #[arg(long)]
        region: String,
        /// Basis: "band:<lambda>" or "eig:<n>".
        #[arg(long)]
        basis: String,
        /// Grid oversampling factor beyond exactness.
        #[arg(long, default_value_t = 2)]
        oversample: usize,
    },
    /// Embedding constant of a measure over a spectral basis.
    Carleson2 {
        /// Measure expression, e.g. "sum(lebesgue, atom(0, 0, 1))".
        #[arg(long)]
        measure: String,
        /// Basis: "band:<lambda>" or "eig:<n>".
        #[arg(long)]
        basis: String,
        /// Grid oversampling factor beyond exactness.
        #[arg(long, default_value_t = 2)]
        oversample: usize,
    },
    /// L^p norms of zonal kernels over a degree sweep.
    ZonalNorms {
        /// Exponents, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 4.0, 6.0])]
        p: Vec<f64>,
        /// Degree sweep "a:b:*f" (geometric) or a comma list.
        #[arg(long, default_value = "16:256:*2")]
        degrees: String,
    },
    /// L^p norms and tube mass of great-circle beams over a degree sweep.
    BeamNorms {
        #[arg(long, value_delimiter = ',', default_values_t = [2.0, 6.0])]
        p: Vec<f64>,
        #[arg(long, default_value = "16:256:*2")]
        degrees: String,
    },
    /// Weighted heat-kernel profiles in real or complex time.
    Heat {
        /// "real" or "complex".
        #[arg(long, default_value = "real")]
        mode: String,
        /// Time sweep "a:b:*f" or comma list.
        #[arg(long, default_value = "1e-3:1:*3.1623")]
        t: String,
        /// Sector angles for complex mode, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Option<Vec<f64>>,
    },
    /// Geometric density sweep of a region or measure.
    Density {
        /// Region or measure expression.
        #[arg(long)]
        target: String,
        /// "dense", "sparse", "symdense" or "tgcc".
        #[arg(long)]
        condition: String,
        /// Lambda sweep.
        #[arg(long)]
        lambda: String,
        /// Scale parameters r, comma separated.
        #[arg(long, default_value = "1")]
        r: String,
    },
    /// Boundary interval model runs.
    Interval {
        /// "dirichlet-counterexample", "near-boundary" or "heat-diag".
        #[arg(long)]
        experiment: String,
        /// Lambda sweep for the counterexample table.
        #[arg(long, default_value = "8:256:*2")]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    // Table output is meant to be piped; die quietly on a closed pipe
    // instead of panicking mid-`println!`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_basis(s: &str) -> Result<(Arc<BasisIndex>, f64, String)> {
    if let Some(rest) = s.strip_prefix("band:") {
        let lambda: f64 = rest.parse().map_err(|_| anyhow!("bad band limit '{rest}'"))?;
        let b = band_basis(lambda).map_err(|e| anyhow!("{e}"))?;
        Ok((Arc::new(b), lambda, format!("band:{rest}")))
    } else if let Some(rest) = s.strip_prefix("eig:") {
        let n: usize = rest.parse().map_err(|_| anyhow!("bad degree '{rest}'"))?;
        if n == 0 {
            bail!("eigenspace degree must be positive");
        }
        Ok((Arc::new(eigenspace_basis(n)), eigenvalue_lambda(n), format!("eig:{rest}")))
    } else {
        bail!("basis must be 'band:<lambda>' or 'eig:<n>', got '{s}'");
    }
}

fn basis_grid(basis: &BasisIndex, oversample: usize) -> Result<Arc<QuadratureGrid>> {
    let (nt, np) = grid_for_degree(2 * basis.n_max, oversample.max(1));
    Ok(Arc::new(make_grid(nt, np).map_err(|e| anyhow!("{e}"))?))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Experiment { name, config, out, seed } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_path(&path)?,
                None => ExperimentConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = Some(s);
            }
            std::fs::create_dir_all(&out)?;
            let summary = run_experiment(&name, &cfg, &out)?;
            for c in &summary.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                println!(
                    "[{tag}] {}: measured={} expected {} tol {}",
                    c.claim,
                    fmt_float(c.measured),
                    c.expected,
                    c.tolerance
                );
            }
            println!(
                "experiment {name}: {} ({} checks, outputs in {})",
                if summary.pass { "PASS" } else { "FAIL" },
                summary.checks.len(),
                out.display()
            );
            Ok(summary.pass)
        }
        Cmd::Ls2 { region, basis, oversample } => {
            let (b, lambda, label) = parse_basis(&basis)?;
            let spec = parse_region(&region, lambda)?;
            let grid = basis_grid(&b, oversample)?;
            let r = ls_constant_2(&spec, b, grid).map_err(|e| anyhow!("{e}"))?;
            println!("model,quantity,basis,value,certified");
            println!("{SPHERE_MODEL},ls2,{label},{},{}", fmt_float(r.value), r.certified);
            Ok(true)
        }
        Cmd::Carleson2 { measure, basis, oversample } => {
            let (b, lambda, label) = parse_basis(&basis)?;
            let grid = basis_grid(&b, oversample)?;
            let mu = parse_measure(&measure, lambda, &grid)?;
            let r = carleson_constant_2(&mu, b).map_err(|e| anyhow!("{e}"))?;
            println!("model,quantity,basis,value,certified");
            println!("{SPHERE_MODEL},carleson2,{label},{},{}", fmt_float(r.value), r.certified);
            Ok(true)
        }
        Cmd::ZonalNorms { p, degrees } => {
            let ns = parse_degree_sweep(&degrees)?;
            println!("model,n,lambda,p,norm");
            for &n in &ns {
                for &pp in &p {
                    let v = zonal_lp_norm(n, pp)?;
                    println!(
                        "{SPHERE_MODEL},{n},{},{},{}",
                        fmt_float(eigenvalue_lambda(n)),
                        fmt_float(pp),
                        fmt_float(v)
                    );
                }
            }
            Ok(true)
        }
        Cmd::BeamNorms { p, degrees } => {
            let ns = parse_degree_sweep(&degrees)?;
            println!("model,n,lambda,p,norm,tube_mass_3sqrt");
            for &n in &ns {
                let w = 3.0 / (n as f64).sqrt();
                let tube = beam_tube_mass(n, w)?;
                for &pp in &p {
                    let v = beam_lp_norm(n, pp)?;
                    println!(
                        "{SPHERE_MODEL},{n},{},{},{},{}",
                        fmt_float(eigenvalue_lambda(n)),
                        fmt_float(pp),
                        fmt_float(v),
                        fmt_float(tube)
                    );
                }
            }
            Ok(true)
        }
        Cmd::Heat { mode, t, angles } => {
            let t_list = parse_sweep(&t)?;
            let shift = OperatorShift::none();
            match mode.as_str() {
                "real" => {
                    let rows =
                        gaussian_bound_profile(&t_list, 96, &shift).map_err(|e| anyhow!("{e}"))?;
                    println!("model,t,sup_profile,argmax_distance");
                    for r in rows {
                        println!(
                            "{SPHERE_MODEL},{},{},{}",
                            fmt_float(r.t),
                            fmt_float(r.sup_profile),
                            fmt_float(r.argmax_distance)
                        );
                    }
                }
                "complex" => {
                    let a = angles.unwrap_or_else(|| vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
                    let rows = complex_bound_profile(&a, &t_list, 96, &shift)
                        .map_err(|e| anyhow!("{e}"))?;
                    println!("model,t,angle,sup_profile,argmax_distance");
                    for r in rows {
                        println!(
                            "{SPHERE_MODEL},{},{},{},{}",
                            fmt_float(r.t),
                            fmt_float(r.angle),
                            fmt_float(r.sup_profile),
                            fmt_float(r.argmax_distance)
                        );
                    }
                }
                other => bail!("heat mode must be 'real' or 'complex', got '{other}'"),
            }
            Ok(true)
        }
        Cmd::Density { target, condition, lambda, r } => {
            let cond = match condition.as_str() {
                "dense" => Condition::Dense,
                "sparse" => Condition::Sparse,
                "symdense" => Condition::SymDense,
                "tgcc" => Condition::Tgcc,
                other => bail!("unknown condition '{other}'"),
            };
            let lambdas = parse_sweep(&lambda)?;
            let rs = parse_sweep(&r)?;
            let head = target.trim_start().split(['(', ' ']).next().unwrap_or("");
            let is_measure = matches!(head, "lebesgue" | "scaled" | "atom" | "sum");
            println!("model,condition,lambda,r,probe_radius,worst_ratio,witness_theta,witness_phi");
            for &lam in &lambdas {
                // Measures need a grid fine enough for the band at lam.
                let mu;
                let region;
                let tgt = if is_measure {
                    let b = band_basis(lam).map_err(|e| anyhow!("{e}"))?;
                    let (nt, np) = grid_for_degree(2 * b.n_max, 2);
                    let grid = Arc::new(make_grid(nt, np).map_err(|e| anyhow!("{e}"))?);
                    mu = parse_measure(&target, lam, &grid)?;
                    Target::Measure(&mu)
                } else {
                    region = parse_region(&target, lam)?;
                    Target::Region(&region)
                };
                for &rr in &rs {
                    let rep = density_report(&tgt, cond, lam, rr, &SweepConfig::default())
                        .map_err(|e| anyhow!("{e}"))?;
                    let (wt, wp) = rep.witness.to_spherical();
                    println!(
                        "{SPHERE_MODEL},{condition},{},{},{},{},{},{}",
                        fmt_float(lam),
                        fmt_float(rr),
                        fmt_float(rep.probe_radius),
                        fmt_float(rep.worst_ratio),
                        fmt_float(wt),
                        fmt_float(wp)
                    );
                }
            }
            Ok(true)
        }
        Cmd::Interval { experiment, lambda, seed } => {
            match experiment.as_str() {
                "dirichlet-counterexample" => {
                    let lambdas = parse_sweep(&lambda)?;
                    let rows = dirichlet_counterexample(&lambdas).map_err(|e| anyhow!("{e}"))?;
                    println!("model,lambda,dirichlet_carleson2,neumann_carleson2,sparsity_ratio");
                    for row in rows {
                        println!(
                            "{INTERVAL_MODEL},{},{},{},{}",
                            fmt_float(row.lambda),
                            fmt_float(row.dirichlet_carleson2),
                            fmt_float(row.neumann_carleson2),
                            fmt_float(row.sparsity_ratio)
                        );
                    }
                }
                "near-boundary" => {
                    let mut rng = SplitMix64::new(seed.wrapping_add(41));
                    println!("model,lambda,delta,p,max_ratio_over_delta");
                    for &lam in &[16.0, 64.0] {
                        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, lam)
                            .map_err(|e| anyhow!("{e}"))?;
                        let fns: Vec<Vec<f64>> = (0..6)
                            .map(|_| (0..basis.dim()).map(|_| rng.next_normal()).collect())
                            .collect();
                        for &delta in &[0.05, 0.2] {
                            for &p in &[2.0, 4.0] {
                                let mut worst: f64 = 0.0;
                                for coeffs in &fns {
                                    let v = near_boundary_mass(&basis, coeffs, delta, p)
                                        .map_err(|e| anyhow!("{e}"))?;
                                    worst = worst.max(v / delta);
                                }
                                println!(
                                    "{INTERVAL_MODEL},{},{},{},{}",
                                    fmt_float(lam),
                                    fmt_float(delta),
                                    fmt_float(p),
                                    fmt_float(worst)
                                );
                            }
                        }
                    }
                }
                "heat-diag" => {
                    let ts: Vec<f64> =
                        (0..16).map(|i| 1e-3 * 300.0f64.powf(i as f64 / 15.0)).collect();
                    let rows =
                        neumann_heat_diag(&ts, &[0.0, std::f64::consts::PI / 2.0]);
                    println!("model,bc,t,x,diag,diag_times_sqrt_t");
                    for r in rows {
                        println!(
                            "{INTERVAL_MODEL},neumann,{},{},{},{}",
                            fmt_float(r.t),
                            fmt_float(r.x),
                            fmt_float(r.diag),
                            fmt_float(r.diag_times_sqrt_t)
                        );
                    }
                    for &t in &[1e-3, 1e-2, 1e-1] {
                        let d = dirichlet_heat_diag(t, 0.0);
                        println!(
                            "{INTERVAL_MODEL},dirichlet,{},{},{},{}",
                            fmt_float(t),
                            fmt_float(0.0),
                            fmt_float(d),
                            fmt_float(d * t.sqrt())
                        );
                    }
                }
                other => bail!(
                    "unknown interval experiment '{other}'; known: \
                     dirichlet-counterexample, near-boundary, heat-diag"
                ),
            }
            Ok(true)
        }
    }
}
