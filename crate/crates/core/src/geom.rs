//! Geometry of the unit sphere: points, rotations, quadrature grids,
//! region algebra, discrete measures and density sweeps.
//!
//! Grids are products of a Gauss-Legendre rule in colatitude and a
//! uniform rule in azimuth, so the node weights sum to 4 pi and the grid
//! integrates spherical polynomials exactly up to a known degree. Regions
//! are closed under complement, union and intersection, with membership
//! decided by exact distance predicates; measures are nonnegative node
//! densities on a grid plus point atoms.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::specfun::{gauss_legendre_nodes, SpecFunError};

#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    /// Cap radius outside (0, pi].
    InvalidCapRadius(f64),
    /// Tube halfwidth outside (0, pi/2).
    InvalidTubeHalfwidth(f64),
    /// Colatitude band with theta1 >= theta2 or outside [0, pi].
    InvalidBand(f64, f64),
    /// Grid resolution too small.
    EmptyGrid,
    /// Center sampling coarser than the probe radius: the reported
    /// extremum would be unreliable.
    CoarseSampling { spacing: f64, radius: f64 },
    /// Scale parameters must be positive and finite.
    InvalidScale(f64),
    Quadrature(SpecFunError),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::InvalidCapRadius(r) => write!(f, "cap radius {r} outside (0, pi]"),
            GeomError::InvalidTubeHalfwidth(w) => {
                write!(f, "tube halfwidth {w} outside (0, pi/2)")
            }
            GeomError::InvalidBand(a, b) => write!(f, "invalid colatitude band [{a}, {b}]"),
            GeomError::EmptyGrid => write!(f, "grid needs at least one node in each direction"),
            GeomError::CoarseSampling { spacing, radius } => write!(
                f,
                "center spacing {spacing} exceeds probe radius {radius}; extremum unreliable"
            ),
            GeomError::InvalidScale(s) => write!(f, "scale parameter {s} must be positive"),
            GeomError::Quadrature(e) => write!(f, "quadrature construction failed: {e}"),
        }
    }
}

impl From<SpecFunError> for GeomError {
    fn from(e: SpecFunError) -> Self {
        GeomError::Quadrature(e)
    }
}

/// Unit vector on the sphere. Construction normalizes, so the invariant
/// |p| = 1 holds to roundoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        let norm = libm::sqrt(x * x + y * y + z * z);
        assert!(norm > 0.0, "cannot normalize the zero vector");
        Point3 { x: x / norm, y: y / norm, z: z / norm }
    }

    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let s = libm::sin(theta);
        Point3 { x: s * libm::cos(phi), y: s * libm::sin(phi), z: libm::cos(theta) }
    }

    pub fn north_pole() -> Self {
        Point3 { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Point3) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn antipode(&self) -> Point3 {
        Point3 { x: -self.x, y: -self.y, z: -self.z }
    }

    /// (colatitude, azimuth) with theta in [0, pi], phi in [0, 2 pi).
    pub fn to_spherical(&self) -> (f64, f64) {
        let theta = libm::acos(self.z.clamp(-1.0, 1.0));
        let mut phi = libm::atan2(self.y, self.x);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        (theta, phi)
    }
}

/// Geodesic distance via atan2 of cross and dot products, stable for
/// nearly parallel and nearly antipodal pairs.
pub fn geodesic_distance(a: &Point3, b: &Point3) -> f64 {
    let (cx, cy, cz) = a.cross(b);
    let cross_norm = libm::sqrt(cx * cx + cy * cy + cz * cz);
    libm::atan2(cross_norm, a.dot(b))
}

/// Oriented great circle, given by its unit normal: the circle is the
/// set of points orthogonal to `normal`.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicAxis {
    pub normal: Point3,
}

impl GeodesicAxis {
    pub fn new(normal: Point3) -> Self {
        GeodesicAxis { normal }
    }

    /// Two unit vectors spanning the plane of the circle, chosen
    /// deterministically from the normal.
    pub fn frame(&self) -> (Point3, Point3) {
        let n = self.normal;
        let helper = if n.z.abs() < 0.9 { Point3::north_pole() } else { Point3 { x: 1.0, y: 0.0, z: 0.0 } };
        let (ux, uy, uz) = helper.cross(&n);
        let u = Point3::new(ux, uy, uz);
        let (vx, vy, vz) = n.cross(&u);
        let v = Point3::new(vx, vy, vz);
        (u, v)
    }
}

/// Distance from a point to the great circle with the given normal:
/// |pi/2 - angle(x, normal)| = asin(|x . normal|).
pub fn tube_distance(x: &Point3, axis: &GeodesicAxis) -> f64 {
    libm::asin(x.dot(&axis.normal).abs().clamp(0.0, 1.0))
}

/// Proper rotation of R^3, stored as a row-major 3x3 matrix.
#[derive(Debug, Clone, Copy)]
pub struct Rotation {
    pub m: [[f64; 3]; 3],
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    /// Rodrigues rotation about a unit axis by `angle`.
    pub fn from_axis_angle(axis: &Point3, angle: f64) -> Self {
        let c = libm::cos(angle);
        let s = libm::sin(angle);
        let t = 1.0 - c;
        let (x, y, z) = (axis.x, axis.y, axis.z);
        Rotation {
            m: [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ],
        }
    }

    /// Rotation taking the north pole to `target` along the shorter arc.
    pub fn pole_to(target: &Point3) -> Self {
        let pole = Point3::north_pole();
        let d = pole.dot(target);
        if d > 1.0 - 1e-14 {
            return Rotation::identity();
        }
        if d < -1.0 + 1e-14 {
            return Rotation::from_axis_angle(&Point3 { x: 1.0, y: 0.0, z: 0.0 }, PI);
        }
        let (ax, ay, az) = pole.cross(target);
        let axis = Point3::new(ax, ay, az);
        Rotation::from_axis_angle(&axis, libm::acos(d.clamp(-1.0, 1.0)))
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        let m = &self.m;
        Point3 {
            x: m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            y: m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            z: m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        }
    }

    pub fn compose(&self, other: &Rotation) -> Rotation {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        Rotation { m }
    }

    pub fn transpose(&self) -> Rotation {
        let m = &self.m;
        Rotation {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }
}

/// Product quadrature grid: Gauss-Legendre in cos(colatitude) times a
/// uniform azimuth rule. Node weights sum to 4 pi; polynomials of degree
/// up to min(2 n_theta - 1, n_phi - 1) integrate exactly.
#[derive(Debug)]
pub struct QuadratureGrid {
    pub thetas: Vec<f64>,
    pub theta_weights: Vec<f64>,
    pub phis: Vec<f64>,
    pub phi_weight: f64,
    /// Flattened nodes, colatitude-major: index = i_theta * n_phi + i_phi.
    pub points: Vec<Point3>,
    pub weights: Vec<f64>,
    /// Rotation applied to all nodes; `None` means the grid is aligned
    /// with the coordinate axes and keeps its product structure.
    pub rotation: Option<Rotation>,
}

impl QuadratureGrid {
    pub fn n_theta(&self) -> usize {
        self.thetas.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phis.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when node (i, j) layout matches the theta/phi product
    /// structure in ambient coordinates, enabling separated fast paths.
    pub fn is_product(&self) -> bool {
        self.rotation.is_none()
    }

    /// Largest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> usize {
        let dt = 2 * self.n_theta() - 1;
        let dp = self.n_phi() - 1;
        dt.min(dp)
    }
}

/// Build the standard product grid.
pub fn make_grid(n_theta: usize, n_phi: usize) -> Result<QuadratureGrid, GeomError> {
    make_grid_rotated(n_theta, n_phi, None)
}

/// Build a product grid and optionally rotate every node. Rotated grids
/// lose the separated product structure but keep all quadrature weights.
pub fn make_grid_rotated(
    n_theta: usize,
    n_phi: usize,
    rotation: Option<Rotation>,
) -> Result<QuadratureGrid, GeomError> {
    if n_theta == 0 || n_phi == 0 {
        return Err(GeomError::EmptyGrid);
    }
    let (gl_nodes, gl_weights) = gauss_legendre_nodes(n_theta)?;
    // Ascending colatitude = descending cos(theta).
    let mut thetas = Vec::with_capacity(n_theta);
    let mut theta_weights = Vec::with_capacity(n_theta);
    for i in 0..n_theta {
        thetas.push(libm::acos(gl_nodes[n_theta - 1 - i].clamp(-1.0, 1.0)));
        theta_weights.push(gl_weights[n_theta - 1 - i]);
    }
    let phi_weight = 2.0 * PI / n_phi as f64;
    let phis: Vec<f64> = (0..n_phi).map(|j| phi_weight * j as f64).collect();
    let mut points = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        for &phi in &phis {
            let p = Point3::from_spherical(thetas[i], phi);
            let p = match &rotation {
                Some(r) => r.apply(&p),
                None => p,
            };
            points.push(p);
            weights.push(theta_weights[i] * phi_weight);
        }
    }
    Ok(QuadratureGrid { thetas, theta_weights, phis, phi_weight, points, weights, rotation })
}

/// Grid resolution that integrates products of two degree-`n_max`
/// harmonics exactly, with an oversampling factor for nonquadratic
/// integrands.
pub fn grid_for_degree(n_max: usize, oversample: usize) -> (usize, usize) {
    let f = oversample.max(1);
    (f * (n_max + 2), f * (2 * n_max + 3))
}

/// Region of the sphere, closed under complement, union, intersection.
#[derive(Debug, Clone)]
pub enum RegionSpec {
    All,
    /// Geodesic ball: distance to `center` at most `radius`.
    Cap { center: Point3, radius: f64 },
    /// Tube of the given halfwidth around a great circle.
    Tube { axis: GeodesicAxis, halfwidth: f64 },
    /// Colatitude band theta1 <= theta <= theta2.
    Band { theta1: f64, theta2: f64 },
    Complement(alloc::boxed::Box<RegionSpec>),
    Union(alloc::boxed::Box<RegionSpec>, alloc::boxed::Box<RegionSpec>),
    Intersection(alloc::boxed::Box<RegionSpec>, alloc::boxed::Box<RegionSpec>),
}

impl RegionSpec {
    pub fn cap(center: Point3, radius: f64) -> Self {
        RegionSpec::Cap { center, radius }
    }

    pub fn complement(inner: RegionSpec) -> Self {
        RegionSpec::Complement(alloc::boxed::Box::new(inner))
    }

    pub fn union(a: RegionSpec, b: RegionSpec) -> Self {
        RegionSpec::Union(alloc::boxed::Box::new(a), alloc::boxed::Box::new(b))
    }

    pub fn intersection(a: RegionSpec, b: RegionSpec) -> Self {
        RegionSpec::Intersection(alloc::boxed::Box::new(a), alloc::boxed::Box::new(b))
    }

    /// Validate all scale parameters in the tree.
    pub fn validate(&self) -> Result<(), GeomError> {
        match self {
            RegionSpec::All => Ok(()),
            RegionSpec::Cap { radius, .. } => {
                if *radius > 0.0 && *radius <= PI && radius.is_finite() {
                    Ok(())
                } else {
                    Err(GeomError::InvalidCapRadius(*radius))
                }
            }
            RegionSpec::Tube { halfwidth, .. } => {
                if *halfwidth > 0.0 && *halfwidth < PI / 2.0 && halfwidth.is_finite() {
                    Ok(())
                } else {
                    Err(GeomError::InvalidTubeHalfwidth(*halfwidth))
                }
            }
            RegionSpec::Band { theta1, theta2 } => {
                if *theta1 >= 0.0 && theta2 > theta1 && *theta2 <= PI {
                    Ok(())
                } else {
                    Err(GeomError::InvalidBand(*theta1, *theta2))
                }
            }
            RegionSpec::Complement(inner) => inner.validate(),
            RegionSpec::Union(a, b) | RegionSpec::Intersection(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// Exact membership predicate.
    pub fn contains(&self, p: &Point3) -> bool {
        match self {
            RegionSpec::All => true,
            RegionSpec::Cap { center, radius } => geodesic_distance(p, center) <= *radius,
            RegionSpec::Tube { axis, halfwidth } => tube_distance(p, axis) <= *halfwidth,
            RegionSpec::Band { theta1, theta2 } => {
                let theta = libm::acos(p.z.clamp(-1.0, 1.0));
                *theta1 <= theta && theta <= *theta2
            }
            RegionSpec::Complement(inner) => !inner.contains(p),
            RegionSpec::Union(a, b) => a.contains(p) || b.contains(p),
            RegionSpec::Intersection(a, b) => a.contains(p) && b.contains(p),
        }
    }

    /// The same region with every embedded direction rotated.
    pub fn rotated(&self, rot: &Rotation) -> RegionSpec {
        match self {
            RegionSpec::All => RegionSpec::All,
            RegionSpec::Cap { center, radius } => {
                RegionSpec::Cap { center: rot.apply(center), radius: *radius }
            }
            RegionSpec::Tube { axis, halfwidth } => RegionSpec::Tube {
                axis: GeodesicAxis::new(rot.apply(&axis.normal)),
                halfwidth: *halfwidth,
            },
            // A band is a cap-difference around the pole; rotating it
            // needs the pole image, so express it through caps.
            RegionSpec::Band { theta1, theta2 } => {
                let pole = rot.apply(&Point3::north_pole());
                let outer = RegionSpec::Cap { center: pole, radius: *theta2 };
                if *theta1 <= 0.0 {
                    outer
                } else {
                    RegionSpec::intersection(
                        outer,
                        RegionSpec::complement(RegionSpec::Cap { center: pole, radius: *theta1 }),
                    )
                }
            }
            RegionSpec::Complement(inner) => RegionSpec::complement(inner.rotated(rot)),
            RegionSpec::Union(a, b) => RegionSpec::union(a.rotated(rot), b.rotated(rot)),
            RegionSpec::Intersection(a, b) => {
                RegionSpec::intersection(a.rotated(rot), b.rotated(rot))
            }
        }
    }
}

/// Closed-form volume of a geodesic ball of radius s.
pub fn cap_volume(s: f64) -> f64 {
    2.0 * PI * (1.0 - libm::cos(s))
}

/// Closed-form volume of a tube of halfwidth w about a great circle.
pub fn tube_volume(w: f64) -> f64 {
    4.0 * PI * libm::sin(w)
}

/// Point atom of a measure.
#[derive(Debug, Clone, Copy)]
pub struct Atom {
    pub location: Point3,
    pub mass: f64,
}

/// Nonnegative measure: a per-node density multiplier on a grid plus
/// point atoms. Lebesgue surface measure is density identically one.
#[derive(Debug, Clone)]
pub struct Measure {
    pub grid: Arc<QuadratureGrid>,
    pub density: Vec<f64>,
    pub atoms: Vec<Atom>,
}

impl Measure {
    pub fn lebesgue(grid: Arc<QuadratureGrid>) -> Self {
        let density = vec![1.0; grid.len()];
        Measure { grid, density, atoms: Vec::new() }
    }

    pub fn from_density(grid: Arc<QuadratureGrid>, density: Vec<f64>) -> Self {
        assert_eq!(density.len(), grid.len(), "density must align with grid nodes");
        Measure { grid, density, atoms: Vec::new() }
    }

    pub fn with_atom(mut self, location: Point3, mass: f64) -> Self {
        self.atoms.push(Atom { location, mass });
        self
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        for d in &mut self.density {
            *d *= factor;
        }
        for a in &mut self.atoms {
            a.mass *= factor;
        }
        self
    }

    /// Total mass: quadrature sum of the density plus atom masses.
    pub fn total_mass(&self) -> f64 {
        let nodes: f64 = self
            .density
            .iter()
            .zip(&self.grid.weights)
            .map(|(d, w)| d * w)
            .sum();
        nodes + self.atoms.iter().map(|a| a.mass).sum::<f64>()
    }

    /// Mass of a geodesic ball: windowed node sum plus atoms inside.
    pub fn ball_mass(&self, center: &Point3, radius: f64) -> f64 {
        let mut total = 0.0;
        if self.grid.is_product() {
            let n_phi = self.grid.n_phi();
            let (theta_c, phi_c) = center.to_spherical();
            for (i, &theta) in self.grid.thetas.iter().enumerate() {
                if (theta - theta_c).abs() > radius {
                    continue;
                }
                for j in 0..n_phi {
                    let mut dphi = (self.grid.phis[j] - phi_c).abs();
                    if dphi > PI {
                        dphi = 2.0 * PI - dphi;
                    }
                    // Conservative reject: angular separation at this row
                    // is at least sin(theta_row) * dphi / 2 ... use exact
                    // distance only inside the coarse window.
                    let idx = i * n_phi + j;
                    let sin_min = libm::sin(theta).min(libm::sin(theta_c));
                    if sin_min * libm::sin(dphi * 0.5) * 2.0 > radius + 1e-12 && dphi > radius {
                        continue;
                    }
                    if geodesic_distance(&self.grid.points[idx], center) <= radius {
                        total += self.density[idx] * self.grid.weights[idx];
                    }
                }
            }
        } else {
            for (idx, p) in self.grid.points.iter().enumerate() {
                if geodesic_distance(p, center) <= radius {
                    total += self.density[idx] * self.grid.weights[idx];
                }
            }
        }
        for a in &self.atoms {
            if geodesic_distance(&a.location, center) <= radius {
                total += a.mass;
            }
        }
        total
    }

    /// Mass of a tube about a great circle.
    pub fn tube_mass(&self, axis: &GeodesicAxis, halfwidth: f64) -> f64 {
        let mut total = 0.0;
        for (idx, p) in self.grid.points.iter().enumerate() {
            if self.density[idx] != 0.0 && tube_distance(p, axis) <= halfwidth {
                total += self.density[idx] * self.grid.weights[idx];
            }
        }
        for a in &self.atoms {
            if tube_distance(&a.location, axis) <= halfwidth {
                total += a.mass;
            }
        }
        total
    }
}

/// Indicator measure of a region on a grid: density is the 0/1
/// membership of each node.
pub fn region_indicator(region: &RegionSpec, grid: Arc<QuadratureGrid>) -> Result<Measure, GeomError> {
    region.validate()?;
    let density = grid.points.iter().map(|p| if region.contains(p) { 1.0 } else { 0.0 }).collect();
    Ok(Measure { grid, density, atoms: Vec::new() })
}

/// Deterministic golden-angle lattice of `count` points covering the
/// sphere quasi-uniformly.
pub fn fibonacci_lattice(count: usize) -> Vec<Point3> {
    let golden = PI * (3.0 - libm::sqrt(5.0));
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = libm::sqrt((1.0 - z * z).max(0.0));
            let phi = golden * i as f64;
            Point3 { x: r * libm::cos(phi), y: r * libm::sin(phi), z }
        })
        .collect()
}

/// Lattice size whose covering radius stays below `spacing`.
pub fn lattice_count_for_spacing(spacing: f64) -> usize {
    ((8.0 * PI / (spacing * spacing)) as usize).max(16)
}

/// Deterministic area-uniform lattice inside the cap of the given radius
/// around the north pole, to be rotated to an arbitrary center.
fn cap_sample_lattice(radius: f64, count: usize) -> Vec<Point3> {
    let golden = PI * (3.0 - libm::sqrt(5.0));
    let depth = 1.0 - libm::cos(radius);
    (0..count)
        .map(|i| {
            let z = 1.0 - depth * (i as f64 + 0.5) / count as f64;
            let r = libm::sqrt((1.0 - z * z).max(0.0));
            let phi = golden * i as f64;
            Point3 { x: r * libm::cos(phi), y: r * libm::sin(phi), z }
        })
        .collect()
}

/// Deterministic area-uniform lattice on the tube of halfwidth `w`
/// around the great circle normal to the north pole (the equator).
fn tube_sample_lattice(w: f64, count: usize) -> Vec<Point3> {
    let golden = PI * (3.0 - libm::sqrt(5.0));
    let sw = libm::sin(w);
    (0..count)
        .map(|i| {
            // Area element on the tube is d(sin beta) d alpha.
            let sb = sw * (2.0 * (i as f64 + 0.5) / count as f64 - 1.0);
            let cb = libm::sqrt((1.0 - sb * sb).max(0.0));
            let alpha = golden * i as f64;
            Point3 { x: cb * libm::cos(alpha), y: cb * libm::sin(alpha), z: sb }
        })
        .collect()
}

/// Which geometric condition a density sweep probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// Relative density: min over balls of mass / volume.
    Dense,
    /// Relative sparsity: max over balls of mass / volume.
    Sparse,
    /// Symmetric relative density: ball masses counted in antipodal
    /// pairs, (m(z) + m(-z)) / (2 vol).
    SymDense,
    /// Tube condition: extremum over great-circle tubes of halfwidth
    /// r * lambda^(-1/2) instead of balls of radius r / lambda. Dense
    /// targets take the min, measure targets the max.
    Tgcc,
}

/// Target of a density sweep: an exact region or a gridded measure.
pub enum Target<'a> {
    Region(&'a RegionSpec),
    Measure(&'a Measure),
}

/// Sweep controls. `spacing` defaults to a quarter of the probe radius;
/// `frame` rotates the deterministic center and sample lattices, which
/// makes reports exactly equivariant under global rotations.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub spacing: Option<f64>,
    pub ball_samples: usize,
    pub tube_samples: usize,
    pub frame: Option<Rotation>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { spacing: None, ball_samples: 48, tube_samples: 512, frame: None }
    }
}

/// Result of a density sweep.
#[derive(Debug, Clone)]
pub struct DensityReport {
    pub condition: Condition,
    pub lambda: f64,
    pub r: f64,
    /// Probe radius actually used: r / lambda for balls,
    /// r * lambda^(-1/2) for tubes.
    pub probe_radius: f64,
    pub worst_ratio: f64,
    /// Center (or tube normal) attaining the extremum.
    pub witness: Point3,
    pub centers: usize,
}

/// Sweep balls (or tubes) over a deterministic lattice of centers and
/// report the extremal mass/volume ratio for the requested condition.
///
/// Region targets are probed with exact membership on local area-uniform
/// lattices, so the ratios stay accurate for probes far below any grid
/// resolution. Measure targets sum node masses and atoms inside the
/// probe; their probes must stay coarser than the measure's grid to be
/// meaningful.
pub fn density_report(
    target: &Target<'_>,
    condition: Condition,
    lambda: f64,
    r: f64,
    cfg: &SweepConfig,
) -> Result<DensityReport, GeomError> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(GeomError::InvalidScale(lambda));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(GeomError::InvalidScale(r));
    }
    if let Target::Region(region) = target {
        region.validate()?;
    }
    let probe_radius = match condition {
        Condition::Tgcc => r / libm::sqrt(lambda),
        _ => r / lambda,
    };
    let spacing = cfg.spacing.unwrap_or(probe_radius / 4.0);
    if spacing > probe_radius {
        return Err(GeomError::CoarseSampling { spacing, radius: probe_radius });
    }
    let centers = fibonacci_lattice(lattice_count_for_spacing(spacing));
    let minimizing = match (condition, target) {
        (Condition::Sparse, _) => false,
        (Condition::Tgcc, Target::Measure(_)) => false,
        _ => true,
    };

    let mut worst = if minimizing { f64::INFINITY } else { f64::NEG_INFINITY };
    let mut witness = Point3::north_pole();
    let frame = cfg.frame.unwrap_or_else(Rotation::identity);
    let has_frame = cfg.frame.is_some();

    match condition {
        Condition::Tgcc => {
            let volume = tube_volume(probe_radius);
            let local = tube_sample_lattice(probe_radius, cfg.tube_samples);
            for c in &centers {
                let normal = if has_frame { frame.apply(c) } else { *c };
                let axis = GeodesicAxis::new(normal);
                let ratio = match target {
                    Target::Region(region) => {
                        let to_axis = Rotation::pole_to(&normal);
                        let hits = local
                            .iter()
                            .filter(|p| region.contains(&to_axis.apply(p)))
                            .count();
                        hits as f64 / local.len() as f64
                    }
                    Target::Measure(m) => m.tube_mass(&axis, probe_radius) / volume,
                };
                if (minimizing && ratio < worst) || (!minimizing && ratio > worst) {
                    worst = ratio;
                    witness = normal;
                }
            }
        }
        _ => {
            let volume = cap_volume(probe_radius);
            let local = cap_sample_lattice(probe_radius, cfg.ball_samples);
            let symmetric = condition == Condition::SymDense;
            for c in &centers {
                let center = if has_frame { frame.apply(c) } else { *c };
                let mass_at = |z: &Point3| -> f64 {
                    match target {
                        Target::Region(region) => {
                            let to_center = Rotation::pole_to(z);
                            let hits = local
                                .iter()
                                .filter(|p| region.contains(&to_center.apply(p)))
                                .count();
                            volume * hits as f64 / local.len() as f64
                        }
                        Target::Measure(m) => m.ball_mass(z, probe_radius),
                    }
                };
                let ratio = if symmetric {
                    (mass_at(&center) + mass_at(&center.antipode())) / (2.0 * volume)
                } else {
                    mass_at(&center) / volume
                };
                if (minimizing && ratio < worst) || (!minimizing && ratio > worst) {
                    worst = ratio;
                    witness = center;
                }
            }
        }
    }

    Ok(DensityReport {
        condition,
        lambda,
        r,
        probe_radius,
        worst_ratio: worst,
        witness,
        centers: centers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_basics() {
        let n = Point3::north_pole();
        let s = n.antipode();
        let e = Point3::new(1.0, 0.0, 0.0);
        assert!((geodesic_distance(&n, &s) - PI).abs() < 1e-15);
        assert!((geodesic_distance(&n, &e) - PI / 2.0).abs() < 1e-15);
        assert!(geodesic_distance(&n, &n) == 0.0);
        // Nearly parallel points keep full relative accuracy.
        let q = Point3::from_spherical(1e-8, 0.3);
        let d = geodesic_distance(&n, &q);
        assert!((d - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn tube_distance_basics() {
        let axis = GeodesicAxis::new(Point3::north_pole());
        let on_equator = Point3::new(0.6, -0.8, 0.0);
        assert!(tube_distance(&on_equator, &axis) < 1e-15);
        // Colatitude 60 degrees is pi/6 away from the equator.
        let p = Point3::from_spherical(PI / 3.0, 1.0);
        assert!((tube_distance(&p, &axis) - PI / 6.0).abs() < 1e-14);
        assert!((tube_distance(&Point3::north_pole(), &axis) - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn grid_weights_sum_to_sphere_area() {
        let grid = make_grid(12, 25).unwrap();
        let total: f64 = grid.weights.iter().sum();
        assert!((total - 4.0 * PI).abs() < 1e-10);
        assert_eq!(grid.len(), 12 * 25);
    }

    #[test]
    fn grid_integrates_low_polynomials() {
        let grid = make_grid(8, 17).unwrap();
        // integral of z^2 over the sphere = 4 pi / 3.
        let z2: f64 = grid
            .points
            .iter()
            .zip(&grid.weights)
            .map(|(p, w)| w * p.z * p.z)
            .sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
        // Odd monomials vanish.
        let odd: f64 = grid.points.iter().zip(&grid.weights).map(|(p, w)| w * p.x).sum();
        assert!(odd.abs() < 1e-12);
    }

    #[test]
    fn rotated_grid_keeps_weights() {
        let rot = Rotation::from_axis_angle(&Point3::new(1.0, 2.0, -0.5), 1.1);
        let grid = make_grid_rotated(6, 13, Some(rot)).unwrap();
        assert!(!grid.is_product());
        let total: f64 = grid.weights.iter().sum();
        assert!((total - 4.0 * PI).abs() < 1e-10);
        let z2: f64 = grid
            .points
            .iter()
            .zip(&grid.weights)
            .map(|(p, w)| w * p.z * p.z)
            .sum();
        assert!((z2 - 4.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn region_membership() {
        let cap = RegionSpec::cap(Point3::north_pole(), 0.5);
        assert!(cap.contains(&Point3::from_spherical(0.49, 3.0)));
        assert!(!cap.contains(&Point3::from_spherical(0.51, 3.0)));
        let tube = RegionSpec::Tube { axis: GeodesicAxis::new(Point3::north_pole()), halfwidth: 0.2 };
        assert!(tube.contains(&Point3::from_spherical(PI / 2.0 - 0.1, 0.0)));
        assert!(!tube.contains(&Point3::from_spherical(PI / 2.0 - 0.3, 0.0)));
        let both = RegionSpec::intersection(cap.clone(), RegionSpec::complement(cap.clone()));
        assert!(!both.contains(&Point3::from_spherical(0.3, 1.0)));
    }

    #[test]
    fn region_validation() {
        assert!(RegionSpec::cap(Point3::north_pole(), 0.0).validate().is_err());
        assert!(RegionSpec::cap(Point3::north_pole(), 3.2).validate().is_err());
        assert!(RegionSpec::Tube {
            axis: GeodesicAxis::new(Point3::north_pole()),
            halfwidth: 2.0
        }
        .validate()
        .is_err());
        assert!(RegionSpec::Band { theta1: 1.0, theta2: 0.5 }.validate().is_err());
        let nested = RegionSpec::union(
            RegionSpec::All,
            RegionSpec::complement(RegionSpec::cap(Point3::north_pole(), -1.0)),
        );
        assert!(nested.validate().is_err());
    }

    #[test]
    fn hemisphere_mass() {
        let grid = Arc::new(make_grid(40, 81).unwrap());
        let hemi = RegionSpec::cap(Point3::north_pole(), PI / 2.0);
        let m = region_indicator(&hemi, grid).unwrap();
        assert!((m.total_mass() - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn partition_additivity() {
        let grid = Arc::new(make_grid(30, 61).unwrap());
        let region = RegionSpec::union(
            RegionSpec::cap(Point3::from_spherical(1.0, 2.0), 0.7),
            RegionSpec::Band { theta1: 2.0, theta2: 2.5 },
        );
        let a = region_indicator(&region, grid.clone()).unwrap().total_mass();
        let b = region_indicator(&RegionSpec::complement(region), grid.clone())
            .unwrap()
            .total_mass();
        let all = region_indicator(&RegionSpec::All, grid).unwrap().total_mass();
        assert!((a + b - all).abs() < 1e-10);
        assert!((all - 4.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn measure_atoms_and_scaling() {
        let grid = Arc::new(make_grid(80, 161).unwrap());
        let m = Measure::lebesgue(grid)
            .with_atom(Point3::north_pole(), 2.5)
            .scaled(2.0);
        assert!((m.total_mass() - (8.0 * PI + 5.0)).abs() < 1e-9);
        // Ball quadrature of an indicator is rim-limited: the error is
        // about one theta-ring of weight, here ~0.07 after scaling.
        let ball = m.ball_mass(&Point3::north_pole(), 1.0);
        assert!((ball - (2.0 * cap_volume(1.0) + 5.0)).abs() < 0.2);
    }

    #[test]
    fn ball_mass_windowing_matches_full_scan() {
        let grid = Arc::new(make_grid(24, 49).unwrap());
        let mut g = crate::rng::SplitMix64::new(5);
        let density: Vec<f64> = (0..grid.len()).map(|_| g.next_unit()).collect();
        let m = Measure::from_density(grid.clone(), density);
        for &(th, ph, s) in &[(0.2, 1.0, 0.5), (1.4, 4.0, 0.25), (3.0, 0.1, 0.8)] {
            let c = Point3::from_spherical(th, ph);
            let fast = m.ball_mass(&c, s);
            let slow: f64 = grid
                .points
                .iter()
                .enumerate()
                .filter(|(_, p)| geodesic_distance(p, &c) <= s)
                .map(|(i, _)| m.density[i] * grid.weights[i])
                .sum();
            assert!((fast - slow).abs() < 1e-12, "th={th} ph={ph} s={s}");
        }
    }

    #[test]
    fn full_sphere_is_everywhere_dense() {
        let report = density_report(
            &Target::Region(&RegionSpec::All),
            Condition::Dense,
            8.0,
            1.0,
            &SweepConfig { ball_samples: 16, ..Default::default() },
        )
        .unwrap();
        assert_eq!(report.worst_ratio, 1.0);
    }

    #[test]
    fn missing_cap_kills_density() {
        // Removing a cap wider than the probe ball leaves an empty ball
        // at its center, so the worst dense ratio is 0.
        let lambda = 8.0;
        let region = RegionSpec::complement(RegionSpec::cap(
            Point3::from_spherical(1.1, 0.7),
            10.0 / lambda,
        ));
        let report = density_report(
            &Target::Region(&region),
            Condition::Dense,
            lambda,
            1.0,
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(report.worst_ratio, 0.0);
        assert!(geodesic_distance(&report.witness, &Point3::from_spherical(1.1, 0.7)) < 10.0 / lambda);
    }

    #[test]
    fn hemisphere_tube_ratio_is_half() {
        let hemi = RegionSpec::cap(Point3::north_pole(), PI / 2.0);
        let report = density_report(
            &Target::Region(&hemi),
            Condition::Tgcc,
            64.0,
            1.0,
            &SweepConfig { tube_samples: 2048, spacing: Some(0.05), ..Default::default() },
        )
        .unwrap();
        // Every great-circle tube is centrally symmetric, so exactly half
        // of it lies in either hemisphere, up to lattice discreteness.
        assert!((report.worst_ratio - 0.5).abs() < 0.03, "ratio={}", report.worst_ratio);
    }

    #[test]
    fn coarse_sampling_rejected() {
        let err = density_report(
            &Target::Region(&RegionSpec::All),
            Condition::Dense,
            64.0,
            1.0,
            &SweepConfig { spacing: Some(1.0), ..Default::default() },
        );
        assert!(matches!(err, Err(GeomError::CoarseSampling { .. })));
    }

    #[test]
    fn report_rotation_equivariance() {
        let region = RegionSpec::complement(RegionSpec::cap(
            Point3::from_spherical(0.8, 2.0),
            0.35,
        ));
        let base = density_report(
            &Target::Region(&region),
            Condition::Dense,
            4.0,
            1.0,
            &SweepConfig { ball_samples: 32, ..Default::default() },
        )
        .unwrap();
        let mut g = crate::rng::SplitMix64::new(17);
        for _ in 0..3 {
            let axis = Point3::new(
                g.next_normal(),
                g.next_normal(),
                g.next_normal(),
            );
            let rot = Rotation::from_axis_angle(&axis, g.next_unit() * PI);
            let rotated = density_report(
                &Target::Region(&region.rotated(&rot)),
                Condition::Dense,
                4.0,
                1.0,
                &SweepConfig { ball_samples: 32, frame: Some(rot), ..Default::default() },
            )
            .unwrap();
            assert!(
                (rotated.worst_ratio - base.worst_ratio).abs() <= 1e-9,
                "base={} rotated={}",
                base.worst_ratio,
                rotated.worst_ratio
            );
        }
    }

    #[test]
    fn rotations_compose_and_invert() {
        let r1 = Rotation::from_axis_angle(&Point3::new(0.3, -1.0, 0.2), 0.9);
        let p = Point3::from_spherical(1.2, 4.4);
        let q = r1.apply(&p);
        let back = r1.transpose().apply(&q);
        assert!(geodesic_distance(&p, &back) < 1e-14);
        let pole_map = Rotation::pole_to(&p);
        assert!(geodesic_distance(&pole_map.apply(&Point3::north_pole()), &p) < 1e-14);
    }
}
