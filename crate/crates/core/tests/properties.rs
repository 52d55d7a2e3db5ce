//! Property tests for the structural laws that hold for arbitrary
//! inputs: region algebra is boolean algebra pointwise, rotations are
//! isometries, volumes and masses are monotone.  No tolerance tuning —
//! each law is exact up to rounding.

use std::f64::consts::PI;

use proptest::prelude::*;

use lslab_core::geom::{
    cap_volume, geodesic_distance, tube_distance, GeodesicAxis, Point3, RegionSpec, Rotation,
};
use lslab_core::interval1d::{near_boundary_mass, BoundaryCondition, IntervalBasis};
use lslab_core::rng::SplitMix64;

fn point() -> impl Strategy<Value = Point3> {
    (0.0..PI, 0.0..2.0 * PI).prop_map(|(t, p)| Point3::from_spherical(t, p))
}

fn leaf() -> impl Strategy<Value = RegionSpec> {
    prop_oneof![
        (point(), 0.05..3.0).prop_map(|(c, r)| RegionSpec::cap(c, r)),
        (point(), 0.05..1.5).prop_map(|(n, w)| RegionSpec::Tube {
            axis: GeodesicAxis::new(n),
            halfwidth: w,
        }),
        (0.0..PI, 0.0..PI).prop_filter("nondegenerate band", |(a, b)| a != b).prop_map(
            |(a, b)| RegionSpec::Band { theta1: a.min(b), theta2: a.max(b) }
        ),
    ]
}

proptest! {
    #[test]
    fn region_algebra_is_boolean_algebra(a in leaf(), b in leaf(), x in point()) {
        let in_a = a.contains(&x);
        let in_b = b.contains(&x);
        prop_assert_eq!(RegionSpec::complement(a.clone()).contains(&x), !in_a);
        prop_assert_eq!(RegionSpec::union(a.clone(), b.clone()).contains(&x), in_a || in_b);
        prop_assert_eq!(RegionSpec::intersection(a.clone(), b.clone()).contains(&x), in_a && in_b);
        // De Morgan.
        let lhs = RegionSpec::complement(RegionSpec::union(a.clone(), b.clone()));
        let rhs = RegionSpec::intersection(
            RegionSpec::complement(a),
            RegionSpec::complement(b),
        );
        prop_assert_eq!(lhs.contains(&x), rhs.contains(&x));
    }

    #[test]
    fn rotations_are_isometries(
        axis in point(),
        angle in 0.0..2.0 * PI,
        a in point(),
        b in point(),
    ) {
        let rot = Rotation::from_axis_angle(&axis, angle);
        let (ra, rb) = (rot.apply(&a), rot.apply(&b));
        prop_assert!((ra.dot(&rb) - a.dot(&b)).abs() < 1e-12);
        prop_assert!(
            (geodesic_distance(&ra, &rb) - geodesic_distance(&a, &b)).abs() < 1e-9
        );
        // Transpose undoes the motion.
        let back = rot.transpose().apply(&ra);
        prop_assert!(geodesic_distance(&back, &a) < 1e-12);
    }

    #[test]
    fn pole_rotation_reaches_its_target(target in point()) {
        let moved = Rotation::pole_to(&target).apply(&Point3::north_pole());
        prop_assert!(geodesic_distance(&moved, &target) < 1e-12);
    }

    #[test]
    fn cap_volumes_are_monotone_and_split_the_sphere(r1 in 0.0..PI, r2 in 0.0..PI) {
        let (lo, hi) = (r1.min(r2), r1.max(r2));
        prop_assert!(cap_volume(lo) <= cap_volume(hi) + 1e-14);
        prop_assert!(cap_volume(hi) <= 4.0 * PI + 1e-12);
        prop_assert!((cap_volume(lo) + cap_volume(PI - lo) - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn tube_distance_is_an_even_quarter_turn(x in point(), normal in point()) {
        let axis = GeodesicAxis::new(normal);
        let d = tube_distance(&x, &axis);
        prop_assert!((0.0..=PI / 2.0 + 1e-12).contains(&d));
        prop_assert!((tube_distance(&x.antipode(), &axis) - d).abs() < 1e-12);
    }

    #[test]
    fn near_boundary_mass_grows_with_the_window(
        raw in proptest::collection::vec(-1.0..1.0f64, 8),
        d1 in 0.01..0.99f64,
        d2 in 0.01..0.99f64,
        p in 1.0..6.0f64,
    ) {
        let basis = IntervalBasis::new(BoundaryCondition::Dirichlet, 8.0).unwrap();
        let mut coeffs = raw;
        coeffs[0] += 2.0; // keep the function nonzero
        let (lo, hi) = (d1.min(d2), d1.max(d2));
        let m_lo = near_boundary_mass(&basis, &coeffs, lo, p).unwrap();
        let m_hi = near_boundary_mass(&basis, &coeffs, hi, p).unwrap();
        prop_assert!(m_lo <= m_hi + 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&m_hi));
    }

    #[test]
    fn seeded_generator_replays_exactly(seed in any::<u64>()) {
        let mut a = SplitMix64::new(seed);
        let mut b = SplitMix64::new(seed);
        for _ in 0..8 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
        let u = SplitMix64::new(seed).next_unit();
        prop_assert!(u > 0.0 && u <= 1.0);
    }
}
