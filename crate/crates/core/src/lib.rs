//! Numerical core for band-limited analysis on the unit sphere.
//!
//! The crate provides the machinery needed to measure sampling and
//! concentration behaviour of spectral subspaces of the Laplacian:
//!
//! * `specfun`: Legendre polynomials, normalized associated Legendre
//!   functions with overflow-safe recurrences, Gauss-Legendre rules.
//! * `geom`: points, quadrature grids, region algebra and density sweeps.
//! * `spectrum`: spectral bases, synthesis, norms, structured test
//!   functions (zonal kernels, great-circle beams, projector kernels).
//! * `kernels`: heat and spectral-multiplier kernels with decay profiles.
//! * `extremal`: concentration Gram matrices and extremal Rayleigh
//!   quotients (sampling and embedding constants).
//! * `interval1d`: the analogous objects on an interval with a boundary.
//!
//! Everything is deterministic: randomness comes only from the seeded
//! generator in `rng`, and no operation depends on platform state.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
// Validation guards are written `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod extremal;
pub mod geom;
pub mod interval1d;
pub mod kernels;
pub mod rng;
pub mod specfun;
pub mod spectrum;
