//! Companion library for the `lslab` binary: experiment catalogue,
//! sweep configuration, region/measure expression parsing, and
//! deterministic CSV/JSON output writers.

// Validation guards are written `!(x > 0.0)` on purpose: unlike
// `x <= 0.0`, the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod experiments;
pub mod output;
pub mod parse;
pub mod slope;
