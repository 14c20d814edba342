//! Ostrowski-type error bounds for one-point quadrature rules.
//!
//! This crate evaluates, verifies, and sharpness-tests the closed-form bounds on
//! `|f(x) - (1/(b-a)) ∫_a^b f(t) dt|` that arise from comparing `f` against a
//! monotone comparison function `g` through the Cauchy mean value theorem.
//! Choosing `g = t, t^p, ln t, e^t, sin t, cos t` (and weighted variants)
//! produces a catalog of bounds expressed in special means; every catalog entry
//! here is paired with a brute-force integral oracle so the closed forms can be
//! checked numerically.
//!
//! The crate is `no_std` (alloc required); all transcendental math goes through
//! `libm`. IO, file formats and the command line front-end live in the
//! companion `ostrowski-cli` crate.
//!
//! Module map:
//!
//! * [`expr`] — expression parsing and dual-number (forward-mode) evaluation.
//! * [`means`] — arithmetic/logarithmic/p-logarithmic/identric/exponential/
//!   cos/sin/geometric means with stable diagonal handling.
//! * [`quadrature`] — adaptive Gauss–Kronrod integration, the oracle side of
//!   every verification.
//! * [`supnorm`] — sampled/analytic estimates of derivative-ratio seminorms.
//! * [`bounds`] — the bound catalog: closed-form right-hand sides keyed by id.
//! * [`weighted`] — weighted-integral variants and the weight-median point.
//! * [`harness`] — case evaluation, suites, sharpness scans, consistency
//!   checks, and bound-minimizing node search.

#![cfg_attr(not(test), no_std)]
// quadrature node tables keep their full published precision, and numeric
// guards use `!(a < b)`-style comparisons deliberately so NaN falls into the
// error path
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bounds;
pub mod expr;
pub mod harness;
mod math;
pub mod means;
pub mod quadrature;
mod search;
pub mod supnorm;
pub mod weighted;

pub use bounds::{BoundId, BoundReport, Interval};
pub use expr::{DualValue, FunctionSpec};
pub use harness::{CaseSpec, RunParams, SuiteSummary};
pub use means::MeanKind;
pub use quadrature::QuadResult;
pub use supnorm::{Provenance, SupEstimate};
pub use weighted::WeightSpec;
