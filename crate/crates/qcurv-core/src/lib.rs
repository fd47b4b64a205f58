//! Exact symbolic kernel verifying that positive line bundles over quantum
//! projective space have quantum-integer Chern curvature.
//!
//! The crate is organized around one session parameter `n >= 1`:
//!
//! - [`qscalar`] — the coefficient field Q(s) and quantum-integer helpers
//!   (`q` is the display symbol for `s^{n+1}`).
//! - [`ncalg`] — the FRT-presented quantized coordinate algebra on generators
//!   `u[i,j]`: rewriting to normal form, quantum determinant, grading, star.
//! - [`hopf`] — Hopf structure maps and the pairing oracle against the
//!   quantized enveloping algebra acting on tensor powers of the fundamental
//!   module.
//! - [`hkcalc`] — the 2n+1 dimensional first-order calculus data: the right
//!   module action on the cotangent space, the class-of-differential map, the
//!   unit map and projections.
//! - [`curvature`] — the verification pipelines extracting the quantum-integer
//!   curvature coefficient.
//! - [`engine`] — session wiring: build, certify, solve, cache.

pub mod curvature;
pub mod engine;
pub mod hkcalc;
pub mod hopf;
pub mod ncalg;
pub mod parallel;
pub mod qscalar;
pub mod report;

// pub use engine::{Engine, SessionConfig}; // wired up below
pub use qscalar::{qbinomial, qfactorial, qint_bracket, qint_round, QScalarError, SPoly, ScalarRat};
