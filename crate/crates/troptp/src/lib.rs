//! Tropical total positivity toolkit.
//!
//! Linear algebra over the max-plus semiring `(ℝ ∪ {−∞}, max, +)` with exact
//! rational scalars, organized around three views of the same objects:
//!
//! * **Matrix classes** — tropical permanents, minor signs, and the
//!   `TP^trop` / `TN^trop(ℝ)` classes with their adjacent-2×2 (Monge
//!   opposite) criteria ([`perm`], [`positivity`]).
//! * **Planar networks** — the canonical totally connected network `G_n`,
//!   its tropical transfer matrices, trapeze/parallelogram inequalities, and
//!   path mutations; the `ψ`/`φ` parametrization of `TN^trop(ℝ)` by weight
//!   matrices and the canonical Jacobi factorization word with unique
//!   parameter recovery on `TP^trop` ([`network`], [`param`], [`jacobi`]).
//! * **Nonarchimedean lifts** — exact finitely supported Puiseux series,
//!   classical transfer matrices of `G_n` over that field, and the
//!   `val(det) = per` correspondence ([`puiseux`]).
//!
//! All arithmetic is exact; strict-vs-weak inequality distinctions are
//! preserved end to end.

pub mod error;
pub mod io;
pub mod jacobi;
pub mod matrix;
pub mod network;
pub mod param;
pub mod perm;
pub mod positivity;
pub mod puiseux;
pub mod scalar;

pub use error::{Error, Result};
pub use matrix::TropMatrix;
pub use network::{build_canonical, PlanarNetwork, WeightMatrix};
pub use param::{gen_weights, phi, psi, GenMode};
pub use scalar::{Rat, TropValue};
