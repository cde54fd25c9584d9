//! Exact combinatorics behind rationality of ratios of critical Rankin–Selberg
//! L-values over totally imaginary fields.
//!
//! Everything here is the finite, exactly computable shadow of the analytic
//! theory: a number field enters only through its embedding/conjugation
//! combinatorics ([`field::FieldModel`]), an automorphic representation only
//! through its highest weight ([`weight::Weight`]), and the archimedean
//! L-factors only through symbolic `rational × π^k` values
//! ([`gamma::PiRational`]).
//!
//! The main pipelines:
//!
//! * [`weight`] — purity, strong purity, base-change structure of weights.
//! * [`weyl`] — Kostant representatives for the `(n, n')`-parabolic of
//!   `GL(N)` in κ-coordinates: lengths, dot action, duals, associates,
//!   explicit dominance inequalities.
//! * [`critical`] — cuspidal parameters, abelian/cuspidal widths, critical
//!   sets, and the combinatorial lemma with a constructive solver and a
//!   brute-force oracle.
//! * [`gamma`] — symbolic Γ-factor arithmetic, successive-value ratios, the
//!   factorized intertwining schedule, and numeric verification of the
//!   GL(2) intertwining integral.
//! * [`signature`] — Galois signatures of graded wedge blocks, by direct
//!   Koszul-sign reordering and by closed formula.
//! * [`sweep`] — exhaustive and randomized property sweeps used by the CLI
//!   and the acceptance suite.

pub mod critical;
pub mod field;
pub mod fixtures;
pub mod gamma;
pub mod input;
pub mod rational;
pub mod signature;
pub mod sweep;
pub mod weight;
pub mod weyl;

use thiserror::Error;

/// Crate-wide error type. Every variant names the offending input element.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("model is invalid: {0}")]
    InvalidModel(String),
    #[error("not a Galois element for this model: {0}")]
    InvalidGalois(String),
    #[error("classification requires subfield layer")]
    MissingSubfield(String),
    #[error("weight error: {0}")]
    Weight(String),
    #[error("weight is not pure for conjugation {0}")]
    NotPure(String),
    #[error("weight is not strongly pure: {0}")]
    NotStronglyPure(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("invalid permutation: {0}")]
    InvalidPerm(String),
    #[error("invalid kappa tuple: {0}")]
    InvalidKappa(String),
    #[error("gamma argument out of supported range: {0}")]
    GammaArgument(String),
    #[error("pole-involved ratio: {0}")]
    PoleRatio(String),
    #[error("point {0} is not critical: violating triple {1}")]
    NotCritical(String, String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("signature undefined: {0}")]
    SignatureUndefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
