//! Realizability of five-element real spectra by symmetric nonnegative 5x5 matrices.
//!
//! The crate decides whether a list of five real numbers is the spectrum of a
//! symmetric entrywise-nonnegative 5x5 matrix, builds explicit realizing
//! matrices for two parametric families (pattern A and pattern B) that cover
//! part of the region left open by the classical criteria, decides Guo-type
//! perturbations of realizable spectra, and checks every construction with an
//! independent Jacobi eigensolver and a trace-recurrence characteristic
//! polynomial.
//!
//! All math is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases at
//! the crate root fix the scalar to `f64`, which is what the CLI uses.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod conditions;
pub mod cubic;
pub mod error;
pub mod format;
pub mod guo;
pub mod matrix;
pub mod pattern_a;
pub mod pattern_b;
pub mod region;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use classify::{
    classify, classify_trace_zero, Certificate, Details, Outcome, Reason, RealizabilityDecision,
    Verdict, Warning,
};
pub use conditions::{Condition, ConditionReport};
pub use cubic::Cubic;
pub use error::{Error, Result};
pub use guo::{apply_perturbation, decide_perturbed, GuoRule, PerturbedDecision, Perturbation, Sign};
pub use matrix::{Provenance, SymMatrix5};
pub use pattern_a::{build_pattern_a, compute_uvwr, lemma4_conditions, PatternAScalars};
pub use pattern_b::{
    build_pattern_b, compute_klm, find_g, lemma6_conditions, q_poly, PatternBScalars,
};
pub use region::{sample_region, RegionSample};
pub use scalar::Scalar;
pub use spectrum::{ElemSyms, SortedSpectrum, Spectrum};
pub use verify::{
    char_poly_coeffs, entry_bound_check, sym_eigenvalues, verify_spectrum, VerificationReport,
};

pub type Spectrum64 = Spectrum<f64>;
pub type SortedSpectrum64 = SortedSpectrum<f64>;
pub type ElemSyms64 = ElemSyms<f64>;
pub type SymMatrix64 = SymMatrix5<f64>;
pub type Cubic64 = Cubic<f64>;
pub type Decision64 = RealizabilityDecision<f64>;
pub type PerturbedDecision64 = PerturbedDecision<f64>;
pub type RegionSample64 = RegionSample<f64>;

pub type Spectrum32 = Spectrum<f32>;
pub type SortedSpectrum32 = SortedSpectrum<f32>;
pub type SymMatrix32 = SymMatrix5<f32>;
