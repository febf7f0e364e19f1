//! Pattern A: a sparse symmetric matrix whose entries are built from four
//! scalar invariants `u, v, w, r` of the target spectrum.
//!
//! ```text
//!         | e1     0      a      0      a   |
//!         | 0      0      0      w/u    b   |
//! A(s) =  | a      0      0      b      r/u |      a = sqrt(u/2), b = sqrt(v)/u
//!         | 0      w/u    b      0      0   |
//!         | a      b      r/u    0      0   |
//! ```
//!
//! Its characteristic polynomial is `prod (z - lambda_i)` whenever `u != 0`;
//! the entries are real and nonnegative when [`lemma4_conditions`] passes.

use serde::Serialize;

use crate::conditions::{Condition, ConditionReport};
use crate::error::{Error, Result};
use crate::matrix::{Provenance, SymMatrix5};
use crate::scalar::Scalar;
use crate::spectrum::SortedSpectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatternAScalars<T> {
    pub u: T,
    pub v: T,
    pub w: T,
    pub r: T,
}

pub fn compute_uvwr<T: Scalar>(s: &SortedSpectrum<T>) -> PatternAScalars<T> {
    let [l1, l2, l3, l4, l5] = *s.values();
    let e = s.elem_syms();
    let sq25 = l2 * l2 + l5 * l5;
    PatternAScalars {
        u: -e.e2 - sq25,
        v: -((l3 + l5) * (l4 + l5) * (l2 + l4) * (l2 + l3) * (l1 + l2) * (l1 + l5)),
        w: l2 * l5 * e.e1 - l1 * l3 * l4,
        r: e.e3 + e.e1 * sq25,
    }
}

/// Hypotheses under which A(sigma) is real and entrywise nonnegative.
///
/// Checks, in order: e1 >= 0, lambda5 > -lambda1, lambda3 > e1, r >= 0. Strict
/// inequalities are exact floating comparisons.
pub fn lemma4_conditions<T: Scalar>(s: &SortedSpectrum<T>) -> ConditionReport<T> {
    let [l1, _, l3, _, l5] = *s.values();
    let e1 = s.e1();
    let r = compute_uvwr(s).r;
    let mut report = ConditionReport::new();
    report.push(Condition::TraceNonnegative, e1 >= T::zero());
    report.push(Condition::PerronStrictlyDominates, l5 > -l1);
    report.push(Condition::ThirdAboveTrace, l3 > e1);
    report.push(Condition::RNonnegative, r >= T::zero());
    report
}

/// Builds A(sigma). Fails with [`Error::DegenerateU`] when `u = 0` and with
/// [`Error::PreconditionViolated`] when [`lemma4_conditions`] does not pass.
pub fn build_pattern_a<T: Scalar>(s: &SortedSpectrum<T>) -> Result<SymMatrix5<T>> {
    let PatternAScalars { u, v, w, .. } = compute_uvwr(s);
    if u == T::zero() {
        return Err(Error::DegenerateU);
    }
    let report = lemma4_conditions(s);
    if !report.passed() {
        return Err(Error::PreconditionViolated(report.failures()));
    }
    debug_assert!(u > T::zero() && v > T::zero() && w >= T::zero(), "u={u} v={v} w={w}");
    let m = layout(s, Provenance::PatternA);
    debug_assert!(m.is_nonnegative(), "pattern A produced a negative entry");
    Ok(m)
}

/// A(sigma) without the nonnegativity hypotheses, whenever it is real
/// (`u > 0`, `v >= 0`). Entries may be negative; provenance is `External`.
pub fn formal_matrix<T: Scalar>(s: &SortedSpectrum<T>) -> Option<SymMatrix5<T>> {
    let sc = compute_uvwr(s);
    (sc.u > T::zero() && sc.v >= T::zero()).then(|| layout(s, Provenance::External))
}

fn layout<T: Scalar>(s: &SortedSpectrum<T>, provenance: Provenance) -> SymMatrix5<T> {
    let PatternAScalars { u, v, w, r } = compute_uvwr(s);
    let e1 = s.e1();
    let a = (u / T::lit(2.0)).sqrt();
    let b = v.sqrt() / u;
    SymMatrix5::from_upper(provenance, |i, j| match (i, j) {
        (0, 0) => e1,
        (0, 2) | (0, 4) => a,
        (1, 3) => w / u,
        (1, 4) | (2, 3) => b,
        (2, 4) => r / u,
        _ => T::zero(),
    })
}

/// Characteristic polynomial of A(sigma) written in terms of `u, v, w, r, e1`
/// alone (no square roots), highest degree first. Valid for any `u != 0`,
/// including spectra where A(sigma) itself would be complex.
pub fn closed_form_char_poly<T: Scalar>(sc: &PatternAScalars<T>, e1: T) -> [T; 6] {
    let PatternAScalars { u, v, w, r } = *sc;
    let two = T::lit(2.0);
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let q3 = -(u3 + two * v + r * r + w * w) / u2;
    let q2 = (-r * u2 + two * e1 * v + e1 * r * r + e1 * w * w) / u2;
    let q1 = (-two * v * w * r + w * w * u3 + u3 * v + v * v + r * r * w * w) / u4;
    let q0 = -(-two * e1 * v * w * r + u2 * v * w - u2 * w * w * r + e1 * r * r * w * w
        + e1 * v * v)
        / u4;
    [T::one(), -e1, q3, q2, q1, q0]
}
