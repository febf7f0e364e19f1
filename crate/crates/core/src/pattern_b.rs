//! Pattern B: a symmetric matrix parametrised by a real root `g` of the cubic
//! `Q_sigma`.
//!
//! ```text
//!           | g       sqrt(l)  sqrt(m)   0        0       |
//!           | sqrt(l) 0        0         0        k       |
//! B(s, g) = | sqrt(m) 0        e1 - 2g   sqrt(m)  0       |
//!           | 0       0        sqrt(m)   g        sqrt(l) |
//!           | 0       k        0         sqrt(l)  0       |
//! ```

use serde::Serialize;

use crate::conditions::{Condition, ConditionReport};
use crate::cubic::Cubic;
use crate::error::{Error, Result};
use crate::matrix::{Provenance, SymMatrix5};
use crate::scalar::Scalar;
use crate::spectrum::SortedSpectrum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatternBScalars<T> {
    pub g: T,
    pub k: T,
    pub l: T,
    pub m: T,
}

/// `Q_sigma(z) = 2z^3 - 2(l3 + l5) z^2 - (e2 + (l3 - l5)^2) z + e3 + e1 (l3^2 + l5^2)`.
pub fn q_poly<T: Scalar>(s: &SortedSpectrum<T>) -> Cubic<T> {
    let [_, _, l3, _, l5] = *s.values();
    let e = s.elem_syms();
    let two = T::lit(2.0);
    let d = l3 - l5;
    Cubic::new(
        two,
        -two * (l3 + l5),
        -(e.e2 + d * d),
        e.e3 + e.e1 * (l3 * l3 + l5 * l5),
    )
}

/// Largest real root of `Q_sigma` in `[0, e1/2]`.
///
/// A root lying just outside the interval (within the root-merging tolerance
/// `1e-7 * (1 + |z|)`) is snapped onto the nearest endpoint, so an endpoint
/// that is itself a root is eligible.
pub fn find_g<T: Scalar>(s: &SortedSpectrum<T>) -> Option<T> {
    let hi = s.e1() / T::lit(2.0);
    if hi < T::zero() {
        return None;
    }
    let roots = q_poly(s).real_roots().expect("Q has leading coefficient 2");
    let tol = T::tol(1e-7);
    roots
        .into_iter()
        .rev()
        .find_map(|z| {
            if z >= T::zero() && z <= hi {
                Some(z)
            } else if z > hi && z - hi <= tol * (T::one() + hi.abs()) {
                Some(hi)
            } else if z < T::zero() && -z <= tol {
                Some(T::zero())
            } else {
                None
            }
        })
}

pub fn compute_klm<T: Scalar>(s: &SortedSpectrum<T>, g: T) -> PatternBScalars<T> {
    let [_, _, l3, _, l5] = *s.values();
    let e = s.elem_syms();
    PatternBScalars {
        g,
        k: g - l3 - l5,
        l: (g - l3) * (l5 - g),
        m: -g * g + e.e1 * g - (e.e2 + l3 * l3 + l5 * l5) / T::lit(2.0),
    }
}

/// Hypotheses under which B(sigma, g) is real and entrywise nonnegative for
/// some root g. On success the report carries the selected g.
///
/// Checks, in order: lambda5 >= -lambda1, e1 >= 0, lambda3 > e1, a root of
/// `Q_sigma` in `[0, e1/2]`.
pub fn lemma6_conditions<T: Scalar>(s: &SortedSpectrum<T>) -> ConditionReport<T> {
    let [l1, _, l3, _, l5] = *s.values();
    let e1 = s.e1();
    let mut report = ConditionReport::new();
    report.push(Condition::PerronDominates, l5 >= -l1);
    report.push(Condition::TraceNonnegative, e1 >= T::zero());
    report.push(Condition::ThirdAboveTrace, l3 > e1);
    let g = find_g(s);
    report.push(Condition::RootInRange, g.is_some());
    report.g = g;
    report
}

/// Builds B(sigma, g) for a root `g` of `Q_sigma` in `[0, e1/2]`.
///
/// `m` values in `[-1e-9 * max(1, e1^2), 0)` come from root-polishing noise
/// and are clamped to zero; anything more negative is reported as
/// [`Error::NegativeRadicand`].
pub fn build_pattern_b<T: Scalar>(s: &SortedSpectrum<T>, g: T) -> Result<SymMatrix5<T>> {
    let mut failures = lemma6_conditions(s).failures();
    if !g.is_finite() || !q_poly(s).is_root(g) {
        failures.push(Condition::GIsRoot);
    }
    let e1 = s.e1();
    if !(g >= T::zero() && g <= e1 / T::lit(2.0)) {
        failures.push(Condition::GInRange);
    }
    if !failures.is_empty() {
        return Err(Error::PreconditionViolated(failures));
    }

    let PatternBScalars { k, l, m, .. } = compute_klm(s, g);
    if l < T::zero() {
        return Err(Error::NegativeRadicand { name: "l", value: l.as_f64() });
    }
    let m = if m < T::zero() && m >= -T::tol(1e-9) * T::one().max(e1 * e1) {
        T::zero()
    } else {
        m
    };
    if m < T::zero() {
        return Err(Error::NegativeRadicand { name: "m", value: m.as_f64() });
    }
    let b = layout(s.e1(), g, k, l, m, Provenance::PatternB);
    debug_assert!(b.is_nonnegative(), "pattern B produced a negative entry");
    Ok(b)
}

/// B(sigma, g) for any real `g` with `l, m >= 0`, root or not. Entries may be
/// negative; provenance is `External`.
pub fn formal_matrix<T: Scalar>(s: &SortedSpectrum<T>, g: T) -> Option<SymMatrix5<T>> {
    let PatternBScalars { k, l, m, .. } = compute_klm(s, g);
    (l >= T::zero() && m >= T::zero()).then(|| layout(s.e1(), g, k, l, m, Provenance::External))
}

fn layout<T: Scalar>(e1: T, g: T, k: T, l: T, m: T, provenance: Provenance) -> SymMatrix5<T> {
    let (sl, sm) = (l.sqrt(), m.sqrt());
    let two = T::lit(2.0);
    SymMatrix5::from_upper(provenance, |i, j| match (i, j) {
        (0, 0) | (3, 3) => g,
        (2, 2) => e1 - two * g,
        (0, 1) | (3, 4) => sl,
        (0, 2) | (2, 3) => sm,
        (1, 4) => k,
        _ => T::zero(),
    })
}

/// Characteristic polynomial of B(sigma, g) in terms of `g, k, l, m, e1`,
/// highest degree first. Holds for any real `g`, root or not, and does not
/// require `l, m >= 0`.
pub fn closed_form_char_poly<T: Scalar>(s: &SortedSpectrum<T>, g: T) -> [T; 6] {
    let PatternBScalars { k, l, m, .. } = compute_klm(s, g);
    let e1 = s.e1();
    let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
    let g2 = g * g;
    let g3 = g2 * g;
    let k2 = k * k;
    let l2 = l * l;
    let q3 = -k2 - two * l - two * m + two * g * e1 - three * g2;
    let q2 = -two * g * l + e1 * k2 + two * l * e1 + two * m * g - g2 * e1 + two * g3;
    let q1 = four * g2 * l + two * k2 * m - two * k2 * g * e1 + three * k2 * g2 + two * m * l
        - two * g * l * e1
        + l2;
    let q0 = -two * l * k * m + two * g * l2 - two * k2 * m * g + k2 * g2 * e1 - two * k2 * g3
        - l2 * e1;
    [T::one(), -e1, q3, q2, q1, q0]
}
