//! Realizability decision procedure for sorted 5-element spectra.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix5;
use crate::pattern_a::{self, compute_uvwr, lemma4_conditions};
use crate::pattern_b::{self, lemma6_conditions};
use crate::scalar::Scalar;
use crate::spectrum::SortedSpectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Realizable,
    NotRealizable,
    Unknown,
}

/// What backs a `Realizable` verdict. Only the two pattern variants come with
/// an explicit matrix; the rest rest on classical results and are
/// decision-only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Certificate<T> {
    PatternA,
    PatternB { g: T },
    /// Positive lambda3 with lambda3 <= e1: a realizable 4x4 list plus a 1x1 block.
    DirectSumKnownRegion,
    /// At most one positive value and nonnegative trace.
    Suleimanova,
    /// Exactly two positive values; trace and lambda1+lambda3+lambda4 nonnegative.
    TwoPositiveCharacterization,
    /// Zero trace, nonnegative cube sum, lambda2 + lambda5 <= 0.
    TraceZeroCharacterization,
    /// Realizable by a perturbation closure theorem; no explicit matrix.
    GuoClosure,
}

/// Why a spectrum is not realizable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    PerronViolated,
    TraceViolated,
    McDonaldNeumannViolated,
    /// lambda3 > e1 >= 0 and lambda5 = -lambda1.
    AntipodalBoundary,
    TraceZeroConditionViolated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome<T> {
    Realizable(Certificate<T>),
    NotRealizable(Reason),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Warning {
    /// `|lambda5 + lambda1| <= 1e-12 * lambda1` without exact equality: the
    /// verdict sits next to a set where realizability flips.
    NearAntipodalBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Details<T> {
    pub e1: T,
    pub r: T,
    pub u: T,
    pub mn_sum: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizabilityDecision<T> {
    pub outcome: Outcome<T>,
    pub details: Details<T>,
    pub warnings: Vec<Warning>,
}

impl<T: Scalar> Certificate<T> {
    /// Wire name used in JSON and CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::PatternA => "PatternA",
            Certificate::PatternB { .. } => "PatternB",
            Certificate::DirectSumKnownRegion => "DirectSumKnownRegion",
            Certificate::Suleimanova => "Suleimanova",
            Certificate::TwoPositiveCharacterization => "Lemma3Characterization",
            Certificate::TraceZeroCharacterization => "TraceZeroCharacterization",
            Certificate::GuoClosure => "GuoClosure",
        }
    }

    pub fn g(&self) -> Option<T> {
        match self {
            Certificate::PatternB { g } => Some(*g),
            _ => None,
        }
    }

    pub fn has_matrix(&self) -> bool {
        matches!(self, Certificate::PatternA | Certificate::PatternB { .. })
    }

    /// The realizing matrix for pattern certificates, `None` otherwise.
    pub fn build_matrix(&self, s: &SortedSpectrum<T>) -> Option<Result<SymMatrix5<T>>> {
        match self {
            Certificate::PatternA => Some(pattern_a::build_pattern_a(s)),
            Certificate::PatternB { g } => Some(pattern_b::build_pattern_b(s, *g)),
            _ => None,
        }
    }

    /// One-line description of the result backing the certificate.
    pub fn backing(&self) -> &'static str {
        match self {
            Certificate::PatternA => "explicit pattern A matrix",
            Certificate::PatternB { .. } => "explicit pattern B matrix",
            Certificate::DirectSumKnownRegion => {
                "direct sum of a 4x4 realization (Loewy-London / Fiedler) and the 1x1 block (lambda3)"
            }
            Certificate::Suleimanova => "Suleimanova-Fiedler sufficient condition",
            Certificate::TwoPositiveCharacterization => {
                "two-positive-eigenvalue characterization (Loewy-McDonald, Spector)"
            }
            Certificate::TraceZeroCharacterization => "trace-zero 5x5 characterization",
            Certificate::GuoClosure => "Guo-type perturbation closure, no explicit matrix",
        }
    }
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::PerronViolated => "PFViolated",
            Reason::TraceViolated => "TraceViolated",
            Reason::McDonaldNeumannViolated => "MNViolated",
            Reason::AntipodalBoundary => "Lemma5Boundary",
            Reason::TraceZeroConditionViolated => "TraceZeroConditionViolated",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Realizable => "Realizable",
            Verdict::NotRealizable => "NotRealizable",
            Verdict::Unknown => "Unknown",
        })
    }
}

impl<T: Scalar> Outcome<T> {
    pub fn verdict(&self) -> Verdict {
        match self {
            Outcome::Realizable(_) => Verdict::Realizable,
            Outcome::NotRealizable(_) => Verdict::NotRealizable,
            Outcome::Unknown => Verdict::Unknown,
        }
    }

    pub fn certificate(&self) -> Option<Certificate<T>> {
        match self {
            Outcome::Realizable(c) => Some(*c),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            Outcome::NotRealizable(r) => Some(*r),
            _ => None,
        }
    }

    /// Certificate or reason tag; empty for `Unknown`.
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Realizable(c) => c.tag(),
            Outcome::NotRealizable(r) => r.tag(),
            Outcome::Unknown => "",
        }
    }
}

impl<T: Scalar> RealizabilityDecision<T> {
    pub fn verdict(&self) -> Verdict {
        self.outcome.verdict()
    }

    pub fn certificate(&self) -> Option<Certificate<T>> {
        self.outcome.certificate()
    }

    pub fn reason(&self) -> Option<Reason> {
        self.outcome.reason()
    }
}

impl<T: Scalar> Serialize for RealizabilityDecision<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RealizabilityDecision", 6)?;
        st.serialize_field("verdict", &self.verdict())?;
        match self.certificate() {
            Some(c) => st.serialize_field("certificate", c.tag())?,
            None => st.skip_field("certificate")?,
        }
        match self.reason() {
            Some(r) => st.serialize_field("reason", r.tag())?,
            None => st.skip_field("reason")?,
        }
        match self.certificate().and_then(|c| c.g()) {
            Some(g) => st.serialize_field("g", &g)?,
            None => st.skip_field("g")?,
        }
        st.serialize_field("details", &self.details)?;
        if self.warnings.is_empty() {
            st.skip_field("warnings")?;
        } else {
            st.serialize_field("warnings", &self.warnings)?;
        }
        st.end()
    }
}

pub(crate) fn details<T: Scalar>(s: &SortedSpectrum<T>) -> Details<T> {
    let sc = compute_uvwr(s);
    Details { e1: s.e1(), r: sc.r, u: sc.u, mn_sum: s.mn_sum() }
}

/// Decides realizability by the first matching rule:
///
/// 1. Perron or trace condition fails: not realizable.
/// 2. lambda1 + lambda3 + lambda4 < 0: not realizable.
/// 3. lambda2 <= 0: Suleimanova.
/// 4. lambda2 > 0 >= lambda3: two-positive characterization.
/// 5. 0 < lambda3 <= e1: direct sum with a known 4x4 realization.
/// 6. lambda3 > e1 and lambda5 = -lambda1 exactly: not realizable.
/// 7. lambda3 > e1: pattern A, else pattern B, else unknown.
pub fn classify<T: Scalar>(s: &SortedSpectrum<T>) -> RealizabilityDecision<T> {
    let [l1, l2, l3, _, l5] = *s.values();
    let e1 = s.e1();
    let mut warnings = Vec::new();
    if l5 != -l1 && (l5 + l1).abs() <= T::tol(1e-12) * l1 {
        warnings.push(Warning::NearAntipodalBoundary);
    }
    let outcome = if !s.check_pf() {
        Outcome::NotRealizable(Reason::PerronViolated)
    } else if !s.check_trace() {
        Outcome::NotRealizable(Reason::TraceViolated)
    } else if !s.check_mn() {
        Outcome::NotRealizable(Reason::McDonaldNeumannViolated)
    } else if l2 <= T::zero() {
        Outcome::Realizable(Certificate::Suleimanova)
    } else if l3 <= T::zero() {
        Outcome::Realizable(Certificate::TwoPositiveCharacterization)
    } else if l3 <= e1 {
        Outcome::Realizable(Certificate::DirectSumKnownRegion)
    } else if l5 == -l1 {
        Outcome::NotRealizable(Reason::AntipodalBoundary)
    } else if lemma4_conditions(s).passed() {
        Outcome::Realizable(Certificate::PatternA)
    } else {
        let report = lemma6_conditions(s);
        match (report.passed(), report.g) {
            (true, Some(g)) => Outcome::Realizable(Certificate::PatternB { g }),
            _ => Outcome::Unknown,
        }
    };
    RealizabilityDecision { outcome, details: details(s), warnings }
}

/// Decides realizability by a trace-zero symmetric nonnegative matrix.
///
/// Requires `|sum| <= 1e-12 * max|lambda_i|`; otherwise
/// [`Error::NotTraceZero`]. A list with lambda5 < -lambda1 is reported as a
/// Perron violation.
pub fn classify_trace_zero<T: Scalar>(s: &SortedSpectrum<T>) -> Result<RealizabilityDecision<T>> {
    let values = s.values();
    let [_, l2, _, _, l5] = *values;
    let sum = s.e1();
    let max_abs = values.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    if sum.abs() > T::tol(1e-12) * max_abs {
        return Err(Error::NotTraceZero { sum: sum.as_f64() });
    }
    let cubes = values.iter().fold(T::zero(), |acc, &x| acc + x * x * x);
    let outcome = if !s.check_pf() {
        Outcome::NotRealizable(Reason::PerronViolated)
    } else if cubes >= T::zero() && l2 + l5 <= T::zero() {
        Outcome::Realizable(Certificate::TraceZeroCharacterization)
    } else {
        Outcome::NotRealizable(Reason::TraceZeroConditionViolated)
    };
    Ok(RealizabilityDecision { outcome, details: details(s), warnings: Vec::new() })
}
