//! Guo perturbations: raise lambda1 by `s` and move one other eigenvalue by
//! `+s` or `-s`, then decide whether the perturbed list stays realizable.

use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::classify::{self, classify, classify_trace_zero, Certificate, Outcome, RealizabilityDecision};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix5;
use crate::pattern_a::{build_pattern_a, compute_uvwr, lemma4_conditions};
use crate::pattern_b::{build_pattern_b, lemma6_conditions};
use crate::scalar::Scalar;
use crate::spectrum::{SortedSpectrum, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(Error::InvalidPerturbation(format!("unknown sign {other:?}"))),
        }
    }
}

/// `lambda1 -> lambda1 + s`, `lambda_index -> lambda_index +- s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Perturbation<T> {
    index: usize,
    sign: Sign,
    s: T,
}

impl<T: Scalar> Perturbation<T> {
    /// `index` is 1-based in the sorted list and must be in 2..=5; `s > 0`.
    pub fn new(index: usize, sign: Sign, s: T) -> Result<Self> {
        if !(2..=5).contains(&index) {
            return Err(Error::InvalidPerturbation(format!("index {index} is not in 2..=5")));
        }
        if !(s > T::zero()) || !s.is_finite() {
            return Err(Error::InvalidPerturbation(format!("magnitude {s} is not positive")));
        }
        Ok(Self { index, sign, s })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> T {
        self.s
    }
}

/// Applies the perturbation and re-sorts.
pub fn apply_perturbation<T: Scalar>(s: &SortedSpectrum<T>, p: &Perturbation<T>) -> SortedSpectrum<T> {
    let mut v = *s.values();
    v[0] = v[0] + p.s;
    let i = p.index - 1;
    v[i] = match p.sign {
        Sign::Plus => v[i] + p.s,
        Sign::Minus => v[i] - p.s,
    };
    Spectrum::new(v).expect("perturbed values are finite").sort_descending()
}

/// Which rule produced a perturbed decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuoRule {
    /// Trace-zero realizable list, minus-perturbation.
    TraceZeroClosure,
    /// Realizable list with lambda3 <= e1, either sign.
    KnownRegionClosure,
    /// Pattern A list, minus-perturbation.
    PatternAClosure,
    /// Pattern B list with r < 0, minus-perturbation.
    PatternBClosure,
    /// No closure rule applies; the perturbed list was classified directly.
    Direct,
}

impl GuoRule {
    pub fn tag(&self) -> &'static str {
        match self {
            GuoRule::TraceZeroClosure => "thm6",
            GuoRule::KnownRegionClosure => "thm7",
            GuoRule::PatternAClosure => "thm10",
            GuoRule::PatternBClosure => "thm11",
            GuoRule::Direct => "direct",
        }
    }
}

impl fmt::Display for GuoRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedDecision<T> {
    pub rule: GuoRule,
    pub decision: RealizabilityDecision<T>,
    pub perturbed: SortedSpectrum<T>,
    /// Explicit realization of the perturbed list, when a pattern applies to it.
    pub matrix: Option<SymMatrix5<T>>,
}

fn pattern_matrix<T: Scalar>(s: &SortedSpectrum<T>) -> Option<(Certificate<T>, SymMatrix5<T>)> {
    if lemma4_conditions(s).passed() {
        if let Ok(m) = build_pattern_a(s) {
            return Some((Certificate::PatternA, m));
        }
    }
    let report = lemma6_conditions(s);
    if let (true, Some(g)) = (report.passed(), report.g) {
        if let Ok(m) = build_pattern_b(s, g) {
            return Some((Certificate::PatternB { g }, m));
        }
    }
    None
}

/// Decides realizability of the perturbed list by the first matching rule:
///
/// 1. trace-zero realizable, minus: realizable for any `s`.
/// 2. lambda3 <= e1 and realizable: realizable for any `s`, either sign.
/// 3. pattern A hypotheses hold, minus: realizable for any `s`.
/// 4. pattern B hypotheses hold with r < 0, minus: realizable for any `s`.
/// 5. otherwise classify the perturbed list directly.
///
/// Closure rules report a pattern certificate and matrix when one of the
/// patterns applies to the perturbed list itself, and a decision-only
/// certificate otherwise.
pub fn decide_perturbed<T: Scalar>(s: &SortedSpectrum<T>, p: &Perturbation<T>) -> PerturbedDecision<T> {
    let perturbed = apply_perturbation(s, p);
    let minus = p.sign == Sign::Minus;
    let [_, _, l3, _, _] = *s.values();

    let trace_zero_ok = minus
        && classify_trace_zero(s)
            .map(|d| d.verdict() == classify::Verdict::Realizable)
            .unwrap_or(false);
    let rule = if trace_zero_ok {
        GuoRule::TraceZeroClosure
    } else if l3 <= s.e1() && classify(s).verdict() == classify::Verdict::Realizable {
        GuoRule::KnownRegionClosure
    } else if minus && lemma4_conditions(s).passed() {
        GuoRule::PatternAClosure
    } else if minus && lemma6_conditions(s).passed() && compute_uvwr(s).r < T::zero() {
        GuoRule::PatternBClosure
    } else {
        GuoRule::Direct
    };

    let built = pattern_matrix(&perturbed);
    let decision = match rule {
        GuoRule::Direct => classify(&perturbed),
        _ => {
            let certificate = match (&built, rule) {
                (Some((c, _)), _) => *c,
                (None, GuoRule::TraceZeroClosure) => Certificate::TraceZeroCharacterization,
                (None, _) => Certificate::GuoClosure,
            };
            RealizabilityDecision {
                outcome: Outcome::Realizable(certificate),
                details: classify::details(&perturbed),
                warnings: Vec::new(),
            }
        }
    };
    let matrix = match decision.certificate() {
        Some(c) if c.has_matrix() => built.map(|(_, m)| m),
        _ => None,
    };
    PerturbedDecision { rule, decision, perturbed, matrix }
}

/// Largest `s` of the form `start / 2^k` at which `accept` holds for the
/// perturbation at every index in `indices`, searching down from the smallest
/// positive gap between consecutive eigenvalues.
pub fn closure_radius<T: Scalar>(
    s: &SortedSpectrum<T>,
    indices: &[usize],
    sign: Sign,
    accept: impl Fn(&SortedSpectrum<T>) -> bool,
) -> Option<T> {
    let v = s.values();
    let start = v
        .windows(2)
        .map(|w| w[0] - w[1])
        .filter(|&gap| gap > T::zero())
        .fold(None, |acc: Option<T>, gap| Some(acc.map_or(gap, |a| a.min(gap))))
        .unwrap_or_else(|| T::one().max(v[0].abs()));
    let half = T::lit(0.5);
    let mut step = start;
    while step > T::min_positive_value() {
        let ok = indices.iter().all(|&i| {
            Perturbation::new(i, sign, step)
                .map(|p| accept(&apply_perturbation(s, &p)))
                .unwrap_or(false)
        });
        if ok {
            return Some(step);
        }
        step = step * half;
    }
    None
}

impl<T: Scalar> Serialize for PerturbedDecision<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PerturbedDecision", 8)?;
        st.serialize_field("verdict", &self.decision.verdict())?;
        st.serialize_field("rule", self.rule.tag())?;
        match self.decision.certificate() {
            Some(c) => st.serialize_field("certificate", c.tag())?,
            None => st.skip_field("certificate")?,
        }
        match self.decision.reason() {
            Some(r) => st.serialize_field("reason", r.tag())?,
            None => st.skip_field("reason")?,
        }
        match self.decision.certificate().and_then(|c| c.g()) {
            Some(g) => st.serialize_field("g", &g)?,
            None => st.skip_field("g")?,
        }
        st.serialize_field("perturbed", &self.perturbed)?;
        st.serialize_field("details", &self.decision.details)?;
        match &self.matrix {
            Some(m) => st.serialize_field("matrix", &m.to_json_raw())?,
            None => st.skip_field("matrix")?,
        }
        st.end()
    }
}
