use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// A single hypothesis checked before building a pattern matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Condition {
    /// e1 >= 0.
    TraceNonnegative,
    /// lambda5 >= -lambda1.
    PerronDominates,
    /// lambda5 > -lambda1.
    PerronStrictlyDominates,
    /// lambda3 > e1.
    ThirdAboveTrace,
    /// r(sigma) >= 0.
    RNonnegative,
    /// Q_sigma has a real root in [0, e1/2].
    RootInRange,
    /// The supplied g satisfies Q_sigma(g) = 0 within root tolerance.
    GIsRoot,
    /// The supplied g lies in [0, e1/2].
    GInRange,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Condition::TraceNonnegative => "e1 >= 0",
            Condition::PerronDominates => "lambda5 >= -lambda1",
            Condition::PerronStrictlyDominates => "lambda5 > -lambda1",
            Condition::ThirdAboveTrace => "lambda3 > e1",
            Condition::RNonnegative => "r >= 0",
            Condition::RootInRange => "Q has a root in [0, e1/2]",
            Condition::GIsRoot => "Q(g) = 0",
            Condition::GInRange => "0 <= g <= e1/2",
        };
        f.write_str(text)
    }
}

/// Pass/fail outcome of each hypothesis, in evaluation order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport<T> {
    pub checks: Vec<(Condition, bool)>,
    /// The selected pattern-B parameter, when the report is for pattern B and it exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<T>,
}

impl<T: Scalar> ConditionReport<T> {
    pub(crate) fn new() -> Self {
        Self { checks: Vec::new(), g: None }
    }

    pub(crate) fn push(&mut self, cond: Condition, ok: bool) {
        self.checks.push((cond, ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> Vec<Condition> {
        self.checks
            .iter()
            .filter(|&&(_, ok)| !ok)
            .map(|&(c, _)| c)
            .collect()
    }

    pub fn holds(&self, cond: Condition) -> Option<bool> {
        self.checks.iter().find(|(c, _)| *c == cond).map(|&(_, ok)| ok)
    }
}
