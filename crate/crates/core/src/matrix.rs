use serde::Serialize;

use crate::error::{Error, Result};
use crate::format;
use crate::scalar::Scalar;

/// Which constructor produced a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    PatternA,
    PatternB,
    /// Supplied from outside (parsed from a file, built by hand).
    External,
}

/// Dense symmetric 5x5 matrix. Symmetry is exact: only the upper triangle is
/// ever computed and the lower triangle is a copy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymMatrix5<T> {
    entries: [[T; 5]; 5],
    provenance: Provenance,
}

impl<T: Scalar> SymMatrix5<T> {
    /// Builds a matrix from `f(i, j)` evaluated on `i <= j` only.
    pub fn from_upper(provenance: Provenance, f: impl Fn(usize, usize) -> T) -> Self {
        let mut entries = [[T::zero(); 5]; 5];
        for i in 0..5 {
            for j in i..5 {
                let x = f(i, j);
                entries[i][j] = x;
                entries[j][i] = x;
            }
        }
        Self { entries, provenance }
    }

    /// Accepts an exactly symmetric, finite array.
    pub fn from_rows(rows: [[T; 5]; 5], provenance: Provenance) -> Result<Self> {
        for i in 0..5 {
            for j in 0..5 {
                if !rows[i][j].is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { entries: rows, provenance })
    }

    pub fn zeros() -> Self {
        Self::from_upper(Provenance::External, |_, _| T::zero())
    }

    pub fn diagonal(d: [T; 5]) -> Self {
        Self::from_upper(Provenance::External, |i, j| if i == j { d[i] } else { T::zero() })
    }

    pub fn entries(&self) -> &[[T; 5]; 5] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn trace(&self) -> T {
        (0..5).fold(T::zero(), |acc, i| acc + self.entries[i][i])
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries
            .iter()
            .flatten()
            .fold(T::zero(), |acc, &x| acc + x * x)
            .sqrt()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x >= T::zero())
    }

    pub fn min_entry(&self) -> T {
        self.entries.iter().flatten().fold(T::infinity(), |a, &b| a.min(b))
    }

    pub fn max_entry(&self) -> T {
        self.entries.iter().flatten().fold(T::neg_infinity(), |a, &b| a.max(b))
    }

    /// Five rows of five space-separated numbers, 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format::sig(x.as_f64(), 17)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// JSON array of row arrays, 17 significant digits.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|x| format::sig(x.as_f64(), 17)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    /// [`SymMatrix5::to_json`] as a raw JSON fragment, so it can be embedded
    /// in larger documents without re-rounding the numbers.
    pub fn to_json_raw(&self) -> Box<serde_json::value::RawValue> {
        serde_json::value::RawValue::from_string(self.to_json()).expect("matrix JSON is well formed")
    }
}

/// Parses a matrix written by [`SymMatrix5::to_text`] or [`SymMatrix5::to_json`].
/// Whitespace-separated text may also use commas between cells.
pub fn parse_matrix<T: Scalar>(input: &str) -> Result<SymMatrix5<T>> {
    let trimmed = input.trim();
    let rows: Vec<Vec<f64>> = if trimmed.starts_with('[') {
        serde_json::from_str(trimmed).map_err(|e| Error::ParseMatrix(e.to_string()))?
    } else {
        trimmed
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| Error::ParseMatrix(format!("{t:?} is not a number")))
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?
    };
    if rows.len() != 5 || rows.iter().any(|r| r.len() != 5) {
        return Err(Error::ParseMatrix("expected 5 rows of 5 numbers".into()));
    }
    let mut out = [[T::zero(); 5]; 5];
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[i][j] = T::from_f64(x).ok_or_else(|| Error::ParseMatrix(format!("{x} out of range")))?;
        }
    }
    SymMatrix5::from_rows(out, Provenance::External)
}
