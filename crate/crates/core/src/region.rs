//! Grid sampler over the normalized spectrum space `lambda1 = 1`.
//!
//! Points are parametrised by `(t, x, d, y)` with
//! `sigma = (1, x, y, d - x - y, -d - 1 + t)`, so `x = lambda2`, `y = lambda3`,
//! `d = lambda2 + lambda3 + lambda4` and `t = e1`. Restricting `y > t` keeps
//! every emitted point inside the region `lambda3 > e1`.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::classify::{classify, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::format;
use crate::matrix::SymMatrix5;
use crate::scalar::Scalar;
use crate::spectrum::SortedSpectrum;
use crate::verify::{verify_spectrum, VerificationReport};

pub const CSV_HEADER: &str = "lambda2,lambda3,lambda4,lambda5,e1,u,r,g,verdict,tag";

#[derive(Debug, Clone, PartialEq)]
pub struct RegionSample<T> {
    pub lambda2: T,
    pub lambda3: T,
    pub lambda4: T,
    pub lambda5: T,
    pub e1: T,
    pub u: T,
    pub r: T,
    pub g: Option<T>,
    pub outcome: Outcome<T>,
}

impl<T: Scalar> RegionSample<T> {
    pub fn spectrum(&self) -> SortedSpectrum<T> {
        SortedSpectrum::new([T::one(), self.lambda2, self.lambda3, self.lambda4, self.lambda5])
            .expect("samples are sorted by construction")
    }

    pub fn verdict(&self) -> Verdict {
        self.outcome.verdict()
    }

    /// Builds the pattern matrix behind a pattern certificate.
    pub fn matrix(&self) -> Option<Result<SymMatrix5<T>>> {
        self.outcome.certificate()?.build_matrix(&self.spectrum())
    }

    /// Verifies the pattern matrix, if any, against the sample's spectrum.
    pub fn verify(&self, rel_tol: T) -> Option<Result<VerificationReport<T>>> {
        let m = self.matrix()?;
        Some(m.and_then(|m| verify_spectrum(&m, &self.spectrum(), rel_tol)))
    }

    pub fn csv_row(&self) -> String {
        let num = |x: T| format::sig(x.as_f64(), 12);
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            num(self.lambda2),
            num(self.lambda3),
            num(self.lambda4),
            num(self.lambda5),
            num(self.e1),
            num(self.u),
            num(self.r),
            self.g.map(num).unwrap_or_default(),
            self.verdict(),
            self.outcome.tag(),
        )
    }
}

/// Classifies the single point `(t, x, d, y)`.
///
/// `None` unless the point is a descending list with `lambda2 <= 1`,
/// `lambda5 >= -1` and (as computed) `lambda3 > e1`.
pub fn sample_point<T: Scalar>(t: T, x: T, d: T, y: T) -> Option<RegionSample<T>> {
    let one = T::one();
    let values = [one, x, y, d - x - y, -d - one + t];
    let s = SortedSpectrum::new(values).ok()?;
    if values[4] < -one || !(values[2] > s.e1()) {
        return None;
    }
    let decision = classify(&s);
    Some(RegionSample {
        lambda2: values[1],
        lambda3: values[2],
        lambda4: values[3],
        lambda5: values[4],
        e1: decision.details.e1,
        u: decision.details.u,
        r: decision.details.r,
        g: decision.certificate().and_then(|c| c.g()),
        outcome: decision.outcome,
    })
}

fn frac<T: Scalar>(num: usize, den: usize) -> T {
    T::from_usize(num).expect("grid index") / T::from_usize(den).expect("grid size")
}

/// Grid abscissae for one `t`: `x` on `(t, 1]` and `d` on
/// `[(3t - 1)/2, t]`, each with `grid_n` points.
fn xd_cells<T: Scalar>(t: T, grid_n: usize) -> Vec<(T, T, T)> {
    let one = T::one();
    let two = T::lit(2.0);
    let d_lo = (T::lit(3.0) * t - one) / two;
    let mut cells = Vec::with_capacity(grid_n * grid_n);
    for j in 0..grid_n {
        let x = t + (one - t) * frac::<T>(j + 1, grid_n);
        for k in 0..grid_n {
            let d = d_lo + (t - d_lo) * frac::<T>(k, grid_n - 1);
            cells.push((t, x, d));
        }
    }
    cells
}

/// `y` values for one `(t, x, d)` cell: `grid_n` points on
/// `(t, min(x, 2d + 1 - t - x)]`, empty when that interval is.
pub fn y_values<T: Scalar>(t: T, x: T, d: T, grid_n: usize) -> Vec<T> {
    let hi = x.min(T::lit(2.0) * d + T::one() - t - x);
    // rounding can make the degenerate interval (t, t] look non-empty
    if !(hi - t > T::tol(1e-12)) {
        return Vec::new();
    }
    (0..grid_n).map(|m| t + (hi - t) * frac::<T>(m + 1, grid_n)).collect()
}

/// Samples the region for every `t` in `t_values`, in `(t, x, d, y)`
/// lexicographic order. Cells are evaluated in parallel; the output order
/// does not depend on scheduling.
pub fn sample_region<T: Scalar>(grid_n: usize, t_values: &[T]) -> Result<Vec<RegionSample<T>>> {
    if grid_n < 2 {
        return Err(Error::GridTooSmall);
    }
    if let Some(t) = t_values.iter().find(|t| !(**t >= T::zero() && **t < T::one())) {
        return Err(Error::InvalidSampleParameter(format!("t = {t} is outside [0, 1)")));
    }
    let cells: Vec<(T, T, T)> = t_values.iter().flat_map(|&t| xd_cells(t, grid_n)).collect();
    let samples: Vec<RegionSample<T>> = cells
        .par_iter()
        .flat_map_iter(|&(t, x, d)| {
            y_values(t, x, d, grid_n)
                .into_iter()
                .filter_map(move |y| sample_point(t, x, d, y))
        })
        .collect();
    if samples.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(samples)
}

pub fn write_csv<T: Scalar, W: Write>(samples: &[RegionSample<T>], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in samples {
        writeln!(out, "{}", s.csv_row())?;
    }
    Ok(())
}
