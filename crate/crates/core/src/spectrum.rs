use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Five real eigenvalue candidates in arbitrary order. Entries are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum<T>([T; 5]);

/// Five real eigenvalue candidates in descending order.
///
/// Ordering is enforced; `lambda5 >= -lambda1` is not (see
/// [`SortedSpectrum::check_pf`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SortedSpectrum<T>([T; 5]);

/// Elementary symmetric polynomials e1..e5 of a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElemSyms<T> {
    pub e1: T,
    pub e2: T,
    pub e3: T,
    pub e4: T,
    pub e5: T,
}

fn check_finite<T: Scalar>(values: &[T; 5]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidSpectrum(format!(
            "entry {} is not finite ({})",
            i + 1,
            values[i]
        ))),
        None => Ok(()),
    }
}

fn elem_syms_of<T: Scalar>(values: &[T; 5]) -> ElemSyms<T> {
    // Multiply out prod (z + lambda_i) one factor at a time; coefficient n is e_n.
    let mut e = [T::zero(); 6];
    e[0] = T::one();
    for (k, &lambda) in values.iter().enumerate() {
        for n in (1..=k + 1).rev() {
            e[n] = e[n] + lambda * e[n - 1];
        }
    }
    ElemSyms { e1: e[1], e2: e[2], e3: e[3], e4: e[4], e5: e[5] }
}

impl<T: Scalar> Spectrum<T> {
    pub fn new(values: [T; 5]) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T; 5] {
        &self.0
    }

    /// Stable descending sort; tied values keep their input order.
    pub fn sort_descending(&self) -> SortedSpectrum<T> {
        let mut v = self.0;
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        SortedSpectrum(v)
    }

    pub fn elem_syms(&self) -> ElemSyms<T> {
        elem_syms_of(&self.0)
    }

    /// Multiplies every entry by `alpha`.
    pub fn scale(&self, alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidSpectrum(format!("scale factor {alpha} is not finite")));
        }
        Self::new(self.0.map(|x| x * alpha))
    }

    pub fn trace(&self) -> T {
        self.0.iter().fold(T::zero(), |acc, &x| acc + x)
    }

    /// Sum of entries is nonnegative.
    pub fn check_trace(&self) -> bool {
        self.trace() >= T::zero()
    }
}

impl<T: Scalar> SortedSpectrum<T> {
    /// Accepts values already in descending order.
    pub fn new(values: [T; 5]) -> Result<Self> {
        check_finite(&values)?;
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSorted);
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T; 5] {
        &self.0
    }

    /// The Perron candidate lambda1.
    pub fn perron(&self) -> T {
        self.0[0]
    }

    pub fn to_spectrum(&self) -> Spectrum<T> {
        Spectrum(self.0)
    }

    pub fn elem_syms(&self) -> ElemSyms<T> {
        elem_syms_of(&self.0)
    }

    pub fn e1(&self) -> T {
        self.to_spectrum().trace()
    }

    pub fn scale(&self, alpha: T) -> Result<Spectrum<T>> {
        self.to_spectrum().scale(alpha)
    }

    /// lambda1 dominates every entry in absolute value.
    pub fn check_pf(&self) -> bool {
        let [l1, .., l5] = self.0;
        l1 >= T::zero() && l1 >= -l5
    }

    pub fn check_trace(&self) -> bool {
        self.to_spectrum().check_trace()
    }

    /// lambda1 + lambda3 + lambda4 >= 0.
    pub fn check_mn(&self) -> bool {
        self.mn_sum() >= T::zero()
    }

    pub fn mn_sum(&self) -> T {
        let [l1, _, l3, l4, _] = self.0;
        l1 + l3 + l4
    }
}

impl<T: Scalar> ElemSyms<T> {
    pub fn as_array(&self) -> [T; 5] {
        [self.e1, self.e2, self.e3, self.e4, self.e5]
    }

    /// Monic characteristic polynomial coefficients, highest degree first:
    /// `[1, -e1, e2, -e3, e4, -e5]`.
    pub fn char_poly(&self) -> [T; 6] {
        [T::one(), -self.e1, self.e2, -self.e3, self.e4, -self.e5]
    }
}

impl<T: Scalar> FromStr for Spectrum<T> {
    type Err = Error;

    /// Parses `"a,b,c,d,e"`; decimal or scientific notation, surrounding
    /// whitespace ignored.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParseSpectrum { input: s.to_string(), reason };
        let fields: Vec<&str> = s.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(fail(format!("expected 5 comma-separated values, found {}", fields.len())));
        }
        let mut values = [T::zero(); 5];
        for (slot, field) in values.iter_mut().zip(&fields) {
            let x: f64 = field.parse().map_err(|_| fail(format!("{field:?} is not a number")))?;
            *slot = T::from_f64(x).ok_or_else(|| fail(format!("{field:?} is out of range")))?;
        }
        Spectrum::new(values).map_err(|e| fail(e.to_string()))
    }
}

impl<T: Scalar> FromStr for SortedSpectrum<T> {
    type Err = Error;

    /// Parses like [`Spectrum`] and sorts.
    fn from_str(s: &str) -> Result<Self> {
        Ok(s.parse::<Spectrum<T>>()?.sort_descending())
    }
}
