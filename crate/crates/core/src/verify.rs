//! Verification oracles that share no code path with the pattern
//! constructors: a trace-recurrence characteristic polynomial and a cyclic
//! Jacobi eigensolver.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix5;
use crate::scalar::Scalar;
use crate::spectrum::SortedSpectrum;

/// Sweep budget for [`sym_eigenvalues`].
pub const MAX_SWEEPS: usize = 30;

type Mat<T> = [[T; 5]; 5];

fn mul<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let mut out = [[T::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).fold(T::zero(), |acc, k| acc + a[i][k] * b[k][j]);
        }
    }
    out
}

fn trace<T: Scalar>(a: &Mat<T>) -> T {
    (0..5).fold(T::zero(), |acc, i| acc + a[i][i])
}

/// Coefficients of `det(zI - M)`, highest degree first (leading 1), by the
/// Faddeev-LeVerrier recurrence.
pub fn char_poly_coeffs<T: Scalar>(m: &SymMatrix5<T>) -> [T; 6] {
    let a = m.entries();
    let mut coeffs = [T::zero(); 6];
    coeffs[0] = T::one();
    let mut mk = [[T::zero(); 5]; 5];
    for k in 1..=5 {
        // M_k = A M_{k-1} + c_{k-1} I
        mk = mul(a, &mk);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = row[i] + coeffs[k - 1];
        }
        let am = mul(a, &mk);
        coeffs[k] = -trace(&am) / T::from_usize(k).expect("small int");
    }
    coeffs
}

fn off_norm<T: Scalar>(a: &Mat<T>) -> T {
    let mut sum = T::zero();
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                sum = sum + a[i][j] * a[i][j];
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a symmetric matrix, descending.
///
/// Row-cyclic Jacobi with no rotation threshold. Converged once the
/// off-diagonal Frobenius norm is at most `1e-13 * (1 + ||M||_F)`.
pub fn sym_eigenvalues<T: Scalar>(m: &SymMatrix5<T>) -> Result<SortedSpectrum<T>> {
    let mut a = *m.entries();
    let limit = T::tol(1e-13) * (T::one() + m.frobenius_norm());
    let mut sweeps = 0;
    while off_norm(&a) > limit {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..4 {
            for q in p + 1..5 {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }
    let mut d = [T::zero(); 5];
    for (i, x) in d.iter_mut().enumerate() {
        *x = a[i][i];
    }
    d.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    SortedSpectrum::new(d)
}

fn rotate<T: Scalar>(a: &mut Mat<T>, p: usize, q: usize) {
    let apq = a[p][q];
    if apq == T::zero() {
        return;
    }
    let two = T::lit(2.0);
    let theta = (a[q][q] - a[p][p]) / (two * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(T::one()));
    let c = T::one() / t.hypot(T::one());
    let s = t * c;
    let tau = s / (T::one() + c);
    a[p][p] = a[p][p] - t * apq;
    a[q][q] = a[q][q] + t * apq;
    a[p][q] = T::zero();
    a[q][p] = T::zero();
    for r in 0..5 {
        if r == p || r == q {
            continue;
        }
        let g = a[r][p];
        let h = a[r][q];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        a[r][p] = rp;
        a[p][r] = rp;
        a[r][q] = rq;
        a[q][r] = rq;
    }
}

/// Result of comparing a matrix's eigenvalues with a target spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub pass: bool,
    pub max_deviation: T,
    pub eigenvalues: SortedSpectrum<T>,
    pub target: SortedSpectrum<T>,
}

/// Passes iff `max_i |eig_i - lambda_i| <= rel_tol * max(1, |lambda1|)`.
pub fn verify_spectrum<T: Scalar>(
    m: &SymMatrix5<T>,
    target: &SortedSpectrum<T>,
    rel_tol: T,
) -> Result<VerificationReport<T>> {
    if !(rel_tol > T::zero()) || !rel_tol.is_finite() {
        return Err(Error::InvalidTolerance);
    }
    let eig = sym_eigenvalues(m)?;
    let max_deviation = eig
        .values()
        .iter()
        .zip(target.values())
        .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()));
    let bound = rel_tol * T::one().max(target.perron().abs());
    Ok(VerificationReport {
        pass: max_deviation <= bound,
        max_deviation,
        eigenvalues: eig,
        target: *target,
    })
}

/// Every entry lies in `[0, rho]`, rho the spectral radius, with slack
/// `1e-12 * (1 + rho)` at both ends.
pub fn entry_bound_check<T: Scalar>(m: &SymMatrix5<T>) -> bool {
    let Ok(eig) = sym_eigenvalues(m) else {
        return false;
    };
    let rho = eig.values().iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    let slack = T::tol(1e-12) * (T::one() + rho);
    m.min_entry() >= -slack && m.max_entry() <= rho + slack
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Provenance;

    #[test]
    fn char_poly_of_diagonal() {
        let m = SymMatrix5::<f64>::diagonal([1.0, 2.0, 3.0, 4.0, 5.0]);
        // prod (z - i), expanded by hand: e = (15, 85, 225, 274, 120)
        assert_eq!(char_poly_coeffs(&m), [1.0, -15.0, 85.0, -225.0, 274.0, -120.0]);
        assert_eq!(char_poly_coeffs(&SymMatrix5::<f64>::zeros()), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = SymMatrix5::<f64>::diagonal([1.0, 3.0, 5.0, 2.0, 4.0]);
        assert_eq!(sym_eigenvalues(&m).unwrap().values(), &[5.0, 4.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn eigenvalues_of_all_ones() {
        let m = SymMatrix5::<f64>::from_upper(Provenance::External, |_, _| 1.0);
        let eig = sym_eigenvalues(&m).unwrap();
        assert!((eig.values()[0] - 5.0).abs() < 1e-13);
        for &x in &eig.values()[1..] {
            assert!(x.abs() < 1e-13);
        }
    }

    #[test]
    fn verify_reports() {
        let zero = SymMatrix5::<f64>::zeros();
        let target = SortedSpectrum::new([0.0; 5]).unwrap();
        assert!(verify_spectrum(&zero, &target, 1e-300).unwrap().pass);

        let id = SymMatrix5::<f64>::diagonal([1.0; 5]);
        let target = SortedSpectrum::new([2.0, 1.0, 1.0, 1.0, 1.0]).unwrap();
        let rep = verify_spectrum(&id, &target, 1e-9).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.max_deviation, 1.0);
        assert_eq!(verify_spectrum(&id, &target, 0.0), Err(Error::InvalidTolerance));
    }

    #[test]
    fn entry_bound() {
        assert!(entry_bound_check(&SymMatrix5::<f64>::diagonal([1.0, 0.0, 0.0, 0.0, 0.0])));
        // [[0, 2], [2, 0]] block has rho 2 and entries within bound; a negative entry fails.
        let m = SymMatrix5::<f64>::from_upper(Provenance::External, |i, j| {
            if (i, j) == (0, 1) { -1.0 } else { 0.0 }
        });
        assert!(!entry_bound_check(&m));
    }

    #[test]
    fn jacobi_in_f32() {
        let m = SymMatrix5::<f32>::from_upper(Provenance::External, |i, j| (i + j) as f32 * 0.5);
        let eig = sym_eigenvalues(&m).unwrap();
        let sum: f32 = eig.values().iter().sum();
        assert!((sum - m.trace()).abs() < 1e-4);
    }
}
