use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Real cubic `c3 z^3 + c2 z^2 + c1 z + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cubic<T> {
    pub c3: T,
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

const NEWTON_STEPS: usize = 8;

impl<T: Scalar> Cubic<T> {
    pub fn new(c3: T, c2: T, c1: T, c0: T) -> Self {
        Self { c3, c2, c1, c0 }
    }

    pub fn eval(&self, z: T) -> T {
        ((self.c3 * z + self.c2) * z + self.c1) * z + self.c0
    }

    pub fn eval_derivative(&self, z: T) -> T {
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        (three * self.c3 * z + two * self.c2) * z + self.c1
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> T {
        self.c3.abs().max(self.c2.abs()).max(self.c1.abs()).max(self.c0.abs())
    }

    /// Residual bound a root must satisfy: `1e-9 * max|c| * max(1, |z|)^3`.
    pub fn residual_bound(&self, z: T) -> T {
        let m = T::one().max(z.abs());
        T::tol(1e-9) * self.scale() * m * m * m
    }

    pub fn is_root(&self, z: T) -> bool {
        self.eval(z).abs() <= self.residual_bound(z)
    }

    /// All real roots, ascending, with multiplicities collapsed.
    ///
    /// Closed form (trigonometric for three real roots, Cardano otherwise)
    /// on the monic depressed cubic, then Newton polishing against the
    /// original coefficients. Roots within `1e-7 * (1 + |z|)` of each other
    /// are merged.
    pub fn real_roots(&self) -> Result<Vec<T>> {
        if self.c3 == T::zero() {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let (two, three) = (T::lit(2.0), T::lit(3.0));
        let a = self.c2 / self.c3;
        let b = self.c1 / self.c3;
        let c = self.c0 / self.c3;
        let shift = a / three;
        // t^3 + p t + q with z = t - a/3
        let p = b - a * a / three;
        let q = two * a * a * a / T::lit(27.0) - a * b / three + c;
        let half_q = q / two;
        let third_p = p / three;
        let disc = half_q * half_q + third_p * third_p * third_p;
        let merge_tol = T::tol(1e-7);

        let mut candidates = Vec::with_capacity(3);
        if disc > T::zero() {
            let big = -half_q.signum() * (half_q.abs() + disc.sqrt()).cbrt();
            let small = if big != T::zero() { -third_p / big } else { T::zero() };
            let t = big + small;
            candidates.push(t - shift);
            // The complex pair is -t/2 +- i (sqrt(3)/2)(big - small); keep its
            // real part when the pair is numerically a double root.
            let re = -t / two - shift;
            let im = T::lit(0.75).sqrt() * (big - small).abs();
            if im <= merge_tol * (T::one() + re.abs()) {
                candidates.push(re);
            }
        } else if p == T::zero() {
            candidates.push(-shift);
        } else {
            let m = two * (-third_p).sqrt();
            let arg = (three * q / (two * p) * (-three / p).sqrt()).max(-T::one()).min(T::one());
            let theta = arg.acos() / three;
            let step = T::lit(2.0 * std::f64::consts::PI / 3.0);
            for k in 0..3 {
                let t = m * (theta - step * T::from_usize(k).expect("small int")).cos();
                candidates.push(t - shift);
            }
        }

        let mut roots: Vec<T> = candidates.into_iter().map(|z| self.polish(z)).collect();
        roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
        let mut merged: Vec<T> = Vec::with_capacity(roots.len());
        for z in roots {
            match merged.last_mut() {
                Some(prev) if (z - *prev).abs() <= merge_tol * (T::one() + z.abs()) => {
                    if self.eval(z).abs() < self.eval(*prev).abs() {
                        *prev = z;
                    }
                }
                _ => merged.push(z),
            }
        }
        Ok(merged)
    }

    fn polish(&self, mut z: T) -> T {
        let mut fz = self.eval(z).abs();
        for _ in 0..NEWTON_STEPS {
            if fz == T::zero() {
                break;
            }
            let d = self.eval_derivative(z);
            if d == T::zero() {
                break;
            }
            let next = z - self.eval(z) / d;
            let fnext = self.eval(next).abs();
            if !(fnext < fz) {
                break;
            }
            z = next;
            fz = fnext;
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(c: [f64; 4]) -> Vec<f64> {
        Cubic::new(c[0], c[1], c[2], c[3]).real_roots().unwrap()
    }

    #[test]
    fn factorable_cubic() {
        let r = roots([2.0, 0.0, -2.0, 0.0]);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert_eq!(
            Cubic::new(0.0, 1.0, 2.0, 3.0).real_roots(),
            Err(Error::DegenerateLeadingCoefficient)
        );
    }

    #[test]
    fn single_real_root() {
        // (z - 2)(z^2 + 1)
        let r = roots([1.0, -2.0, 1.0, -2.0]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn multiplicities_collapse() {
        assert_eq!(roots([2.0, 0.0, 0.0, 0.0]), vec![0.0]);
        // (z - 1)^2 (z + 2) = z^3 - 3z + 2
        let r = roots([1.0, 0.0, -3.0, 2.0]);
        assert_eq!(r.len(), 2, "{r:?}");
        assert!((r[0] + 2.0).abs() < 1e-12);
        assert!((r[1] - 1.0).abs() < 1e-7);
        // (z - 3)^3
        let r = roots([1.0, -9.0, 27.0, -27.0]);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 3.0).abs() < 1e-4);
    }

    #[test]
    fn works_in_f32() {
        let r = Cubic::<f32>::new(2.0, 0.0, -2.0, 0.0).real_roots().unwrap();
        assert_eq!(r.len(), 3);
        assert!((r[2] - 1.0).abs() < 1e-6);
    }
}
