//! Samplers and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sniep5::{lemma4_conditions, lemma6_conditions, SortedSpectrum, SymMatrix5};

/// e_n by summing all n-subset products (2^5 subsets), independent of the
/// library's iterated-multiplication route.
pub fn brute_elem_syms(v: &[f64; 5]) -> [f64; 5] {
    let mut e = [0.0; 5];
    for mask in 1u32..32 {
        let n = mask.count_ones() as usize;
        let prod: f64 = (0..5).filter(|i| mask & (1 << i) != 0).map(|i| v[i]).product();
        e[n - 1] += prod;
    }
    e
}

/// Scale for brute-force e_n comparisons: sum of |products| of each order.
pub fn brute_elem_scale(v: &[f64; 5]) -> [f64; 5] {
    let a = v.map(f64::abs);
    brute_elem_syms(&a)
}

/// Coefficients of prod (z - lambda_i), highest degree first, by expanding one
/// factor at a time from the highest coefficient down.
pub fn expand_monic(v: &[f64; 5]) -> [f64; 6] {
    let mut c = vec![1.0];
    for &root in v {
        let mut next = vec![0.0; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i] += ci;
            next[i + 1] -= root * ci;
        }
        c = next;
    }
    c.try_into().unwrap()
}

/// Determinant of a 5x5 matrix by cofactor expansion along the first row.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<f64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// det(zI - M) evaluated directly.
pub fn char_poly_at(m: &SymMatrix5<f64>, z: f64) -> f64 {
    let rows: Vec<Vec<f64>> = (0..5)
        .map(|i| (0..5).map(|j| if i == j { z - m.get(i, j) } else { -m.get(i, j) }).collect())
        .collect();
    det(&rows)
}

pub fn rel_close(a: f64, b: f64, scale: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale.max(f64::MIN_POSITIVE)
}

/// Random point of the normalized `(t, x, d, y)` box, as a sorted spectrum
/// with lambda1 = 1, or `None` when the draw is not a descending list.
pub fn draw_box(rng: &mut ChaCha8Rng) -> Option<SortedSpectrum<f64>> {
    let t: f64 = rng.gen_range(0.0..1.0);
    let x: f64 = rng.gen_range(t..=1.0);
    let d: f64 = rng.gen_range((3.0 * t - 1.0) / 2.0..t);
    let y: f64 = rng.gen_range(t..=x);
    let s = SortedSpectrum::new([1.0, x, y, d - x - y, -d - 1.0 + t]).ok()?;
    (s.values()[4] >= -1.0).then_some(s)
}

/// Rejection-samples spectra satisfying `accept`.
pub fn rejection_sample(
    rng: &mut ChaCha8Rng,
    count: usize,
    accept: impl Fn(&SortedSpectrum<f64>) -> bool,
) -> Vec<SortedSpectrum<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut draws = 0usize;
    while out.len() < count {
        draws += 1;
        assert!(draws < 10_000 * count + 1_000_000, "rejection sampler starved");
        if let Some(s) = draw_box(rng) {
            if accept(&s) {
                out.push(s);
            }
        }
    }
    out
}

pub fn lemma4_spectra(rng: &mut ChaCha8Rng, count: usize) -> Vec<SortedSpectrum<f64>> {
    rejection_sample(rng, count, |s| lemma4_conditions(s).passed())
}

pub fn lemma6_spectra(rng: &mut ChaCha8Rng, count: usize) -> Vec<SortedSpectrum<f64>> {
    rejection_sample(rng, count, |s| lemma6_conditions(s).passed())
}

/// Random sorted spectrum with entries in [-1, 1] scaled by `scale`.
pub fn random_sorted(rng: &mut ChaCha8Rng, scale: f64) -> SortedSpectrum<f64> {
    let v: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0) * scale);
    sniep5::Spectrum::new(v).unwrap().sort_descending()
}

/// Trace-zero list satisfying the three trace-zero realizability conditions.
pub fn trace_zero_realizable(rng: &mut ChaCha8Rng) -> SortedSpectrum<f64> {
    loop {
        let rest: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let l1 = -rest.iter().sum::<f64>();
        let mut v = [l1, rest[0], rest[1], rest[2], rest[3]];
        v[1..].sort_by(|a, b| b.partial_cmp(a).unwrap());
        let Ok(s) = SortedSpectrum::new(v) else { continue };
        let cubes: f64 = v.iter().map(|x| x * x * x).sum();
        if s.check_pf() && cubes >= 0.0 && v[1] + v[4] <= 0.0 {
            return s;
        }
    }
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, b| a.max(b.abs()))
}
