//! Invariants checked on random inputs.

mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sniep5::*;

fn spectrum_strategy() -> impl Strategy<Value = [f64; 5]> {
    prop::array::uniform5(-1.0f64..1.0)
}

fn abs_sum(v: &[f64; 5]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

fn permutations(v: [f64; 5]) -> Vec<[f64; 5]> {
    fn go(prefix: &mut Vec<f64>, rest: &mut Vec<f64>, out: &mut Vec<[f64; 5]>) {
        if rest.is_empty() {
            out.push(prefix.clone().try_into().unwrap());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut v.to_vec(), &mut out);
    out
}

fn sorted(v: [f64; 5]) -> SortedSpectrum<f64> {
    Spectrum::new(v).unwrap().sort_descending()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn elem_syms_ignore_order(v in spectrum_strategy()) {
        let perms = permutations(v);
        prop_assert_eq!(perms.len(), 120);
        let base = Spectrum::new(v).unwrap().elem_syms().as_array();
        let scale = brute_elem_scale(&v);
        for p in perms {
            let e = Spectrum::new(p).unwrap().elem_syms().as_array();
            for n in 0..5 {
                prop_assert!(rel_close(e[n], base[n], scale[n], 1e-14));
            }
        }
    }

    #[test]
    fn elem_syms_are_homogeneous(v in spectrum_strategy(), alpha in 0.01f64..100.0) {
        let e = Spectrum::new(v).unwrap().elem_syms().as_array();
        let scaled = Spectrum::new(v).unwrap().scale(alpha).unwrap().elem_syms().as_array();
        let scale = brute_elem_scale(&v);
        for n in 0..5 {
            let an = alpha.powi(n as i32 + 1);
            prop_assert!(rel_close(scaled[n], an * e[n], an * scale[n], 1e-12));
        }
    }

    #[test]
    fn elem_syms_match_subset_products(v in spectrum_strategy()) {
        let e = Spectrum::new(v).unwrap().elem_syms();
        let brute = brute_elem_syms(&v);
        let scale = brute_elem_scale(&v);
        for n in 0..5 {
            prop_assert!(rel_close(e.as_array()[n], brute[n], scale[n], 1e-13));
        }
        let expanded = expand_monic(&v);
        let cp = e.char_poly();
        for n in 0..6 {
            let sc = if n == 0 { 1.0 } else { scale[n - 1] };
            prop_assert!(rel_close(cp[n], expanded[n], sc, 1e-13));
        }
    }

    #[test]
    fn uvwr_are_homogeneous(v in spectrum_strategy(), alpha in 0.01f64..100.0) {
        let s = sorted(v);
        let a = compute_uvwr(&s);
        let b = compute_uvwr(&SortedSpectrum::new(*s.scale(alpha).unwrap().values()).unwrap());
        let m = abs_sum(&v);
        for (x, y, deg) in [(a.u, b.u, 2), (a.v, b.v, 6), (a.w, b.w, 3), (a.r, b.r, 3)] {
            let ad = alpha.powi(deg);
            prop_assert!(rel_close(y, ad * x, ad * m.powi(deg), 1e-10), "deg {}", deg);
        }
    }

    #[test]
    fn pattern_a_scalar_identity(v in spectrum_strategy()) {
        let s = sorted(v);
        let PatternAScalars { u, v: vv, w, r } = compute_uvwr(&s);
        let e2 = s.elem_syms().e2;
        let lhs = u * u * u + 2.0 * vv + r * r + w * w;
        prop_assert!(rel_close(lhs, -u * u * e2, abs_sum(&v).powi(6), 1e-9));
    }

    #[test]
    fn pattern_a_closed_form_reproduces_spectrum(v in spectrum_strategy()) {
        let s = sorted(v);
        let sc = compute_uvwr(&s);
        let m = abs_sum(&v);
        prop_assume!(sc.u.abs() > 1e-3 * m * m);
        let got = sniep5::pattern_a::closed_form_char_poly(&sc, s.e1());
        let want = s.elem_syms().char_poly();
        for n in 1..6 {
            prop_assert!(rel_close(got[n], want[n], m.powi(n as i32), 1e-8), "n={} {} {}", n, got[n], want[n]);
        }
    }

    #[test]
    fn formal_pattern_a_has_target_char_poly(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, sc) = loop {
            let s = random_sorted(&mut rng, 1.0);
            let sc = compute_uvwr(&s);
            let m = abs_sum(s.values());
            if sc.u > 1e-3 * m * m && sc.v >= 0.0 {
                break (s, sc);
            }
        };
        let m = abs_sum(s.values());
        let a = sniep5::pattern_a::formal_matrix(&s).unwrap();
        prop_assert!(sc.u > 0.0);
        let got = char_poly_coeffs(&a);
        let want = s.elem_syms().char_poly();
        for n in 1..6 {
            prop_assert!(rel_close(got[n], want[n], m.powi(n as i32), 1e-8), "n={} {} {}", n, got[n], want[n]);
        }
    }

    #[test]
    fn pattern_b_closed_form_identities(v in spectrum_strategy(), g in -1.0f64..1.0) {
        let s = sorted(v);
        let [_, _, l3, _, l5] = *s.values();
        let e = s.elem_syms();
        let q = q_poly(&s).eval(g);
        let got = sniep5::pattern_b::closed_form_char_poly(&s, g);
        let want = [1.0, -e.e1, e.e2, q - e.e3, -(l3 + l5) * q + e.e4, l3 * l5 * q - e.e5];
        let m = abs_sum(&v) + g.abs();
        for n in 1..6 {
            prop_assert!(rel_close(got[n], want[n], m.powi(n as i32), 1e-8), "n={} {} {}", n, got[n], want[n]);
        }
    }

    #[test]
    fn formal_pattern_b_matches_closed_form(v in spectrum_strategy(), g in -1.0f64..1.0) {
        let s = sorted(v);
        let Some(b) = sniep5::pattern_b::formal_matrix(&s, g) else { return Ok(()) };
        let got = char_poly_coeffs(&b);
        let want = sniep5::pattern_b::closed_form_char_poly(&s, g);
        let m = (abs_sum(&v) + g.abs()).max(b.frobenius_norm());
        for n in 1..6 {
            prop_assert!(rel_close(got[n], want[n], m.powi(n as i32), 1e-8), "n={}", n);
        }
    }

    #[test]
    fn cubic_roots_are_certified(c in prop::array::uniform4(-10.0f64..10.0)) {
        prop_assume!(c[0].abs() > 1e-3);
        let q = Cubic::new(c[0], c[1], c[2], c[3]);
        let roots = q.real_roots().unwrap();
        prop_assert!(!roots.is_empty() && roots.len() <= 3);
        for w in roots.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for &z in &roots {
            prop_assert!(q.eval(z).abs() <= q.residual_bound(z));
        }
        let [a, b, cc, d] = c;
        let disc = 18.0 * a * b * cc * d - 4.0 * b.powi(3) * d + b * b * cc * cc
            - 4.0 * a * cc.powi(3) - 27.0 * a * a * d * d;
        let disc_scale = 1e-6 * (c.iter().fold(0.0f64, |m, x| m.max(x.abs()))).powi(4);
        if disc > disc_scale {
            prop_assert_eq!(roots.len(), 3);
        } else if disc < -disc_scale {
            prop_assert_eq!(roots.len(), 1);
        }
    }

    #[test]
    fn cubic_recovers_separated_roots(r in prop::array::uniform3(-5.0f64..5.0), lead in 0.5f64..4.0) {
        let mut r = r;
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assume!(r[1] - r[0] > 1e-2 && r[2] - r[1] > 1e-2);
        let q = Cubic::new(
            lead,
            -lead * (r[0] + r[1] + r[2]),
            lead * (r[0] * r[1] + r[0] * r[2] + r[1] * r[2]),
            -lead * r[0] * r[1] * r[2],
        );
        let roots = q.real_roots().unwrap();
        prop_assert_eq!(roots.len(), 3);
        for (got, want) in roots.iter().zip(r) {
            prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn jacobi_eigenvalues_are_char_poly_roots(upper in prop::array::uniform15(-2.0f64..2.0)) {
        // row i of the upper triangle starts at offset 5i - i(i-1)/2
        let m = SymMatrix5::from_upper(Provenance::External, |i, j| upper[5 * i - i * (i.max(1) - 1) / 2 + j - i]);
        let eig = sym_eigenvalues(&m).unwrap();
        let norm = m.frobenius_norm();
        for &z in eig.values() {
            prop_assert!(char_poly_at(&m, z).abs() <= 1e-7 * norm.powi(5).max(1e-300));
        }
        let sum: f64 = eig.values().iter().sum();
        prop_assert!((sum - m.trace()).abs() <= 1e-11 * (1.0 + norm));
    }

    #[test]
    fn classify_is_scale_invariant(v in spectrum_strategy(), k in -20i32..20) {
        let s = sorted(v);
        let alpha = 2f64.powi(k);
        let scaled = SortedSpectrum::new(*s.scale(alpha).unwrap().values()).unwrap();
        let a = classify(&s);
        let b = classify(&scaled);
        prop_assert_eq!(a.verdict(), b.verdict());
        prop_assert_eq!(a.outcome.tag(), b.outcome.tag());
    }

    #[test]
    fn verdicts_are_sound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let s = if rng.gen_bool(0.5) {
                match draw_box(&mut rng) { Some(s) => s, None => continue }
            } else {
                random_sorted(&mut rng, 1.0)
            };
            check_verdict(&s)?;
        }
    }

    #[test]
    fn q_has_one_root_in_range_when_convex(seed in any::<u64>()) {
        // Convexity on z >= 0 plus Q(0) < 0 leaves room for one positive root;
        // r < 0 forces Q(0) <= r < 0 because lambda2 >= lambda3 > 0.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        while checked < 16 {
            let Some(s) = draw_box(&mut rng) else { continue };
            let [_, _, l3, _, l5] = *s.values();
            let e1 = s.e1();
            if !(l3 > e1 && e1 >= 0.0 && l3 + l5 < 0.0 && compute_uvwr(&s).r < 0.0) {
                continue;
            }
            checked += 1;
            let q = q_poly(&s);
            prop_assert!(q.eval(0.0) < 0.0);
            let inside = q
                .real_roots()
                .unwrap()
                .into_iter()
                .filter(|&z| z > 0.0 && z <= e1 / 2.0)
                .count();
            prop_assert!(inside <= 1);
        }
    }

    #[test]
    fn trace_zero_minus_closure(seed in any::<u64>(), frac in 0.0f64..2.0, i in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = trace_zero_realizable(&mut rng);
        let step = frac * s.perron() + f64::EPSILON;
        let p = Perturbation::new(i, Sign::Minus, step).unwrap();
        let t = apply_perturbation(&s, &p);
        check_trace_zero_conditions(&t, s.perron())?;
        prop_assert!((t.e1() - s.e1()).abs() <= 1e-12 * (1.0 + s.perron()));
        prop_assert!((t.perron() - (s.perron() + step)).abs() <= 1e-12 * (1.0 + t.perron()));
        let d = decide_perturbed(&s, &p);
        prop_assert_eq!(d.rule, GuoRule::TraceZeroClosure);
        prop_assert_eq!(d.decision.verdict(), Verdict::Realizable);
    }

    #[test]
    fn perturbations_keep_perron(v in spectrum_strategy(), step in 0.0f64..3.0, i in 2usize..=5, plus in any::<bool>()) {
        let s = sorted(v);
        prop_assume!(s.check_pf());
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let t = apply_perturbation(&s, &Perturbation::new(i, sign, step).unwrap());
        prop_assert_eq!(t.perron(), s.perron() + step);
        let shift = if plus { 2.0 * step } else { 0.0 };
        prop_assert!((t.e1() - s.e1() - shift).abs() <= 1e-12 * (1.0 + abs_sum(&v) + step));
    }
}

fn check_trace_zero_conditions(t: &SortedSpectrum<f64>, scale: f64) -> std::result::Result<(), TestCaseError> {
    let v = t.values();
    let tol = 1e-12 * (1.0 + scale).powi(3);
    let cubes: f64 = v.iter().map(|x| x * x * x).sum();
    prop_assert!(t.e1().abs() <= 1e-12 * (1.0 + scale));
    prop_assert!(cubes >= -tol, "cube sum {}", cubes);
    prop_assert!(v[1] + v[4] <= 1e-12 * (1.0 + scale));
    prop_assert!(v[4] >= -v[0]);
    Ok(())
}

fn check_verdict(s: &SortedSpectrum<f64>) -> std::result::Result<(), TestCaseError> {
    let [l1, l2, l3, l4, l5] = *s.values();
    let e1 = s.e1();
    let d = classify(s);
    match &d.outcome {
        Outcome::Unknown => {
            prop_assert!(l3 > e1 && l5 > -l1);
            prop_assert!(s.check_pf() && s.check_trace() && s.check_mn());
            prop_assert!(!lemma4_conditions(s).passed());
            prop_assert!(!lemma6_conditions(s).passed());
        }
        Outcome::NotRealizable(reason) => match reason {
            Reason::PerronViolated => prop_assert!(l5 < -l1),
            Reason::TraceViolated => prop_assert!(e1 < 0.0),
            Reason::McDonaldNeumannViolated => prop_assert!(l1 + l3 + l4 < 0.0),
            Reason::AntipodalBoundary => prop_assert!(l5 == -l1 && l3 > e1),
            Reason::TraceZeroConditionViolated => prop_assert!(false, "only from the trace-zero classifier"),
        },
        Outcome::Realizable(cert) => {
            prop_assert!(s.check_pf() && s.check_trace() && s.check_mn());
            match cert {
                Certificate::Suleimanova => prop_assert!(l2 <= 0.0),
                Certificate::TwoPositiveCharacterization => prop_assert!(l2 > 0.0 && l3 <= 0.0),
                Certificate::DirectSumKnownRegion => prop_assert!(l3 > 0.0 && l3 <= e1),
                Certificate::PatternA | Certificate::PatternB { .. } => {
                    let m = cert.build_matrix(s).unwrap().unwrap();
                    prop_assert!(m.is_nonnegative());
                    let rep = verify_spectrum(&m, s, 1e-8).unwrap();
                    prop_assert!(rep.pass, "deviation {}", rep.max_deviation);
                    prop_assert!(entry_bound_check(&m));
                }
                other => prop_assert!(false, "unexpected certificate {:?}", other),
            }
        }
    }
    Ok(())
}

#[test]
fn two_roots_in_range_without_negative_r() {
    // Convex on z >= 0 but Q(0) > 0: Q dips below zero and comes back up
    // inside (0, e1/2].
    let s = SortedSpectrum::new([
        1.0,
        0.3588975984386417,
        0.3210301526167903,
        -0.5991960504614156,
        -0.8412231839009967,
    ])
    .unwrap();
    let [_, _, l3, _, l5] = *s.values();
    let e1 = s.e1();
    assert!(l3 > e1 && e1 >= 0.0 && l3 + l5 < 0.0);
    assert!(compute_uvwr(&s).r > 0.0);
    let q = q_poly(&s);
    assert!(q.eval(0.0) > 0.0);
    let inside: Vec<f64> = q.real_roots().unwrap().into_iter().filter(|&z| z > 0.0 && z <= e1 / 2.0).collect();
    assert_eq!(inside.len(), 2);
    assert_eq!(find_g(&s), Some(inside[1]));
}

#[test]
fn lemma6_samples_have_room_for_m() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in lemma6_spectra(&mut rng, 2_000) {
        let [_, l2, l3, _, l5] = *s.values();
        let e = s.elem_syms();
        let delta = e.e1 * e.e1 - 2.0 * (e.e2 + l3 * l3 + l5 * l5);
        assert!(delta >= l2 * l2 * (1.0 - 1e-12), "{s:?}: {delta} < {}", l2 * l2);
    }
}

#[test]
fn f32_example_one_classifies_like_f64() {
    let s = SortedSpectrum32::new([1000.0, 381.0, 360.0, -641.0, -750.0]).unwrap();
    assert_eq!(classify(&s).outcome, Outcome::Realizable(Certificate::PatternA));
    let a = build_pattern_a(&s).unwrap();
    assert!(verify_spectrum(&a, &s, 1e-4).unwrap().pass);
}

#[test]
fn matrix_text_round_trips_exactly() {
    let s = sorted([1000.0, 370.0, 367.0, -637.0, -750.0]);
    let g = find_g(&s).unwrap();
    let b = build_pattern_b(&s, g).unwrap();
    let back: SymMatrix64 = sniep5::matrix::parse_matrix(&b.to_text()).unwrap();
    assert_eq!(back.entries(), b.entries());
    let back: SymMatrix64 = sniep5::matrix::parse_matrix(&b.to_json()).unwrap();
    assert_eq!(back.entries(), b.entries());
}
