use num_complex::Complex64;
use petersson_lab::arith::{divisors, is_squarefree, primes_up_to};
use petersson_lab::characters::{enumerate_characters, DirichletCharacter};
use petersson_lab::eisenstein::{enumerate_basis, series_coefficients, EisensteinLabel, Group};
use petersson_lab::lfunctions::dirichlet_l;
use petersson_lab::rankin::*;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn zeta(s: f64) -> Complex64 {
    dirichlet_l(c(s), &DirichletCharacter::principal(1)).unwrap().value
}

fn shifted(base: &[Complex64], t: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0); base.len()];
    let mut m = t;
    while m < base.len() {
        out[m] = base[m / t];
        m += t;
    }
    out
}

#[test]
fn closed_form_matches_series_small_levels() {
    let terms = 20_000;
    let mut checked = 0;
    for n in 1..=12u64 {
        for k in [3u32, 4] {
            let mut seen = std::collections::HashSet::new();
            for label in enumerate_basis(n, k, &Group::Gamma1).unwrap() {
                let key = (label.psi.clone(), label.phi.clone());
                if !seen.insert(key) {
                    continue;
                }
                let (psi, phi) = (&label.psi, &label.phi);
                let f = series_coefficients(&EisensteinLabel::new(psi.clone(), phi.clone(), 1, k).unwrap(), terms);
                let g = series_coefficients(&EisensteinLabel::new(phi.clone(), psi.clone(), 1, k).unwrap(), terms);
                let l = n / (psi.modulus() * phi.modulus());
                let s = c(2.0 * k as f64 + 1.0);
                for t in divisors(l) {
                    for tp in divisors(l) {
                        let ser = rankin_l_series(&shifted(&f, t as usize), &shifted(&g, tp as usize), k, s, terms).unwrap();
                        let cl = rankin_l_closed(psi, phi, k, t, tp, s).unwrap();
                        let diff = (ser.value - cl.value).norm();
                        assert!(
                            diff <= ser.error_bound + cl.error_bound + 1e-6,
                            "N={n} k={k} {psi}/{phi} t={t} t'={tp}: {diff:e}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn level_one_weight_four_example() {
    let terms = 100_000;
    let f = series_coefficients(&EisensteinLabel::new(DirichletCharacter::principal(1), DirichletCharacter::principal(1), 1, 4).unwrap(), terms);
    let ser = rankin_l_series(&f, &f, 4, c(9.0), terms).unwrap();
    let z = zeta(9.0) * zeta(6.0) * zeta(6.0) * zeta(3.0) / zeta(12.0);
    let one = DirichletCharacter::principal(1);
    let cl = rankin_l_closed(&one, &one, 4, 1, 1, c(9.0)).unwrap();
    assert!((cl.value - z).norm() < 1e-12);
    assert!((ser.value - z).norm() <= ser.error_bound + 1e-6);
}

#[test]
fn series_edge_cases() {
    let mut f = vec![c(0.0); 11];
    f[1] = c(1.0);
    assert_eq!(rankin_l_series(&f, &f, 2, c(5.0), 10).unwrap().value, c(1.0));
    assert!(rankin_l_series(&f, &f, 2, c(3.0), 10).is_err());
}

#[test]
fn weight_two_four_term_entry_matches_series() {
    let terms = 100_000;
    let one = DirichletCharacter::principal(1);
    let s = 5.0;
    let z = zeta(s) * zeta(s - 1.0) * zeta(s - 1.0) * zeta(s - 2.0) / zeta(2.0 * s - 2.0);
    for (t, tp) in [(2u64, 2u64), (2, 3), (4, 2), (6, 4), (9, 3)] {
        let f = series_coefficients(&EisensteinLabel::new(one.clone(), one.clone(), t, 2).unwrap(), terms);
        let g = series_coefficients(&EisensteinLabel::new(one.clone(), one.clone(), tp, 2).unwrap(), terms);
        let ser = rankin_l_series(&f, &g, 2, c(s), terms).unwrap();
        let cl = z * entry_m2(t, tp, &c(s));
        assert!((ser.value - cl).norm() <= ser.error_bound + 1e-6, "t={t} t'={tp}");
    }
    let a = entry_m2(2, 2, &c(3.0));
    let b = entry_m2_squarefree(2, 2, c(3.0)).unwrap();
    assert!((a - b).norm() < 1e-14);
}

#[test]
fn m2_vanishes_at_two_for_squarefree_labels() {
    let sf: Vec<u64> = (2..=210).filter(|&t| is_squarefree(t)).collect();
    for &t in &sf {
        for &tp in &sf {
            assert!(entry_m2(t, tp, &c(2.0)).norm() <= 1e-12, "t={t} t'={tp}");
            assert!(entry_m2_squarefree(t, tp, c(2.0)).unwrap().norm() <= 1e-12);
        }
    }
}

#[test]
fn mprime_matches_central_difference() {
    let h = 1e-5;
    for t in (2..=42u64).filter(|&t| is_squarefree(t)) {
        for tp in (2..=42u64).filter(|&t| is_squarefree(t)) {
            let fd = (entry_m2(t, tp, &c(2.0 + h)) - entry_m2(t, tp, &c(2.0 - h))).re / (2.0 * h);
            assert!((entry_mprime(t, tp).unwrap() - fd).abs() <= 1e-8, "t={t} t'={tp}");
            assert!((entry_mprime_kappa(t, tp) - fd).abs() <= 1e-8);
        }
    }
}

fn random_local(p: u64, a: (f64, f64), b: (f64, f64), c2: (f64, f64), d: (f64, f64)) -> LocalData<Complex64> {
    LocalData {
        p,
        alpha: Complex64::new(a.0, a.1),
        alpha_p: Complex64::new(b.0, b.1),
        beta: Complex64::new(c2.0, c2.1),
        beta_p: Complex64::new(d.0, d.1),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn local_polynomial_recurrence(
        pi in 0usize..5, re in 1.5f64..6.0, im in -3.0f64..3.0,
        a in (-2.0f64..2.0, -2.0f64..2.0), b in (-2.0f64..2.0, -2.0f64..2.0),
        cc in (-2.0f64..2.0, -2.0f64..2.0), d in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let p = primes_up_to(11)[pi];
        let l = random_local(p, a, b, cc, d);
        let s = Complex64::new(re, im);
        let ap = coeff_a(&l, 1);
        let aa = l.alpha * l.alpha_p;
        let x = |e: u32| local_x(&l, e, &s, Side::R);
        for e in 3..6u32 {
            let r = x(e) - x(e - 1) * ap + x(e - 2) * aa;
            prop_assert!(r.norm() <= 1e-9 * (1.0 + x(e).norm()));
        }
        // e = 2 closes with X(0) replaced by the local denominator 1 − αα'ββ'p^{−2s}
        let y2 = aa * l.beta * l.beta_p * (-s * 2.0 * (p as f64).ln()).exp();
        let r = x(2) - x(1) * ap + (c(1.0) - y2) * aa;
        prop_assert!(r.norm() <= 1e-9 * (1.0 + x(2).norm()));
        for n in 2..7i64 {
            let lhs = coeff_a(&l, n);
            let rhs = coeff_a(&l, n - 1) * ap - coeff_a(&l, n - 2) * aa;
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn hermitian_symmetry(q in prop::sample::select(vec![3u64, 4, 5, 7, 8]), i in 0usize..8, tt in 0usize..6, tp in 0usize..6, s in 2.5f64..8.0, k in 3u32..6) {
        let chars: Vec<_> = enumerate_characters(q).into_iter().filter(|c| c.is_primitive()).collect();
        let psi = chars[i % chars.len()].clone();
        let phi = DirichletCharacter::principal(1);
        let ts = [1u64, 2, 3, 4, 6, 12];
        let s = c(s);
        let lhs = entry_m(&psi, &phi, k, ts[tt], ts[tp], &s.conj()).conj();
        let rhs = entry_m(&phi, &psi, k, ts[tp], ts[tt], &s);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}
