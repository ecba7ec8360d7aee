use num_complex::Complex64;
use petersson_lab::arith::prime_divisors;
use petersson_lab::characters::enumerate_characters;
use petersson_lab::lfunctions::*;
use proptest::prelude::*;

#[test]
fn exact_and_numeric_agree_at_nonpositive_integers() {
    let mut worst: f64 = 0.0;
    for q in 1..=24u64 {
        for chi in enumerate_characters(q) {
            for k in 1..=6u32 {
                let s = Complex64::new(1.0 - k as f64, 0.0);
                let num = dirichlet_l(s, &chi).unwrap();
                let exact = l_at_nonpositive(&chi, k).to_complex();
                let diff = (num.value - exact).norm();
                assert!(diff <= num.error_bound.max(1e-10), "{chi:?} k={k}: |Δ|={diff:e}");
                assert!(diff <= 1e-10, "{chi:?} k={k}: |Δ|={diff:e}");
                worst = worst.max(diff);
            }
        }
    }
    eprintln!("worst |Δ| = {worst:e}");
}

#[test]
fn hurwitz_matches_direct_summation() {
    // Σ_{n<N} (n+a)^{-s} plus the integral tail bound (N+a)^{1-s}/(s-1) bracket the value.
    for &(s, a) in &[(2.0, 1.0), (3.0, 1.0), (2.5, 0.3), (4.0, 0.75)] {
        let n = 200_000;
        let partial: f64 = (0..n).map(|i| (i as f64 + a).powf(-s)).sum();
        let tail_hi = (n as f64 + a - 1.0).powf(1.0 - s) / (s - 1.0);
        let tail_lo = (n as f64 + a).powf(1.0 - s) / (s - 1.0);
        let v = hurwitz_zeta(Complex64::new(s, 0.0), a).unwrap().value.re;
        assert!(v >= partial + tail_lo - 1e-9 && v <= partial + tail_hi + 1e-9, "s={s} a={a}");
    }
}

#[test]
fn derivative_matches_central_differences() {
    // five-point stencil: truncation O(h^4), rounding O(eps/h)
    let h = 1e-3;
    for q in [1u64, 4, 5, 7, 8, 12] {
        for chi in enumerate_characters(q) {
            for &s in &[-2.0, 0.0, 0.5, 2.0, 3.5] {
                let s = Complex64::new(s, 0.0);
                let d = l_derivative(s, &chi).unwrap().value;
                let f = |x: f64| dirichlet_l(s + x, &chi).unwrap().value;
                let fd = (f(-2.0 * h) - f(-h) * 8.0 + f(h) * 8.0 - f(2.0 * h)) / (12.0 * h);
                assert!((d - fd).norm() <= 1e-8 * (1.0 + d.norm()), "{chi:?} s={s}: {d} vs {fd}");
            }
        }
    }
}

#[test]
fn zero_order_matches_numeric_slope() {
    for q in 1..=24u64 {
        for chi in enumerate_characters(q) {
            for s0 in [0i64, -1, -2] {
                let ord = zero_order_at(&chi, s0);
                let l1 = dirichlet_l(Complex64::new(s0 as f64 + 1e-3, 0.0), &chi).unwrap().value;
                let l2 = dirichlet_l(Complex64::new(s0 as f64 + 1e-4, 0.0), &chi).unwrap().value;
                let slope = (l1.norm().ln() - l2.norm().ln()) / (1e-3f64.ln() - 1e-4f64.ln());
                assert!((slope - ord as f64).abs() < 0.05, "{chi:?} s0={s0}: order {ord}, slope {slope}");
            }
        }
    }
}

fn euler_factor_product(chi: &petersson_lab::characters::DirichletCharacter, s: Complex64) -> Complex64 {
    let prim = chi.primitivize();
    let mut v = dirichlet_l(s, &prim).unwrap().value;
    for p in prime_divisors(chi.modulus()) {
        if prim.conductor() % p != 0 {
            let ps = (-s * (p as f64).ln()).exp();
            v *= Complex64::new(1.0, 0.0) - prim.evaluate_complex(p as i64) * ps;
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn imprimitive_euler_factor_identity(re in -3.0f64..4.0, im in -5.0f64..5.0, which in 0usize..6) {
        let (q, idx) = [(6u64, 1usize), (12, 1), (15, 3), (20, 2), (24, 5), (18, 4)][which];
        let chi = enumerate_characters(q)[idx].clone();
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let lhs = dirichlet_l(s, &chi).unwrap();
        let rhs = euler_factor_product(&chi, s);
        prop_assert!((lhs.value - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()) + lhs.error_bound);
    }

    #[test]
    fn hurwitz_bound_is_honest_under_halving(re in -6.0f64..8.0, im in -6.0f64..6.0, a in 0.05f64..1.0, m in 16usize..60) {
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 1e-2);
        let full = hurwitz_zeta_with(s, a, EmParams { tail_start: m, terms: 12 }).unwrap();
        let half = hurwitz_zeta_with(s, a, EmParams { tail_start: m / 2, terms: 12 }).unwrap();
        let moved = (full.value - half.value).norm();
        prop_assert!(moved <= full.error_bound + half.error_bound, "moved {moved:e}, bounds {:e} {:e}", full.error_bound, half.error_bound);
        let adaptive = hurwitz_zeta(s, a).unwrap();
        prop_assert!((adaptive.value - full.value).norm() <= adaptive.error_bound + full.error_bound);
    }

    #[test]
    fn derivative_bound_is_honest(re in -4.0f64..6.0, im in -3.0f64..3.0, a in 0.05f64..1.0) {
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 1e-2);
        let d1 = hurwitz_zeta_derivative(s, a).unwrap();
        let d2 = hurwitz_zeta_derivative_with(s, a, EmParams { tail_start: 80, terms: 20 }).unwrap();
        prop_assert!((d1.value - d2.value).norm() <= d1.error_bound + d2.error_bound);
    }
}
