use nalgebra::DMatrix;
use num_complex::Complex64;
use petersson_lab::arith::{gcd, is_prime};
use petersson_lab::determinants::*;
use petersson_lab::eisenstein::Group;
use petersson_lab::gram::block_pairs;
use petersson_lab::rankin::{coeff_a, local_x, LocalData, Side};
use petersson_lab::scalar::IntegerPoint;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn closed_form_matches_direct_up_to_30() {
    for n in 1..=30u64 {
        for k in [2u32, 3, 4, 6] {
            for (psi, phi, l) in block_pairs(n, k, &Group::Gamma1).unwrap() {
                for s in [k as f64, k as f64 + 0.5, k as f64 + 2.0] {
                    let direct = det_direct(&build_matrix(&psi, &phi, k, l, c(s)));
                    let closed = det_lemma1_assemble(&psi, &phi, k, l, &c(s));
                    // symbolic zero: exact closed form at integer points
                    let zero = s.fract() == 0.0 && det_lemma1_assemble(&psi, &phi, k, l, &IntegerPoint(s as i64)).is_zero();
                    if s == k as f64 {
                        assert_eq!(zero, vanishing_witness(&psi, &phi, k, l).is_some());
                    }
                    if zero {
                        assert!(direct.norm() <= 1e-10, "N={n} k={k} {psi}/{phi} L={l}");
                    } else {
                        assert!((direct - closed).norm() <= 1e-9 * closed.norm(), "N={n} k={k} {psi}/{phi} L={l} s={s}");
                    }
                }
            }
        }
    }
}

#[test]
fn exact_determinants_at_integer_points() {
    for n in [6u64, 10, 12, 15] {
        for k in [2u32, 3] {
            for (psi, phi, l) in block_pairs(n, k, &Group::Gamma1).unwrap() {
                let exact = det_exact(build_matrix_exact(&psi, &phi, k, l, k as i64));
                let closed = det_lemma1_assemble(&psi, &phi, k, l, &IntegerPoint(k as i64));
                assert_eq!(exact, closed, "N={n} k={k} {psi}/{phi}");
                assert_eq!(exact.is_zero(), vanishing_witness(&psi, &phi, k, l).is_some());
            }
        }
    }
}

#[test]
fn kronecker_structure() {
    let chars = block_pairs(35, 4, &Group::Gamma1).unwrap();
    let (psi, phi, _) = chars.iter().find(|(a, b, _)| a.modulus() * b.modulus() == 5).unwrap().clone();
    let s = Complex64::new(3.7, 0.2);
    for l1 in 1..=30u64 {
        for l2 in 1..=30u64 {
            if gcd(l1, l2) != 1 || l1 * l2 > 60 {
                continue;
            }
            let a = build_matrix(&psi, &phi, 4, l1, s).entries;
            let b = build_matrix(&psi, &phi, 4, l2, s).entries;
            let kr = kronecker(&a, &b);
            let big = build_matrix(&psi, &phi, 4, l1 * l2, s).entries;
            let perm = kron_permutation(l1, l2);
            for i in 0..perm.len() {
                for j in 0..perm.len() {
                    assert!((kr[(i, j)] - big[(perm[i], perm[j])]).norm() <= 1e-14 * (1.0 + kr[(i, j)].norm()));
                }
            }
        }
    }
}

#[test]
fn witness_agrees_with_numeric_singularity() {
    for n in 1..=60u64 {
        for (psi, phi, l) in block_pairs(n, 2, &Group::Gamma1).unwrap() {
            let m = build_matrix(&psi, &phi, 2, l, c(2.0));
            let sv = m.entries.singular_values();
            let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            let numeric_zero = smin <= 1e-10 * m.entries.norm();
            assert_eq!(vanishing_witness(&psi, &phi, 2, l).is_some(), numeric_zero, "N={n} {psi}/{phi} L={l}");
        }
    }
}

#[test]
fn lu_on_known_factors() {
    let l = DMatrix::from_row_slice(3, 3, &[c(1.0), c(0.0), c(0.0), c(2.0), c(1.0), c(0.0), c(-1.0), c(3.0), c(1.0)]);
    let u = DMatrix::from_row_slice(3, 3, &[c(2.0), c(1.0), c(1.0), c(0.0), c(-3.0), c(2.0), c(0.0), c(0.0), c(0.5)]);
    let m = RankinMatrix {
        psi: petersson_lab::characters::DirichletCharacter::principal(1),
        phi: petersson_lab::characters::DirichletCharacter::principal(1),
        k: 2,
        level: 1,
        s: c(2.0),
        labels: vec![1, 2, 3],
        entries: l * u,
    };
    assert!((det_direct(&m) - c(-3.0)).norm() < 1e-13);
}

#[test]
fn k2_kernel_relation_on_squarefree_levels() {
    for n in (6..=210u64).filter(|&n| petersson_lab::arith::is_squarefree(n) && !is_prime(n)) {
        let m = build_k2_mprime(n);
        let f = petersson_lab::arith::factor(n);
        let (p, q) = (f[0].0, f[1].0);
        let pos = |t: u64| m.labels.iter().position(|&x| x == t).unwrap();
        for j in 0..m.labels.len() {
            let d = m.entries[(pos(p), j)] + m.entries[(pos(q), j)] - m.entries[(pos(p * q), j)];
            assert!(d.abs() <= 1e-12, "N={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn lemma2_elimination_identity(
        pi in 0usize..4, n in 1u32..5, re in 2.2f64..6.0, k in 2u32..5,
        a in 0.0f64..6.3, b in 0.0f64..6.3,
    ) {
        // [1 − X(1)Y(1)p^{−s}]·[1 − a(p)Y(1)p^{−s} + αα'Y(2)p^{−2s}]^{n−1} against the closed form
        let p = [2u64, 3, 5, 7][pi];
        let pk = (p as f64).powi(k as i32 - 1);
        let (ea, eb) = (Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b));
        let l = LocalData { p, alpha: ea, alpha_p: eb * pk, beta: eb.conj(), beta_p: ea.conj() * pk };
        let s = c(re);
        let x = (p as f64).powf(-re);
        let y2 = (l.alpha * l.alpha_p * l.beta * l.beta_p).re * x * x;
        let xr = |e| local_x(&l, e, &s, Side::R) / (1.0 - y2);
        let yr = |e| local_x(&l, e, &s, Side::RPrime) / (1.0 - y2);
        let lhs = (c(1.0) - xr(1) * yr(1) * x)
            * (c(1.0) - coeff_a(&l, 1) * yr(1) * x + l.alpha * l.alpha_p * yr(2) * x * x).powu(n - 1);
        let y = (p as f64).powf(k as f64 - 1.0 - re);
        let rhs = (1.0 - y).powi(n as i32 - 1)
            * (c(1.0) - l.alpha / l.alpha_p * y).powu(n)
            * (c(1.0) - l.alpha_p / l.alpha * y).powu(n)
            / (1.0 + y).powi(n as i32 + 1);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), "lhs {lhs} rhs {rhs}");
    }
}
