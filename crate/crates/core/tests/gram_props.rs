use std::time::Instant;

use num_complex::Complex64;
use petersson_lab::arith::{divisors, is_prime, is_squarefree, primes_up_to};
use petersson_lab::characters::{enumerate_characters, DirichletCharacter};
use petersson_lab::eisenstein::Group;
use petersson_lab::gram::*;

#[test]
fn symbolic_and_numeric_verdicts_agree() {
    let start = Instant::now();
    for n in 1..=60u64 {
        for k in [2u32, 3, 4, 6] {
            let v = verdict(n, k, &Group::Gamma1).unwrap();
            assert!(v.agrees(), "Γ1({n}) k={k}: symbolic {} numeric {} cond {:e}", v.result(), v.numeric_nondegenerate, v.min_condition);
            for chi in enumerate_characters(n) {
                let v = verdict(n, k, &Group::Gamma0(chi.clone())).unwrap();
                assert!(v.agrees(), "Γ0({n},{chi}) k={k}");
            }
        }
    }
    eprintln!("verdict sweep: {:?}", start.elapsed());
}

#[test]
fn gamma1_verdict_shapes() {
    for n in 1..=60u64 {
        assert!(verdict(n, 4, &Group::Gamma1).unwrap().nondegenerate, "k=4 N={n}");
        let v2 = verdict(n, 2, &Group::Gamma1).unwrap();
        if is_prime(n) {
            assert!(v2.nondegenerate, "prime N={n}");
        }
        for p in primes_up_to(n) {
            for q in primes_up_to(n) {
                if p != q && n % (p * p * q) == 0 {
                    assert!(!v2.nondegenerate, "p²q | N={n}");
                }
            }
        }
    }
}

#[test]
fn gamma0_squarefree_weight_two() {
    for n in (2..=210u64).filter(|&n| is_squarefree(n)) {
        let v = verdict(n, 2, &Group::Gamma0(DirichletCharacter::principal(n))).unwrap();
        assert_eq!(v.nondegenerate, is_prime(n), "N={n}");
    }
}

#[test]
fn entries_match_full_residue_extrapolation() {
    for n in 1..=20u64 {
        for k in [3u32, 4] {
            for (psi, phi, l) in block_pairs(n, k, &Group::Gamma1).unwrap() {
                let b = standard_block(&psi, &phi, k, l).unwrap();
                let ts = divisors(l);
                for (i, &t) in ts.iter().enumerate() {
                    for (j, &tp) in ts.iter().enumerate() {
                        let e = b.matrix[(i, j)];
                        let x = entry_by_extrapolation(&psi, &phi, k, t, tp).unwrap();
                        assert!((e - x).norm() <= 1e-5 * e.norm(), "N={n} k={k} {psi}/{phi} ({t},{tp}): {e} vs {x}");
                    }
                }
            }
        }
    }
}

#[test]
fn residues_match_numeric_extrapolation() {
    for n in 1..=40u64 {
        for k in [2u32, 3, 4, 6] {
            for (psi, phi, _) in block_pairs(n, k, &Group::Gamma1).unwrap() {
                let r = residue_r(&psi, &phi, k).unwrap();
                let num = residue_numeric(&psi, &phi, &phi, &psi, k).unwrap();
                if r.vanishes() {
                    assert!(num.norm() <= 1e-8, "{psi}/{phi} k={k}: {num}");
                } else {
                    assert!((num - r.r).norm() <= 1e-5 * r.r.norm(), "{psi}/{phi} k={k}: {num} vs {}", r.r);
                }
            }
        }
    }
}

#[test]
fn gram_is_hermitian() {
    for n in 1..=30u64 {
        for k in [2u32, 3, 4] {
            let g = gram_matrix(n, k, &Group::Gamma1).unwrap();
            let d = (&g.full - g.full.adjoint()).camax();
            assert!(d <= 1e-10 * g.full.camax().max(1e-300), "N={n} k={k}");
        }
    }
}

#[test]
fn general_and_closed_weight_two_paths_agree() {
    // squarefree overlap: extrapolated residues against ζ(0)·m'
    for n in [6u64, 10, 15, 30] {
        let closed = k2_trivial_block(n).unwrap();
        let labels = petersson_lab::determinants::k2_labels(n);
        for (i, &t) in labels.iter().enumerate() {
            for (j, &tp) in labels.iter().enumerate() {
                let r = k2_residue_numeric(t, tp).unwrap() * scale(2);
                assert!((closed.matrix[(i, j)] - Complex64::new(r, 0.0)).norm() <= 1e-9 * scale(2));
            }
        }
    }
}

#[test]
fn adjoint_identities() {
    for n in 1..=30u64 {
        for k in [2u32, 3, 4] {
            let rep = hecke_adjoint_check(n, k, &primes_up_to(13), 0).unwrap();
            assert!(rep.failures.is_empty(), "N={n} k={k}: {:?}", rep.failures);
        }
    }
    let rep = hecke_adjoint_check(35, 4, &[1, 2, 3], 20).unwrap();
    assert_eq!(rep.cross_pairs_checked, 20);
    assert!(rep.max_cross_residue <= 1e-8, "{}", rep.max_cross_residue);
    for q in [5u64, 7, 8, 12] {
        for a in enumerate_characters(q) {
            for b in enumerate_characters(q) {
                for p in [2u64, 3, 5, 7, 11, 13] {
                    assert!(adjoint_identity_holds(&a, &b, 3, p));
                }
            }
        }
    }
}
