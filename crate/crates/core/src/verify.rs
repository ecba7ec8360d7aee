//! Cross-check suites run by `petersson-lab verify`.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::One;

use crate::arith::{divisors, factor, is_prime, is_squarefree, multiplicative_order, primes_up_to};
use crate::characters::{enumerate_characters, DirichletCharacter};
use crate::determinants::{build_k2_mprime, build_matrix, det_direct, det_lemma1_assemble, vanishing_witness};
use crate::eisenstein::{series_coefficients, EisensteinLabel, Group};
use crate::error::{invalid, Result};
use crate::gram::{block_pairs, hecke_adjoint_check, verdict};
use crate::lfunctions::{dirichlet_l, l_at_nonpositive};
use crate::rankin::{entry_m2_squarefree, local_a_at_two, rankin_l_closed, rankin_l_series};
use crate::scalar::IntegerPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Determinants,
    Oracle,
    Adjoint,
    Theorems,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Determinants, Suite::Oracle, Suite::Adjoint, Suite::Theorems];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Determinants => "determinants",
            Suite::Oracle => "oracle",
            Suite::Adjoint => "adjoint",
            Suite::Theorems => "theorems",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_level: u64,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Largest observed discrepancy, in the units of the suite's tolerance.
    pub max_error: f64,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
    max_error: f64,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: Vec::new(), max_error: 0.0 }
    }

    fn check(&mut self, ok: bool, err: f64, what: impl FnOnce() -> String) {
        self.checks += 1;
        if err.is_finite() {
            self.max_error = self.max_error.max(err);
        }
        if !ok {
            self.failures.push(what());
        }
    }
}

pub const SERIES_TERMS: usize = 100_000;

pub fn run(suite: Suite, max_level: u64) -> Result<SuiteReport> {
    if max_level == 0 {
        return invalid("max level must be positive");
    }
    let start = Instant::now();
    let mut t = Tally::new();
    match suite {
        Suite::Determinants => determinants(&mut t, max_level)?,
        Suite::Oracle => oracle(&mut t, max_level.min(20), SERIES_TERMS)?,
        Suite::Adjoint => adjoint(&mut t, max_level.min(30))?,
        Suite::Theorems => theorems(&mut t, max_level)?,
    }
    Ok(SuiteReport {
        suite,
        max_level,
        checks: t.checks,
        failures: t.failures,
        max_error: t.max_error,
        elapsed: start.elapsed(),
    })
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn determinants(t: &mut Tally, max_level: u64) -> Result<()> {
    for n in 1..=max_level {
        for k in [2u32, 3, 4, 6] {
            for (psi, phi, l) in block_pairs(n, k, &Group::Gamma1)? {
                for s in [k as f64, k as f64 + 0.5, k as f64 + 2.0] {
                    let direct = det_direct(&build_matrix(&psi, &phi, k, l, c(s)));
                    let zero = s.fract() == 0.0 && det_lemma1_assemble(&psi, &phi, k, l, &IntegerPoint(s as i64)).is_zero();
                    let tag = || format!("N={n} k={k} {psi}/{phi} L={l} s={s}");
                    if zero {
                        t.check(direct.norm() <= 1e-10, direct.norm() / 1e-10, tag);
                    } else {
                        let closed = det_lemma1_assemble(&psi, &phi, k, l, &c(s));
                        let rel = (direct - closed).norm() / closed.norm();
                        t.check(rel <= 1e-9, rel / 1e-9, tag);
                    }
                    if s == k as f64 {
                        let w = vanishing_witness(&psi, &phi, k, l).is_some();
                        t.check(w == zero, 0.0, || format!("witness mismatch N={n} k={k} {psi}/{phi}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn shifted(base: &[Complex64], t: u64) -> Vec<Complex64> {
    let t = t as usize;
    let mut out = vec![c(0.0); base.len()];
    for m in (t..base.len()).step_by(t) {
        out[m] = base[m / t];
    }
    out
}

// closed-form Rankin L-values against truncated series, then the L-function kernel
fn oracle(t: &mut Tally, max_level: u64, terms: usize) -> Result<()> {
    let mut cache: HashMap<(DirichletCharacter, DirichletCharacter, u32), Vec<Complex64>> = HashMap::new();
    for n in 1..=max_level {
        for k in [3u32, 4] {
            for (psi, phi, l) in block_pairs(n, k, &Group::Gamma1)? {
                let s = c(2.0 * k as f64 + 1.0);
                for key in [(psi.clone(), phi.clone(), k), (phi.clone(), psi.clone(), k)] {
                    if !cache.contains_key(&key) {
                        let label = EisensteinLabel::new(key.0.clone(), key.1.clone(), 1, k)?;
                        cache.insert(key.clone(), series_coefficients(&label, terms));
                    }
                }
                let f = &cache[&(psi.clone(), phi.clone(), k)];
                let g = &cache[&(phi.clone(), psi.clone(), k)];
                for &a in &divisors(l) {
                    for &b in &divisors(l) {
                        let ser = rankin_l_series(&shifted(f, a), &shifted(g, b), k, s, terms)?;
                        let cl = rankin_l_closed(&psi, &phi, k, a, b, s)?;
                        let tol = ser.error_bound + cl.error_bound + 1e-6;
                        let d = (ser.value - cl.value).norm();
                        t.check(d <= tol, d / tol, || format!("N={n} k={k} {psi}/{phi} t={a} t'={b}: {d:e}"));
                    }
                }
            }
        }
    }
    for q in 1..=24u64 {
        for chi in enumerate_characters(q) {
            for k in 1..=6u32 {
                let exact = l_at_nonpositive(&chi, k).to_complex();
                let num = dirichlet_l(c(1.0 - k as f64), &chi)?.value;
                let d = (exact - num).norm();
                t.check(d <= 1e-10, d / 1e-10, || format!("L(1-{k}, {chi}): {d:e}"));
            }
        }
    }
    Ok(())
}

fn adjoint(t: &mut Tally, max_level: u64) -> Result<()> {
    let primes = primes_up_to(13);
    for n in 1..=max_level {
        for k in [2u32, 3, 4] {
            let rep = hecke_adjoint_check(n, k, &primes, 0)?;
            t.checks += rep.identities_checked.saturating_sub(rep.failures.len());
            for f in rep.failures {
                t.check(false, 0.0, || format!("N={n} k={k}: {f}"));
            }
        }
    }
    let rep = hecke_adjoint_check(35, 4, &[2, 3], 20)?;
    t.check(
        rep.cross_pairs_checked == 20 && rep.max_cross_residue <= 1e-8,
        rep.max_cross_residue / 1e-8,
        || format!("cross residues: {} pairs, max {:e}", rep.cross_pairs_checked, rep.max_cross_residue),
    );
    Ok(())
}

/// Levels `N ≤ max` divisible by `pq` where `q` is not a primitive root mod `p`.
pub fn non_primitive_root_levels(max: u64) -> Vec<u64> {
    (2..=max)
        .filter(|&n| {
            let ps: Vec<u64> = factor(n).into_iter().map(|(p, _)| p).collect();
            ps.iter()
                .any(|&p| ps.iter().any(|&q| q != p && multiplicative_order(q % p, p) != Some(p - 1)))
        })
        .collect()
}

/// Levels `N ≤ max` divisible by `p²q` for distinct primes.
pub fn p2q_levels(max: u64) -> Vec<u64> {
    (2..=max)
        .filter(|&n| {
            let f = factor(n);
            f.len() >= 2 && f.iter().any(|&(_, e)| e >= 2)
        })
        .collect()
}

fn theorems(t: &mut Tally, max_level: u64) -> Result<()> {
    let npr = non_primitive_root_levels(max_level);
    let p2q = p2q_levels(max_level);
    for n in 1..=max_level {
        for k in [2u32, 3, 4, 6] {
            let v = verdict(n, k, &Group::Gamma1)?;
            t.check(v.agrees(), 0.0, || format!("Γ1({n}) k={k}: symbolic and numeric verdicts differ"));
            if k > 2 {
                t.check(v.nondegenerate, 0.0, || format!("Γ1({n}) k={k} should be nondegenerate"));
            } else if is_prime(n) {
                t.check(v.nondegenerate, 0.0, || format!("Γ1({n}) k=2, N prime, should be nondegenerate"));
            } else if p2q.contains(&n) || npr.contains(&n) {
                t.check(!v.nondegenerate, 0.0, || format!("Γ1({n}) k=2 should be degenerate"));
            }
            for chi in enumerate_characters(n) {
                let v = verdict(n, k, &Group::Gamma0(chi.clone()))?;
                t.check(v.agrees(), 0.0, || format!("Γ0({n},{chi}) k={k}: verdicts differ"));
            }
        }
    }
    // Γ0(N), k = 2, squarefree N: degenerate exactly for composite N
    let top = max_level.max(210);
    for n in (2..=top).filter(|&n| is_squarefree(n)) {
        let v = verdict(n, 2, &Group::Gamma0(DirichletCharacter::principal(n)))?;
        t.check(v.nondegenerate == is_prime(n), 0.0, || format!("Γ0({n}) k=2: got {}", v.result()));
        if !is_prime(n) {
            let m = build_k2_mprime(n);
            let f = factor(n);
            let (p, q) = (f[0].0, f[1].0);
            let pos = |x: u64| m.labels.iter().position(|&y| y == x).expect("label");
            let mut worst: f64 = 0.0;
            for j in 0..m.labels.len() {
                worst = worst.max((m.entries[(pos(p), j)] + m.entries[(pos(q), j)] - m.entries[(pos(p * q), j)]).abs());
            }
            t.check(worst <= 1e-12, worst / 1e-12, || format!("N={n}: row({p})+row({q})-row({}) = {worst:e}", p * q));
        }
    }
    // m_s(t,t') at s = 2
    let sf: Vec<u64> = (1..=top).filter(|&n| is_squarefree(n)).collect();
    for &a in &sf {
        for &b in &sf {
            let v = entry_m2_squarefree(a, b, c(2.0))?.norm();
            t.check(v <= 1e-12, v / 1e-12, || format!("m_2({a},{b}) = {v:e}"));
        }
    }
    for p in primes_up_to(top) {
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            t.check(local_a_at_two(p, i, j).is_one(), 0.0, || format!("A_{p}({i},{j}) at s=2 is not 1"));
        }
    }
    Ok(())
}
