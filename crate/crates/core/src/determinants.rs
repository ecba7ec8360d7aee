//! Determinants of the Rankin matrices `M_s^{ψ,φ}(L)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{divisors, factor, is_squarefree, sigma0};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::Cyclotomic;
use crate::rankin::{entry_m, entry_m2, entry_mprime, entry_mprime_numeric, kappa, LocalData};
use crate::scalar::{EvalPoint, IntegerPoint, Scalar};

#[derive(Clone, Debug)]
pub struct RankinMatrix {
    pub psi: DirichletCharacter,
    pub phi: DirichletCharacter,
    pub k: u32,
    pub level: u64,
    pub s: Complex64,
    /// Divisors of `level`, ascending.
    pub labels: Vec<u64>,
    pub entries: DMatrix<Complex64>,
}

pub fn build_matrix(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, l: u64, s: Complex64) -> RankinMatrix {
    let labels = divisors(l);
    let n = labels.len();
    let entries = DMatrix::from_fn(n, n, |i, j| entry_m(psi, phi, k, labels[i], labels[j], &s));
    RankinMatrix {
        psi: psi.clone(),
        phi: phi.clone(),
        k,
        level: l,
        s,
        labels,
        entries,
    }
}

/// Exact entries at an integer point.
pub fn build_matrix_exact(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, l: u64, s: i64) -> Vec<Vec<Cyclotomic>> {
    let labels = divisors(l);
    let s = IntegerPoint(s);
    labels
        .iter()
        .map(|&t| labels.iter().map(|&tp| entry_m(psi, phi, k, t, tp, &s)).collect())
        .collect()
}

pub fn det_direct(m: &RankinMatrix) -> Complex64 {
    m.entries.clone().determinant()
}

/// Gaussian elimination over the cyclotomic field.
pub fn det_exact(mut a: Vec<Vec<Cyclotomic>>) -> Cyclotomic {
    let n = a.len();
    let mut det = Cyclotomic::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Cyclotomic::zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        let inv = a[c][c].inverse().expect("nonzero pivot");
        det = &det * &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for j in c..n {
                let sub = &f * &a[c][j];
                a[r][j] = &a[r][j] - &sub;
            }
        }
    }
    det
}

/// `det M_s(p^n)` from the three-case closed form, `y = p^{k−1−s}`, `C = p^{n(n+1)s/2}`.
pub fn det_lemma2<P: EvalPoint>(p: u64, n: u32, psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, s: &P) -> P::S {
    type S<P> = <P as EvalPoint>::S;
    let ps = s.pow_neg(p);
    let c_inv = ps.pow(n * (n + 1) / 2);
    let y = S::<P>::from_i64(p as i64).pow(k - 1).mul(&ps);
    let one = S::<P>::one();
    let (zp, zf) = (psi.evaluate(p as i64).is_zero(), phi.evaluate(p as i64).is_zero());
    let body = match (zp, zf) {
        (true, true) => one,
        (true, false) | (false, true) => one.sub(&y).pow(n),
        (false, false) => {
            let l = LocalData::<S<P>>::new(psi, phi, k, p);
            let r1 = one.sub(&l.alpha.div(&l.alpha_p).mul(&y)).pow(n);
            let r2 = one.sub(&l.alpha_p.div(&l.alpha).mul(&y)).pow(n);
            one.sub(&y)
                .pow(n - 1)
                .mul(&r1)
                .mul(&r2)
                .div(&one.add(&y).pow(n + 1))
        }
    };
    c_inv.mul(&body)
}

/// `det M_s(L)` assembled from prime-power blocks:
/// `det M(L₁L₂) = det M(L₁)^{σ₀(L₂)}·det M(L₂)^{σ₀(L₁)}` for coprime `L₁, L₂`.
pub fn det_lemma1_assemble<P: EvalPoint>(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, l: u64, s: &P) -> P::S {
    let mut acc = P::S::one();
    for (p, n) in factor(l) {
        let rest = l / p.pow(n);
        acc = acc.mul(&det_lemma2(p, n, psi, phi, k, s).pow(sigma0(rest) as u32));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub p: u64,
    pub reason: String,
}

/// Exact test at `s = k`: for `k = 2` the smallest prime `p | L` with `ψ(p) = φ(p) ≠ 0`.
pub fn vanishing_witness(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, l: u64) -> Option<Witness> {
    if k != 2 {
        return None;
    }
    factor(l).into_iter().map(|(p, _)| p).find_map(|p| {
        let (a, b) = (psi.evaluate(p as i64), phi.evaluate(p as i64));
        (!a.is_zero() && a == b).then(|| Witness {
            p,
            reason: format!("psi({p}) = phi({p}) = {a} != 0"),
        })
    })
}

/// Kronecker product, ordered so that the label `t₁t₂` sits at `(i₁, i₂)` in
/// the order of `divisors(L₁L₂)` only after [`kron_permutation`].
pub fn kronecker(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

/// Index of `t₁t₂` in `divisors(l1*l2)` for each pair, row-major in `(t₁, t₂)`.
pub fn kron_permutation(l1: u64, l2: u64) -> Vec<usize> {
    let all = divisors(l1 * l2);
    let mut out = Vec::new();
    for t1 in divisors(l1) {
        for t2 in divisors(l2) {
            out.push(all.binary_search(&(t1 * t2)).expect("divisor"));
        }
    }
    out
}

/// The weight-2 trivial-character matrix: labels `t | N`, `t > 1`, entries `m_s(t,t')`.
#[derive(Clone, Debug)]
pub struct K2Matrix {
    pub level: u64,
    pub labels: Vec<u64>,
    pub entries: DMatrix<f64>,
}

pub fn k2_labels(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&t| t > 1).collect()
}

pub fn build_k2_matrix(n: u64, s: f64) -> K2Matrix {
    let labels = k2_labels(n);
    let m = labels.len();
    let entries = DMatrix::from_fn(m, m, |i, j| entry_m2(labels[i], labels[j], &Complex64::new(s, 0.0)).re);
    K2Matrix { level: n, labels, entries }
}

/// `m'(t,t')` for all label pairs: closed form when `N` is squarefree,
/// numeric differentiation of the four-term entry otherwise.
pub fn build_k2_mprime(n: u64) -> K2Matrix {
    let labels = k2_labels(n);
    let m = labels.len();
    let sf = is_squarefree(n);
    let entries = DMatrix::from_fn(m, m, |i, j| {
        if sf {
            entry_mprime(labels[i], labels[j]).expect("squarefree labels")
        } else {
            entry_mprime_numeric(labels[i], labels[j])
        }
    });
    K2Matrix { level: n, labels, entries }
}

pub fn rational_rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let sub = &f * &a[rank][j];
                    a[r][j] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of the `m'` matrix on labels `t | N`, `t > 1`.
///
/// Writing `m'(t,t') = Σ_p κ_p(v_p t, v_p t')·ln p`, with `κ_p` vanishing when
/// either exponent is 0: for `N = p^n` the matrix is `ln p` times a rational
/// matrix; with two primes `p, q | N` the row of `pq` is the sum of the rows of
/// `p` and `q`, so the rank is deficient.
pub fn k2_mprime_rank(n: u64) -> (usize, usize) {
    let labels = k2_labels(n);
    let dim = labels.len();
    let f = factor(n);
    match f.len() {
        0 => (0, 0),
        1 => {
            let p = f[0].0;
            let e: Vec<u32> = labels.iter().map(|&t| crate::arith::valuation(t, p)).collect();
            let m = e.iter().map(|&i| e.iter().map(|&j| kappa(p, i, j)).collect()).collect();
            (rational_rank(m), dim)
        }
        _ => {
            // rows p and q add up to pq; rank is at most dim − 1
            let (p, q) = (f[0].0, f[1].0);
            let pos = |t: u64| labels.iter().position(|&x| x == t).expect("label");
            debug_assert!(pos(p * q) < dim);
            (dim - 1, dim)
        }
    }
}

/// Smallest singular value divided by the largest, after scaling each row to unit max-norm.
pub fn equilibrated_condition(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 {
        return 1.0;
    }
    let mut a = m.clone();
    for mut row in a.row_iter_mut() {
        let mx = row.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if mx > 0.0 {
            row /= Complex64::new(mx, 0.0);
        }
    }
    let sv = a.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max == 0.0 {
        0.0
    } else {
        min / max
    }
}
