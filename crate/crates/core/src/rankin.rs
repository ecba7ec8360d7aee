//! Rankin–Selberg convolutions of Eisenstein series.
//!
//! The local polynomials and matrix entries are generic over [`EvalPoint`], so
//! the same code yields complex values at arbitrary `s` and exact cyclotomic
//! values at integer `s`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factor, gcd, is_squarefree, prime_divisors, valuation};
use crate::characters::DirichletCharacter;
use crate::error::{invalid, Error, Result};
use crate::lfunctions::{dirichlet_l, Bounded};
use crate::scalar::{EvalPoint, Scalar};

/// Local Euler data at `p`: `α = ψ(p)`, `α' = φ(p)p^{k−1}`, `β = φ̄(p)`, `β' = ψ̄(p)p^{k−1}`.
#[derive(Clone, Debug)]
pub struct LocalData<S> {
    pub p: u64,
    pub alpha: S,
    pub alpha_p: S,
    pub beta: S,
    pub beta_p: S,
}

impl<S: Scalar> LocalData<S> {
    pub fn new(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, p: u64) -> Self {
        let pk = S::from_i64(p as i64).pow(k - 1);
        let psi_p = S::from_char(psi.evaluate(p as i64));
        let phi_p = S::from_char(phi.evaluate(p as i64));
        LocalData {
            p,
            alpha: psi_p.clone(),
            alpha_p: phi_p.mul(&pk),
            beta: phi_p.conj(),
            beta_p: psi_p.conj().mul(&pk),
        }
    }

    /// `α = β = 1`, `α' = β' = p`: the weight-2 trivial-character case.
    pub fn weight2_trivial(p: u64) -> Self {
        LocalData {
            p,
            alpha: S::one(),
            alpha_p: S::from_i64(p as i64),
            beta: S::one(),
            beta_p: S::from_i64(p as i64),
        }
    }

    fn mirrored(&self) -> Self {
        LocalData {
            p: self.p,
            alpha: self.beta.clone(),
            alpha_p: self.beta_p.clone(),
            beta: self.alpha.clone(),
            beta_p: self.alpha_p.clone(),
        }
    }
}

fn two_term<S: Scalar>(sum: &S, prod: &S, n: i64) -> S {
    if n < 0 {
        return S::zero();
    }
    let (mut prev, mut cur) = (S::zero(), S::one());
    for _ in 0..n {
        let next = sum.mul(&cur).sub(&prod.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// `a(p^n) = (α^{n+1} − α'^{n+1})/(α − α')`, by the recurrence
/// `a(p^n) = (α+α')a(p^{n−1}) − αα'·a(p^{n−2})` with `a(p^{−1}) = 0`, `a(1) = 1`.
pub fn coeff_a<S: Scalar>(l: &LocalData<S>, n: i64) -> S {
    two_term(&l.alpha.add(&l.alpha_p), &l.alpha.mul(&l.alpha_p), n)
}

pub fn coeff_b<S: Scalar>(l: &LocalData<S>, n: i64) -> S {
    two_term(&l.beta.add(&l.beta_p), &l.beta.mul(&l.beta_p), n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `p^e ‖ r`
    R,
    /// `p^e ‖ r'`: α, α', a interchanged with β, β', b.
    RPrime,
}

/// `X_p(e,s) = a(p^e) − a(p^{e−1})b(p)αα'p^{−s} + a(p^{e−2})(αα')²ββ'p^{−2s}`.
pub fn local_x<P: EvalPoint>(l: &LocalData<P::S>, e: u32, s: &P, side: Side) -> P::S {
    if e == 0 {
        return P::S::one();
    }
    let l = match side {
        Side::R => l.clone(),
        Side::RPrime => l.mirrored(),
    };
    let x = s.pow_neg(l.p);
    let aa = l.alpha.mul(&l.alpha_p);
    let bb = l.beta.mul(&l.beta_p);
    let e = e as i64;
    let t0 = coeff_a(&l, e);
    let t1 = coeff_a(&l, e - 1).mul(&coeff_b(&l, 1)).mul(&aa).mul(&x);
    let t2 = coeff_a(&l, e - 2).mul(&aa).mul(&aa).mul(&bb).mul(&x).mul(&x);
    t0.sub(&t1).add(&t2)
}

/// Value at `p` of the character `ψφψ̄φ̄`, taken modulo `lcm(c_ψ, c_φ)`.
fn denominator_char_value(psi: &DirichletCharacter, phi: &DirichletCharacter, p: u64) -> bool {
    !(psi.modulus() % p == 0 || phi.modulus() % p == 0)
}

/// `m(t,t') = (drr')^{−s} Π_{p^e‖rr'} X_p(e,s)/(1 − ψφψ̄φ̄(p)p^{2k−2−2s})`.
///
/// The coefficients of `E^{ψ,φ,t}` are read at multiples of `r'` and those of
/// the conjugated partner at multiples of `r`, so primes of `r'` carry the
/// `(α, α')` polynomial and primes of `r` the mirrored one.
pub fn entry_m<P: EvalPoint>(
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    k: u32,
    t: u64,
    tp: u64,
    s: &P,
) -> P::S {
    assert!(t >= 1 && tp >= 1);
    let d = gcd(t, tp);
    let (r, rp) = (t / d, tp / d);
    let mut acc = s.pow_neg(d * r * rp);
    for p in prime_divisors(r * rp) {
        let l = LocalData::<P::S>::new(psi, phi, k, p);
        let (e, side) = if rp % p == 0 {
            (valuation(rp, p), Side::R)
        } else {
            (valuation(r, p), Side::RPrime)
        };
        let num = local_x(&l, e, s, side);
        let den = if denominator_char_value(psi, phi, p) {
            let y = P::S::from_i64(p as i64).pow(2 * k - 2).mul(&s.pow_neg(p)).mul(&s.pow_neg(p));
            P::S::one().sub(&y)
        } else {
            P::S::one()
        };
        acc = acc.mul(&num.div(&den));
    }
    acc
}

/// The zeta-like prefactor `L(s,ψφ̄)L(s−2k+2,φψ̄)L(s−k+1,ψψ̄)L(s−k+1,φφ̄)/L(2s−2k+2,ψφψ̄φ̄)`.
pub fn rankin_prefactor(
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    k: u32,
    s: Complex64,
) -> Result<Bounded> {
    rankin_prefactor_general(psi, phi, &phi.clone(), &psi.clone(), k, s)
}

/// Prefactor for the pairing of `E^{ψ,φ}` against `conj(E^{ψ',φ'})`:
/// `L(s,ψψ̄')L(s−2k+2,φφ̄')L(s−k+1,ψφ̄')L(s−k+1,φψ̄')/L(2s−2k+2,ψφψ̄'φ̄')`.
pub fn rankin_prefactor_general(
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    psi2: &DirichletCharacter,
    phi2: &DirichletCharacter,
    k: u32,
    s: Complex64,
) -> Result<Bounded> {
    let kk = k as f64;
    let c1 = psi.multiply(&psi2.conjugate());
    let c2 = phi.multiply(&phi2.conjugate());
    let c3 = psi.multiply(&phi2.conjugate());
    let c4 = phi.multiply(&psi2.conjugate());
    let c5 = c1.multiply(&c2);
    let f = [
        dirichlet_l(s, &c1)?,
        dirichlet_l(s - 2.0 * kk + 2.0, &c2)?,
        dirichlet_l(s - kk + 1.0, &c3)?,
        dirichlet_l(s - kk + 1.0, &c4)?,
    ];
    let den = dirichlet_l(s * 2.0 - 2.0 * kk + 2.0, &c5)?;
    let mut value = Complex64::new(1.0, 0.0);
    let mut rel = 0.0;
    for v in &f {
        value *= v.value;
        rel += v.error_bound / v.value.norm().max(f64::MIN_POSITIVE);
    }
    if den.value.norm() == 0.0 {
        return Err(Error::Computation("denominator L-value vanishes".into()));
    }
    value /= den.value;
    rel += den.error_bound / den.value.norm();
    Ok(Bounded {
        value,
        error_bound: value.norm() * (rel + 8.0 * f64::EPSILON),
    })
}

/// `L(s, E^{ψ,φ,t}, conj(E^{φ,ψ,t'}))` via the Euler-product factorization.
pub fn rankin_l_closed(
    psi: &DirichletCharacter,
    phi: &DirichletCharacter,
    k: u32,
    t: u64,
    tp: u64,
    s: Complex64,
) -> Result<Bounded> {
    let pre = rankin_prefactor(psi, phi, k, s)?;
    let m = entry_m(psi, phi, k, t, tp, &s);
    let value = pre.value * m;
    Ok(Bounded {
        value,
        error_bound: pre.error_bound * m.norm() + 8.0 * f64::EPSILON * value.norm(),
    })
}

/// Rigorous bound for `Σ_{n>T} d(n)² n^{2k−2−σ}`, from `d(n)² ≤ d₄(n)` and
/// `Σ_{n≤x} d₄(n) ≤ x(1+ln x)³` by partial summation.
pub fn rankin_tail_bound(k: u32, sigma: f64, terms: usize) -> f64 {
    let delta = sigma - 2.0 * k as f64 + 2.0;
    let c = delta - 1.0;
    if c <= 0.0 {
        return f64::INFINITY;
    }
    let v = 1.0 + (terms as f64).ln();
    delta * (c - c * v).exp() * (v.powi(3) / c + 3.0 * v * v / (c * c) + 6.0 * v / c.powi(3) + 6.0 / c.powi(4))
}

/// Truncated `Σ_{n≤T} a_f(n)·conj(a_g(n))·n^{−s}` with a tail bound.
///
/// `f` and `g` hold `a(0..=T)` (index 0 ignored) and must satisfy `|a(n)| ≤ d(n)n^{k−1}`.
pub fn rankin_l_series(f: &[Complex64], g: &[Complex64], k: u32, s: Complex64, terms: usize) -> Result<Bounded> {
    if s.re <= 2.0 * k as f64 - 1.0 {
        return Err(Error::Divergent(format!("Re s = {} ≤ 2k−1 = {}", s.re, 2 * k - 1)));
    }
    if f.len() <= terms || g.len() <= terms {
        return Err(Error::InsufficientPrecision(format!("need {terms} coefficients")));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let real_s = s.im == 0.0;
    for n in 1..=terms {
        let c = f[n] * g[n].conj();
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let ns = if real_s {
            Complex64::new((n as f64).powf(-s.re), 0.0)
        } else {
            (-s * (n as f64).ln()).exp()
        };
        // Kahan step
        let y = c * ns - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(Bounded {
        value: sum,
        error_bound: rankin_tail_bound(k, s.re, terms) + 1e-14 * sum.norm(),
    })
}

/// `γ_s(p) = (1 + p^{−1})/(1 + p^{1−s})`.
pub fn gamma_factor(p: u64, s: Complex64) -> Complex64 {
    if p == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let p = p as f64;
    Complex64::new(1.0 + 1.0 / p, 0.0) / (1.0 + ((1.0 - s) * p.ln()).exp())
}

/// `γ_s(u) = Π_{p|u} γ_s(p)` for squarefree `u`.
pub fn gamma_squarefree(u: u64, s: Complex64) -> Result<Complex64> {
    if !is_squarefree(u) {
        return invalid(format!("{u} is not squarefree"));
    }
    Ok(prime_divisors(u).into_iter().map(|p| gamma_factor(p, s)).product())
}

fn local_ratio<P: EvalPoint>(p: u64, e: u32, s: &P) -> P::S {
    // X_p(e,s)/(1 − y_p²) with α = β = 1, α' = β' = p, y_p = p^{1−s}
    let l = LocalData::<P::S>::weight2_trivial(p);
    let x = local_x(&l, e, s, Side::R);
    let y = P::S::from_i64(p as i64).mul(&s.pow_neg(p));
    x.div(&P::S::one().sub(&y.mul(&y)))
}

fn weighted_product<P: EvalPoint>(n: u64, s: &P) -> P::S {
    // n^{1−s} Π_{p^e‖n} X_p(e,s)/(1 − y_p²)
    let mut acc = P::S::from_i64(n as i64).mul(&s.pow_neg(n));
    for (p, e) in factor(n) {
        acc = acc.mul(&local_ratio(p, e, s));
    }
    acc
}

/// The `k = 2`, `ψ = φ = 1` entry
/// `m_s(t,t') = 1 + tt'(drr')^{−s}Π_{p^e‖rr'}X/(1−y²) − t^{1−s}Π_{p^e‖t}X/(1−y²) − t'^{1−s}Π_{p^e‖t'}X/(1−y²)`.
pub fn entry_m2<P: EvalPoint>(t: u64, tp: u64, s: &P) -> P::S {
    let d = gcd(t, tp);
    let (r, rp) = (t / d, tp / d);
    let mut cross = P::S::from_i64((t * tp) as i64).mul(&s.pow_neg(d * r * rp));
    for (p, e) in factor(r * rp) {
        cross = cross.mul(&local_ratio(p, e, s));
    }
    P::S::one()
        .add(&cross)
        .sub(&weighted_product(t, s))
        .sub(&weighted_product(tp, s))
}

/// `m_s(t,t')` in the squarefree simplification
/// `1 + (drr')^{2−s}γ_s(r)γ_s(r') − (dr)^{2−s}γ_s(r)γ_s(d) − (dr')^{2−s}γ_s(r')γ_s(d)`.
pub fn entry_m2_squarefree(t: u64, tp: u64, s: Complex64) -> Result<Complex64> {
    if !is_squarefree(t) || !is_squarefree(tp) {
        return invalid("squarefree form needs squarefree t, t'");
    }
    let d = gcd(t, tp);
    let (r, rp) = (t / d, tp / d);
    let pw = |n: u64| ((2.0 - s) * (n as f64).ln()).exp();
    let g = |u: u64| gamma_squarefree(u, s);
    Ok(Complex64::new(1.0, 0.0) + pw(d * r * rp) * g(r)? * g(rp)?
        - pw(d * r) * g(r)? * g(d)?
        - pw(d * rp) * g(rp)? * g(d)?)
}

/// `m'(t,t') = Σ_{p | (t,t')} ((p−1)/(p+1))·ln p` for squarefree `t, t' > 1`.
pub fn entry_mprime(t: u64, tp: u64) -> Result<f64> {
    if t <= 1 || tp <= 1 {
        return invalid("labels must exceed 1");
    }
    if !is_squarefree(t) || !is_squarefree(tp) {
        return invalid("closed form needs squarefree t, t'; use entry_mprime_numeric");
    }
    Ok(prime_divisors(gcd(t, tp))
        .into_iter()
        .map(|p| (p as f64 - 1.0) / (p as f64 + 1.0) * (p as f64).ln())
        .sum())
}

/// `∂_s m_s(t,t')` at `s = 2` by Richardson-extrapolated central differences.
pub fn entry_mprime_numeric(t: u64, tp: u64) -> f64 {
    let h = 1e-3;
    let c = |h: f64| {
        let f = |x: f64| entry_m2(t, tp, &Complex64::new(2.0 + x, 0.0)).re;
        (f(h) - f(-h)) / (2.0 * h)
    };
    (4.0 * c(h / 2.0) - c(h)) / 3.0
}

/// Rational polynomial in `u`, lowest degree first.
type Poly = Vec<BigRational>;

fn poly_eval(p: &[BigRational], u: &BigRational) -> (BigRational, BigRational) {
    let mut v = BigRational::zero();
    let mut d = BigRational::zero();
    for c in p.iter().rev() {
        d = &d * u + &v;
        v = &v * u + c;
    }
    (v, d)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `A_p(i,j)` as numerator/denominator polynomials in `u = p^{−s}`.
fn local_a(p: u64, i: u32, j: u32) -> (Poly, Poly) {
    let pi = p as i64;
    let scale = num_traits::pow(int(pi), (i + j) as usize);
    let m = i.max(j) as usize;
    if i == j {
        let mut num = vec![BigRational::zero(); m + 1];
        num[m] = scale;
        return (num, vec![BigRational::one()]);
    }
    let e = i.abs_diff(j) as i64;
    let sigma = |n: i64| -> BigRational {
        if n < 0 {
            BigRational::zero()
        } else {
            (0..=n).map(|q| num_traits::pow(int(pi), q as usize)).sum()
        }
    };
    // X(e)(u) = a(e) − p(1+p)a(e−1)u + p³a(e−2)u²
    let x = [sigma(e), -int(pi * (1 + pi)) * sigma(e - 1), int(pi * pi * pi) * sigma(e - 2)];
    let mut num = vec![BigRational::zero(); m + 3];
    for (q, c) in x.iter().enumerate() {
        num[m + q] = &scale * c;
    }
    let den = vec![BigRational::one(), BigRational::zero(), -int(pi * pi)];
    (num, den)
}

fn local_a_derivative(p: u64, i: u32, j: u32, u: &BigRational) -> BigRational {
    let (n, d) = local_a(p, i, j);
    let (nv, nd) = poly_eval(&n, u);
    let (dv, dd) = poly_eval(&d, u);
    (nd * &dv - nv * dd) / (&dv * &dv)
}

/// Exact rational `κ_p(i,j) = −u∂_u[A_p(i,j) − A_p(i,0) − A_p(0,j)]` at `u = p^{−2}`,
/// so that `m'(t,t') = Σ_{p | (t,t')} κ_p(v_p t, v_p t')·ln p`.
pub fn kappa(p: u64, i: u32, j: u32) -> BigRational {
    let u = BigRational::new(BigInt::one(), BigInt::from(p * p));
    let d = local_a_derivative(p, i, j, &u) - local_a_derivative(p, i, 0, &u) - local_a_derivative(p, 0, j, &u);
    -(u * d)
}

/// `A_p(i,j)` at `s = 2`, exact; equal to 1 for all `i, j`.
pub fn local_a_at_two(p: u64, i: u32, j: u32) -> BigRational {
    let u = BigRational::new(BigInt::one(), BigInt::from(p * p));
    let (n, d) = local_a(p, i, j);
    poly_eval(&n, &u).0 / poly_eval(&d, &u).0
}

/// `m'(t,t')` through the exact local derivatives, valid for all `t, t' > 1`.
pub fn entry_mprime_kappa(t: u64, tp: u64) -> f64 {
    prime_divisors(gcd(t, tp))
        .into_iter()
        .map(|p| {
            let k = kappa(p, valuation(t, p), valuation(tp, p));
            crate::cyclotomic::rational_to_f64(&k) * (p as f64).ln()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_characters;
    use crate::cyclotomic::Cyclotomic;
    use crate::scalar::IntegerPoint;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn closed_a(l: &LocalData<Complex64>, n: i32) -> Complex64 {
        if (l.alpha - l.alpha_p).norm() < 1e-12 {
            return l.alpha.powi(n) * (n + 1) as f64;
        }
        (l.alpha.powi(n + 1) - l.alpha_p.powi(n + 1)) / (l.alpha - l.alpha_p)
    }

    #[test]
    fn coefficient_examples() {
        let l = LocalData::<Complex64>::weight2_trivial(5);
        assert_eq!(coeff_a(&l, 1), c(6.0));
        assert_eq!(coeff_a(&l, 0), c(1.0));
        assert_eq!(coeff_a(&l, -1), c(0.0));
        let z = LocalData::<Complex64> {
            p: 3,
            alpha: c(0.0),
            alpha_p: c(0.0),
            beta: c(0.0),
            beta_p: c(0.0),
        };
        assert_eq!(coeff_a(&z, 2), c(0.0));
        for q in [5u64, 7, 12] {
            for psi in enumerate_characters(q) {
                let l = LocalData::<Complex64>::new(&psi, &DirichletCharacter::principal(1), 3, 11);
                for n in 0..6 {
                    assert!((coeff_a(&l, n as i64) - closed_a(&l, n)).norm() < 1e-9 * (1.0 + closed_a(&l, n).norm()));
                }
            }
        }
        // α = α': the limit (n+1)α^n
        let l = LocalData::<Complex64> {
            p: 2,
            alpha: c(2.0),
            alpha_p: c(2.0),
            beta: c(1.0),
            beta_p: c(1.0),
        };
        assert_eq!(coeff_a(&l, 3), c(32.0));
    }

    #[test]
    fn weight2_local_factor() {
        for p in [2u64, 3, 5, 7] {
            for &s in &[2.5, 3.0, 4.7] {
                let s = c(s);
                let l = LocalData::<Complex64>::weight2_trivial(p);
                let lhs = local_x(&l, 1, &s, Side::R) / (1.0 - ((2.0 - 2.0 * s) * (p as f64).ln()).exp());
                let rhs = gamma_factor(p, s) * p as f64;
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_and_trivial_entries() {
        let one = DirichletCharacter::principal(1);
        assert!((entry_m(&one, &one, 4, 6, 6, &c(3.0)) - 6f64.powf(-3.0)).norm() < 1e-17);
        assert_eq!(entry_m(&one, &one, 4, 1, 1, &c(3.0)), c(1.0));
        let ex = entry_m(&one, &one, 4, 2, 6, &IntegerPoint(4));
        let fl = entry_m(&one, &one, 4, 2, 6, &c(4.0));
        assert!((ex.to_complex() - fl).norm() < 1e-15);
    }

    #[test]
    fn multiplicativity() {
        let chi = enumerate_characters(5)[1].clone();
        let one = DirichletCharacter::principal(1);
        let s = Complex64::new(2.7, 0.4);
        for (t1, t1p, t2, t2p) in [(2u64, 4u64, 3u64, 9u64), (4, 1, 3, 3), (8, 2, 9, 1)] {
            let lhs = entry_m(&chi, &one, 3, t1 * t2, t1p * t2p, &s);
            let rhs = entry_m(&chi, &one, 3, t1, t1p, &s) * entry_m(&chi, &one, 3, t2, t2p, &s);
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1e-3));
        }
    }

    #[test]
    fn gamma_examples() {
        for p in [2u64, 3, 5, 7, 11] {
            assert!((gamma_factor(p, c(2.0)) - 1.0).norm() < 1e-15);
            let h = 1e-5;
            let d = (gamma_factor(p, c(2.0 + h)) - gamma_factor(p, c(2.0 - h))) / (2.0 * h);
            assert!((d.re - (p as f64).ln() / (1.0 + p as f64)).abs() < 1e-9);
        }
        assert_eq!(gamma_factor(1, c(3.3)), c(1.0));
        assert!(gamma_squarefree(12, c(2.0)).is_err());
    }

    #[test]
    fn m2_forms_agree() {
        assert!((entry_m2(2, 2, &c(3.0)) - entry_m2_squarefree(2, 2, c(3.0)).unwrap()).norm() < 1e-14);
        for &(t, tp) in &[(2u64, 6u64), (6, 6), (3, 10), (15, 21)] {
            for &s in &[2.0, 2.5, 3.0, 5.0] {
                let a = entry_m2(t, tp, &c(s));
                let b = entry_m2_squarefree(t, tp, c(s)).unwrap();
                assert!((a - b).norm() < 1e-13, "t={t} t'={tp} s={s}");
            }
        }
        assert!(entry_m2(2, 6, &IntegerPoint(2)).is_zero());
        assert!(entry_m2(4, 12, &IntegerPoint(2)).is_zero());
    }

    #[test]
    fn mprime_examples() {
        assert_eq!(entry_mprime(2, 3).unwrap(), 0.0);
        assert!((entry_mprime(2, 6).unwrap() - 2f64.ln() / 3.0).abs() < 1e-15);
        assert!((entry_mprime(6, 6).unwrap() - (2f64.ln() / 3.0 + 3f64.ln() / 2.0)).abs() < 1e-15);
        assert!(entry_mprime(4, 6).is_err());
        for p in [2u64, 3, 5, 7] {
            assert_eq!(kappa(p, 1, 1), BigRational::new(BigInt::from(p - 1), BigInt::from(p + 1)));
        }
    }

    #[test]
    fn local_factors_are_one_at_two() {
        for p in [2u64, 3, 5] {
            for i in 0..5 {
                for j in 0..5 {
                    assert!(local_a_at_two(p, i, j).is_one(), "p={p} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn kappa_route_matches_numeric_derivative() {
        for t in 2..=36u64 {
            for tp in 2..=36u64 {
                let a = entry_mprime_kappa(t, tp);
                let b = entry_mprime_numeric(t, tp);
                assert!((a - b).abs() < 1e-8, "t={t} t'={tp}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn exact_entries_match_float() {
        let chi = enumerate_characters(7)[2].clone();
        let one = DirichletCharacter::principal(1);
        let ex: Cyclotomic = entry_m(&chi, &one, 3, 1, 49, &IntegerPoint(3));
        let fl = entry_m(&chi, &one, 3, 1, 49, &c(3.0));
        assert!((ex.to_complex() - fl).norm() < 1e-14);
    }
}
