//! Dirichlet L-functions.
//!
//! Exact values at non-positive integers come from generalized Bernoulli
//! numbers. Everything else goes through the Hurwitz zeta function, evaluated
//! by Euler–Maclaurin summation with an explicit remainder bound.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, totient};
use crate::characters::DirichletCharacter;
use crate::cyclotomic::{rational_to_f64, Cyclotomic};
use crate::ddouble::Dd;
use crate::error::{invalid, Error, Result};

fn bernoulli_cache() -> &'static RwLock<Arc<Vec<BigRational>>> {
    static CACHE: OnceLock<RwLock<Arc<Vec<BigRational>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Arc::new(vec![BigRational::one()])))
}

/// `B_0, …, B_n` with the convention `B_1 = −1/2`.
pub fn bernoulli_numbers(n: usize) -> Arc<Vec<BigRational>> {
    {
        let cur = bernoulli_cache().read().unwrap();
        if cur.len() > n {
            return cur.clone();
        }
    }
    let mut guard = bernoulli_cache().write().unwrap();
    if guard.len() > n {
        return guard.clone();
    }
    let mut b: Vec<BigRational> = guard.as_ref().clone();
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0
    for m in b.len()..=n {
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    let arc = Arc::new(b);
    *guard = arc.clone();
    arc
}

pub fn bernoulli_number(n: usize) -> BigRational {
    bernoulli_numbers(n)[n].clone()
}

/// `B_k(x) = Σ_j C(k,j) B_j x^{k−j}`.
pub fn bernoulli_polynomial(k: usize, x: &BigRational) -> BigRational {
    let b = bernoulli_numbers(k);
    let mut binom = BigInt::one();
    let mut acc = BigRational::zero();
    for j in 0..=k {
        acc += BigRational::from_integer(binom.clone()) * &b[j] * num_traits::pow(x.clone(), k - j);
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    acc
}

type CharKey = (u64, Vec<u64>);

fn gen_bernoulli_cache() -> &'static RwLock<HashMap<(CharKey, u32), Cyclotomic>> {
    static CACHE: OnceLock<RwLock<HashMap<(CharKey, u32), Cyclotomic>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `B_{k,χ} = q^{k−1} Σ_{a=1}^{q} χ(a) B_k(a/q)`, exact.
pub fn gen_bernoulli(chi: &DirichletCharacter, k: u32) -> Cyclotomic {
    assert!(k >= 1, "gen_bernoulli needs k ≥ 1");
    let key = (chi.key(), k);
    if let Some(v) = gen_bernoulli_cache().read().unwrap().get(&key) {
        return v.clone();
    }
    let q = chi.modulus();
    let ex = chi.unit_group().exponent();
    // Collect rational coefficients of ζ_ex^j before reducing.
    let mut poly = vec![BigRational::zero(); ex as usize];
    let qq = BigInt::from(q);
    for a in 1..=q {
        if let crate::characters::CharacterValue::Root { num, den } = chi.evaluate(a as i64) {
            let j = (num * (ex / den)) as usize;
            let x = BigRational::new(BigInt::from(a), qq.clone());
            poly[j] += bernoulli_polynomial(k as usize, &x);
        }
    }
    let scale = BigRational::from_integer(num_traits::pow(qq, (k - 1) as usize));
    for c in poly.iter_mut() {
        *c *= &scale;
    }
    let v = Cyclotomic::from_power_coefficients(ex, poly);
    gen_bernoulli_cache()
        .write()
        .unwrap()
        .insert(key, v.clone());
    v
}

/// `L(1−k, χ)`: `−B_{k,χ*}/k` for the primitive character, times the missing Euler factors.
pub fn l_at_nonpositive(chi: &DirichletCharacter, k: u32) -> Cyclotomic {
    let prim = chi.primitivize();
    let mut v = -(gen_bernoulli(&prim, k) / Cyclotomic::from_integer(k as i64));
    for factor in missing_euler_factors(chi, &prim, k as i64 - 1) {
        v = &v * &factor.1;
    }
    v
}

/// `L(1−k, χ) = −B_{k,χ}/k` applied directly to a possibly imprimitive χ.
pub fn l_at_nonpositive_direct(chi: &DirichletCharacter, k: u32) -> Cyclotomic {
    -(gen_bernoulli(chi, k) / Cyclotomic::from_integer(k as i64))
}

/// `(p, 1 − χ*(p)·p^{e})` for primes dividing the modulus but not the conductor.
fn missing_euler_factors(
    chi: &DirichletCharacter,
    prim: &DirichletCharacter,
    e: i64,
) -> Vec<(u64, Cyclotomic)> {
    let f = prim.conductor();
    arith::prime_divisors(chi.modulus())
        .into_iter()
        .filter(|p| f % p != 0)
        .map(|p| {
            let pe = if e >= 0 {
                BigRational::from_integer(num_traits::pow(BigInt::from(p), e as usize))
            } else {
                BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(p), (-e) as usize))
            };
            let term = prim.evaluate(p as i64).to_cyclotomic() * Cyclotomic::from_rational(pe);
            (p, Cyclotomic::one() - term)
        })
        .collect()
}

/// Residue at `s = 1` of `L(s, principal mod c)`, which is `φ(c)/c`.
pub fn residue_principal(c: u64) -> BigRational {
    assert!(c >= 1);
    BigRational::new(BigInt::from(totient(c)), BigInt::from(c))
}

/// Exact order of vanishing of `L(s, χ)` at an integer `s0 ≤ 0`.
pub fn zero_order_at(chi: &DirichletCharacter, s0: i64) -> u32 {
    assert!(s0 <= 0, "zero_order_at needs s0 ≤ 0");
    let k = (1 - s0) as u32;
    let prim = chi.primitivize();
    let mut order = u32::from(gen_bernoulli(&prim, k).is_zero());
    order += missing_euler_factors(chi, &prim, -s0)
        .iter()
        .filter(|(_, f)| f.is_zero())
        .count() as u32;
    order
}

/// Leading Taylor coefficient of `L(s, χ)` at an integer `s0 ≤ 0`.
#[derive(Clone, Debug)]
pub struct LeadingTerm {
    pub order: u32,
    pub value: Complex64,
    pub error_bound: f64,
    /// Present when no numeric derivative entered.
    pub exact: Option<Cyclotomic>,
}

/// `lim_{s→s0} L(s, χ)/(s − s0)^order` with `order = zero_order_at(χ, s0)`.
///
/// The primitive factor contributes `L(s0, χ*)` or `L'(s0, χ*)`; each vanishing
/// Euler factor `1 − p^{−s}` at `s0 = 0` contributes `ln p`.
pub fn leading_coefficient(chi: &DirichletCharacter, s0: i64) -> Result<LeadingTerm> {
    if s0 > 0 {
        return invalid("leading_coefficient needs s0 ≤ 0");
    }
    let k = (1 - s0) as u32;
    let prim = chi.primitivize();
    let b = gen_bernoulli(&prim, k);
    let mut order = 0;
    let mut exact = Cyclotomic::one();
    let mut numeric = Complex64::new(1.0, 0.0);
    let mut rel_err = 0.0;
    let mut all_exact = true;
    if b.is_zero() {
        order += 1;
        let d = l_derivative(Complex64::new(s0 as f64, 0.0), &prim)?;
        rel_err += d.error_bound / d.value.norm().max(f64::MIN_POSITIVE);
        numeric *= d.value;
        all_exact = false;
    } else {
        exact = -(b / Cyclotomic::from_integer(k as i64));
    }
    for (p, f) in missing_euler_factors(chi, &prim, -s0) {
        if f.is_zero() {
            order += 1;
            numeric *= (p as f64).ln();
            rel_err += 2.0 * f64::EPSILON;
            all_exact = false;
        } else {
            exact = &exact * &f;
        }
    }
    let value = exact.to_complex() * numeric;
    Ok(LeadingTerm {
        order,
        value,
        error_bound: value.norm() * (rel_err + 4.0 * f64::EPSILON),
        exact: all_exact.then_some(exact),
    })
}

/// Euler–Maclaurin parameters: direct summation up to `tail_start`, then `terms` Bernoulli corrections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmParams {
    pub tail_start: usize,
    pub terms: usize,
}

impl EmParams {
    /// `M = max(20, ⌈2|s|⌉)` and 12 correction terms.
    pub fn standard(s: Complex64) -> Self {
        EmParams {
            tail_start: (2.0 * s.norm()).ceil().max(20.0) as usize,
            terms: 12,
        }
    }
}

/// A numeric value together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounded {
    pub value: Complex64,
    pub error_bound: f64,
}

/// A Dirichlet L-value with its evaluation point and error bound.
#[derive(Clone, Debug)]
pub struct LValue {
    pub s: Complex64,
    pub character: DirichletCharacter,
    pub value: Complex64,
    pub error_bound: f64,
}

fn bernoulli_em_coeffs() -> &'static Vec<f64> {
    // B_{2j}/(2j)! for j = 0..=80
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(160);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(81);
        for j in 0..=80usize {
            if j > 0 {
                fact *= BigInt::from((2 * j - 1) * (2 * j));
            }
            out.push(rational_to_f64(&(&b[2 * j] / BigRational::from_integer(fact.clone()))));
        }
        out
    })
}

/// Compensated complex summation.
#[derive(Default, Clone, Copy)]
struct Neumaier {
    sum: Complex64,
    comp: Complex64,
    abs: f64,
}

impl Neumaier {
    fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
        self.abs += x.norm();
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

fn as_small_integer(s: Complex64) -> Option<i32> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re.abs() < 200.0 {
        Some(s.re as i32)
    } else {
        None
    }
}

/// `x^{−s}` for real `x > 0`.
fn pow_neg(x: f64, s: Complex64) -> Complex64 {
    match as_small_integer(s) {
        Some(n) => Complex64::new(x.powi(-n), 0.0),
        None => (-s * x.ln()).exp(),
    }
}

/// Bound on the Euler–Maclaurin remainder at start point `x = M + a`.
fn em_remainder_bound(s: Complex64, x: f64, terms: usize) -> f64 {
    let sigma = s.re;
    let denom = sigma + 2.0 * terms as f64 - 1.0;
    if denom <= 0.0 || x <= 0.0 {
        return f64::INFINITY;
    }
    let mut rising = 1.0f64;
    for i in 0..2 * terms {
        rising *= (s + i as f64).norm() / std::f64::consts::TAU;
    }
    4.0 * rising * x.powf(-sigma - 2.0 * terms as f64 + 1.0) / denom
}

/// Cauchy-estimate bound on the derivative of the remainder, radius `r`.
fn em_remainder_derivative_bound(s: Complex64, x: f64, terms: usize) -> f64 {
    const R: f64 = 0.5;
    let sigma = s.re - R;
    let denom = sigma + 2.0 * terms as f64 - 1.0;
    if denom <= 0.0 || x <= 0.0 {
        return f64::INFINITY;
    }
    let mut rising = 1.0f64;
    for i in 0..2 * terms {
        rising *= ((s + i as f64).norm() + R) / std::f64::consts::TAU;
    }
    4.0 * rising * x.powf(-sigma - 2.0 * terms as f64 + 1.0) / denom / R
}

/// Terms needed so that `Re s + 2J − 1 ≥ 1`, and so that a non-positive integer
/// `s = −m` is handled exactly (`2J > m`).
fn min_terms(s: Complex64) -> usize {
    let mut j = 12usize;
    let need = ((2.0 - s.re) / 2.0).ceil();
    if need > j as f64 {
        j = need as usize;
    }
    if let Some(n) = as_small_integer(s) {
        if n <= 0 {
            j = j.max((-n) as usize / 2 + 1);
        }
    }
    j.min(80)
}

/// Pick the tail start minimizing remainder bound plus estimated rounding error.
fn adaptive_params(s: Complex64, a: f64, derivative: bool, regularize: bool, unit: f64) -> EmParams {
    let terms = min_terms(s);
    let cap = EmParams::standard(s).tail_start * 4 + 40;
    let weight = |x: f64| 4.0 + s.norm() * (x.ln().abs() + 1.0);
    let mut head = 0.0f64;
    let mut best = (f64::INFINITY, 0usize);
    for m in 0..=cap {
        let x = m as f64 + a;
        let trunc = if derivative {
            em_remainder_derivative_bound(s, x, terms)
        } else {
            em_remainder_bound(s, x, terms)
        };
        let pole = if regularize && (s - 1.0).norm() < 1.0 {
            x.ln().abs() * x.powf(1.0 - s.re).max(1.0)
        } else {
            x.powf(1.0 - s.re) / (s - 1.0).norm()
        };
        let tail_mag = pole + x.powf(-s.re);
        let lnx = if derivative { x.ln().abs() + 1.0 } else { 1.0 };
        let round = unit * (head + tail_mag * weight(x) * lnx);
        let total = trunc + round;
        if total < best.0 {
            best = (total, m);
        }
        if trunc == 0.0 || (trunc < 1e-3 * round && m > best.1 + 4) {
            break;
        }
        head += x.powf(-s.re) * weight(x) * lnx;
    }
    EmParams {
        tail_start: best.1,
        terms,
    }
}

/// `((x^{1−s}) − 1)/(s − 1)` and its `s`-derivative, stable near `s = 1`.
fn regularized_pole_term(s: Complex64, x: f64) -> (Complex64, Complex64) {
    let u = s - 1.0;
    let l = x.ln();
    let w = u * l;
    if w.norm() < 0.5 {
        // (e^{−uL} − 1)/u = Σ_{n≥1} (−L)^n u^{n−1}/n!
        let mut val = Complex64::new(0.0, 0.0);
        let mut der = Complex64::new(0.0, 0.0);
        let mut coef = 1.0f64; // (−L)^n / n!
        let mut upow_prev = Complex64::new(0.0, 0.0); // u^{n−2}
        let mut upow = Complex64::new(1.0, 0.0); // u^{n−1}
        for n in 1..60 {
            coef *= -l / n as f64;
            val += upow * coef;
            if n >= 2 {
                der += upow_prev * coef * (n as f64 - 1.0);
            }
            upow_prev = upow;
            upow *= u;
            if coef.abs() * upow.norm().max(1.0) < 1e-18 && n > 4 {
                break;
            }
        }
        (val, der)
    } else {
        let xp = (-u * l).exp();
        let val = (xp - 1.0) / u;
        let der = (-l * xp * u - (xp - 1.0)) / (u * u);
        (val, der)
    }
}

/// Core Euler–Maclaurin evaluation of `ζ(s,a)` or `∂_s ζ(s,a)`.
///
/// With `regularize`, the pole term `x^{1−s}/(s−1)` is replaced by
/// `(x^{1−s} − 1)/(s − 1)`, i.e. the result is `ζ(s,a) − 1/(s−1)`.
fn em_eval(
    s: Complex64,
    a: f64,
    params: EmParams,
    derivative: bool,
    regularize: bool,
) -> Bounded {
    let mut acc = Neumaier::default();
    let mut weighted = 0.0;
    let sn = s.norm();
    for n in 0..params.tail_start {
        let x = n as f64 + a;
        let mut t = pow_neg(x, s);
        if derivative {
            t *= -x.ln();
        }
        weighted += t.norm() * (sn * x.ln().abs() + 2.0);
        acc.add(t);
    }
    let x = params.tail_start as f64 + a;
    let lx = x.ln();
    let xs = pow_neg(x, s);
    let u = s - 1.0;
    if regularize {
        let (v, d) = regularized_pole_term(s, x);
        acc.add(if derivative { d } else { v });
    } else {
        let xp = xs * x;
        if derivative {
            acc.add(-lx * xp / u - xp / (u * u));
        } else {
            acc.add(xp / u);
        }
    }
    acc.add(if derivative { -lx * xs * 0.5 } else { xs * 0.5 });
    let coeffs = bernoulli_em_coeffs();
    // (s)_{2j−1} and its derivative
    let mut p = s;
    let mut dp = Complex64::new(1.0, 0.0);
    let mut w = xs / x;
    for j in 1..=params.terms {
        let c = coeffs[j];
        let t = if derivative {
            (dp - p * lx) * w * c
        } else {
            p * w * c
        };
        acc.add(t);
        let f1 = s + (2 * j - 1) as f64;
        let f2 = s + (2 * j) as f64;
        dp = dp * f1 * f2 + p * (f1 + f2);
        p = p * f1 * f2;
        w /= x * x;
    }
    let trunc = if derivative {
        em_remainder_derivative_bound(s, x, params.terms)
    } else {
        em_remainder_bound(s, x, params.terms)
    };
    let round = 4.0 * f64::EPSILON * (weighted + acc.abs * (sn * lx.abs() + 4.0));
    Bounded {
        value: acc.total(),
        error_bound: trunc + round,
    }
}

fn check_hurwitz_args(s: Complex64, a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return invalid(format!("Hurwitz parameter a = {a} outside (0, 1]"));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("1".into()));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return invalid("non-finite s");
    }
    Ok(())
}

/// `ζ(s, a)` with adaptively chosen Euler–Maclaurin parameters.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Bounded> {
    check_hurwitz_args(s, a)?;
    Ok(em_eval(s, a, adaptive_params(s, a, false, false, f64::EPSILON), false, false))
}

/// `ζ(s, a)` with explicit parameters.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, params: EmParams) -> Result<Bounded> {
    check_hurwitz_args(s, a)?;
    Ok(em_eval(s, a, params, false, false))
}

/// `∂ζ(s, a)/∂s` by the term-wise differentiated series.
pub fn hurwitz_zeta_derivative(s: Complex64, a: f64) -> Result<Bounded> {
    check_hurwitz_args(s, a)?;
    Ok(em_eval(s, a, adaptive_params(s, a, true, false, f64::EPSILON), true, false))
}

pub fn hurwitz_zeta_derivative_with(s: Complex64, a: f64, params: EmParams) -> Result<Bounded> {
    check_hurwitz_args(s, a)?;
    Ok(em_eval(s, a, params, true, false))
}

fn bernoulli_em_coeffs_dd() -> &'static Vec<Dd> {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(160);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(81);
        for j in 0..=80usize {
            if j > 0 {
                fact *= BigInt::from((2 * j - 1) * (2 * j));
            }
            out.push(Dd::from_rational(&(&b[2 * j] / BigRational::from_integer(fact.clone()))));
        }
        out
    })
}

/// `ζ(n, num/den)` for an integer `n ≠ 1`, summed in double-double.
fn hurwitz_integer_dd(n: i32, num: u64, den: u64) -> (Dd, f64) {
    let a = Dd::new(num as f64).div(Dd::new(den as f64));
    let s = Complex64::new(n as f64, 0.0);
    let params = adaptive_params(s, a.to_f64(), false, false, 1e-31);
    let mut acc = Dd::ZERO;
    let mut abs = 0.0;
    let mut push = |t: Dd, acc: &mut Dd| {
        abs += t.hi.abs();
        *acc = acc.add(t);
    };
    for i in 0..params.tail_start {
        push(a.add(Dd::new(i as f64)).powi(-n), &mut acc);
    }
    let x = a.add(Dd::new(params.tail_start as f64));
    let xs = x.powi(-n);
    push(x.powi(1 - n).div(Dd::new((n - 1) as f64)), &mut acc);
    push(xs.mul_f64(0.5), &mut acc);
    let inv_x = x.recip();
    let inv_x2 = inv_x.mul(inv_x);
    let coeffs = bernoulli_em_coeffs_dd();
    let mut p = Dd::new(n as f64);
    let mut w = xs.mul(inv_x);
    for j in 1..=params.terms {
        if p.hi == 0.0 {
            break;
        }
        push(coeffs[j].mul(p).mul(w), &mut acc);
        p = p
            .mul_f64((n + 2 * j as i32 - 1) as f64)
            .mul_f64((n + 2 * j as i32) as f64);
        w = w.mul(inv_x2);
    }
    let trunc = em_remainder_bound(s, x.to_f64(), params.terms);
    (acc, trunc + 1e-30 * abs * (n.unsigned_abs() as f64 + 4.0))
}

/// Integer-`s` route: group residues by character value, sum each group in double-double.
fn character_hurwitz_sum_integer(n: i32, chi: &DirichletCharacter) -> Bounded {
    let q = chi.modulus();
    let ex = chi.unit_group().exponent();
    let mut groups = vec![Dd::ZERO; ex as usize];
    let mut err = 0.0;
    for a in 1..=q {
        if let crate::characters::CharacterValue::Root { num, den } = chi.evaluate(a as i64) {
            let (z, e) = hurwitz_integer_dd(n, a, q);
            let j = (num * (ex / den)) as usize;
            groups[j] = groups[j].add(z);
            err += e;
        }
    }
    let mut re = Dd::ZERO;
    let mut im = Dd::ZERO;
    let mut inexact = 0.0;
    for (j, g) in groups.iter().enumerate() {
        if g.hi == 0.0 {
            continue;
        }
        let (c, s_) = match (4 * j as u64 % ex == 0, 4 * j as u64 / ex.max(1)) {
            (true, 0) => (1.0, 0.0),
            (true, 1) => (0.0, 1.0),
            (true, 2) => (-1.0, 0.0),
            (true, _) => (0.0, -1.0),
            _ => {
                inexact += g.hi.abs();
                let t = std::f64::consts::TAU * j as f64 / ex as f64;
                (t.cos(), t.sin())
            }
        };
        re = re.add(g.mul_f64(c));
        im = im.add(g.mul_f64(s_));
    }
    let value = Complex64::new(re.to_f64(), im.to_f64());
    Bounded {
        value,
        error_bound: err + f64::EPSILON * (inexact + value.norm()),
    }
}

/// `S(s) = Σ_a χ(a) ζ(s, a/q)` or its derivative, with error bound.
fn character_hurwitz_sum(s: Complex64, chi: &DirichletCharacter, derivative: bool) -> Result<Bounded> {
    let q = chi.modulus();
    let principal = chi.is_principal();
    if principal && s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("1".into()));
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return invalid("non-finite s");
    }
    if !derivative {
        if let Some(n) = as_small_integer(s) {
            if n != 1 && n.abs() <= 60 {
                return Ok(character_hurwitz_sum_integer(n, chi));
            }
        }
    }
    // Non-principal sums cancel the 1/(s−1) pole, so the regularized form is exact there.
    let regularize = !principal;
    let mut acc = Neumaier::default();
    let mut err = 0.0;
    for a in 1..=q {
        let v = chi.evaluate(a as i64);
        if v.is_zero() {
            continue;
        }
        let x = a as f64 / q as f64;
        let z = em_eval(s, x, adaptive_params(s, x, derivative, regularize, f64::EPSILON), derivative, regularize);
        acc.add(v.to_complex() * z.value);
        err += z.error_bound;
    }
    let total = acc.total();
    Ok(Bounded {
        value: total,
        error_bound: err + 2.0 * f64::EPSILON * acc.abs,
    })
}

/// `L(s, χ) = q^{−s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`.
pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<LValue> {
    let q = chi.modulus() as f64;
    let sum = character_hurwitz_sum(s, chi, false)?;
    let qs = pow_neg(q, s);
    let value = qs * sum.value;
    Ok(LValue {
        s,
        character: chi.clone(),
        value,
        error_bound: qs.norm() * sum.error_bound + 2.0 * f64::EPSILON * value.norm(),
    })
}

/// `L'(s, χ) = −ln q · L(s, χ) + q^{−s} Σ_a χ(a) ∂_s ζ(s, a/q)`.
pub fn l_derivative(s: Complex64, chi: &DirichletCharacter) -> Result<LValue> {
    let q = chi.modulus() as f64;
    let lq = q.ln();
    let sum = character_hurwitz_sum(s, chi, false)?;
    let dsum = character_hurwitz_sum(s, chi, true)?;
    let qs = pow_neg(q, s);
    let value = qs * (dsum.value - sum.value * lq);
    let error_bound =
        qs.norm() * (dsum.error_bound + lq * sum.error_bound) + 4.0 * f64::EPSILON * value.norm();
    Ok(LValue {
        s,
        character: chi.clone(),
        value,
        error_bound,
    })
}

/// `L(s, χ)` at real `s` as a plain complex number.
pub fn l_value(s: f64, chi: &DirichletCharacter) -> Result<Complex64> {
    dirichlet_l(Complex64::new(s, 0.0), chi).map(|v| v.value)
}
