//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element is stored as a polynomial in `ζ_n` of degree `< φ(n)` with
//! rational coefficients, reduced modulo the cyclotomic polynomial `Φ_n`.
//! That representation is canonical for a fixed `n`, so equality and
//! zero-testing are exact. Binary operations first lift both operands to
//! `Q(ζ_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, lcm, totient};

type Poly = Vec<BigRational>;

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of `Φ_n`, lowest degree first. The result is monic of degree `φ(n)`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = div_monic_exact(&num, &phi_d);
    }
    debug_assert_eq!(num.len() as u64, totient(n) + 1);
    let arc = Arc::new(num);
    cyclotomic_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone())
        .clone()
}

fn div_monic_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// Reduce a polynomial in `ζ_n` modulo `Φ_n`, returning exactly `φ(n)` coefficients.
fn reduce(mut poly: Poly, n: u64) -> Poly {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if poly.len() < deg {
        poly.resize(deg, BigRational::zero());
        return poly;
    }
    for i in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[i], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        let shift = i - deg;
        for (j, pj) in phi.iter().take(deg).enumerate() {
            if !pj.is_zero() {
                poly[shift + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
    }
    poly.truncate(deg);
    poly
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Poly,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `exp(2πi·num/den)`.
    pub fn root_of_unity(num: u64, den: u64) -> Self {
        assert!(den >= 1);
        let g = crate::arith::gcd(num % den, den);
        let (num, den) = if g == 0 { (0, 1) } else { ((num % den) / g, den / g) };
        let mut poly = vec![BigRational::zero(); num as usize + 1];
        poly[num as usize] = BigRational::one();
        Cyclotomic {
            order: den,
            coeffs: reduce(poly, den),
        }
        .simplified()
    }

    /// `Σ_j poly[j]·ζ_n^j` for an arbitrary-length coefficient list.
    pub fn from_power_coefficients(n: u64, poly: Vec<BigRational>) -> Self {
        assert!(n >= 1);
        let poly = if poly.is_empty() {
            vec![BigRational::zero()]
        } else {
            poly
        };
        Cyclotomic {
            order: n,
            coeffs: reduce(poly, n),
        }
        .simplified()
    }

    /// The field order `n` of the current representation.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|q| q.is_one()).unwrap_or(false)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let s = self.clone().simplified();
        if s.order == 1 {
            Some(s.coeffs[0].clone())
        } else {
            None
        }
    }

    fn simplified(mut self) -> Self {
        if self.order > 1 && self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            let c0 = std::mem::replace(&mut self.coeffs[0], BigRational::zero());
            return Cyclotomic::from_rational(c0);
        }
        self
    }

    /// Re-express the element in `Q(ζ_m)` for a multiple `m` of the current order.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Cyclotomic {
            order: m,
            coeffs: reduce(poly, m),
        }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.order, b.order);
        (a.lift(m), b.lift(m))
    }

    /// Complex conjugate: `ζ ↦ ζ⁻¹`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        if n == 1 {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(n - i) % n] += c;
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: reduce(poly, self.order),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        let modulus: Poly = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = poly_inverse_mod(&self.coeffs, &modulus)?;
        Some(
            Cyclotomic {
                order: self.order,
                coeffs: reduce(inv, self.order),
            }
            .simplified(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = std::f64::consts::TAU * i as f64 / n;
                Complex64::from_polar(rational_to_f64(c), theta)
            })
            .sum()
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large numerator/denominator: scale by bit length.
            let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let (n, d) = if shift > 0 {
                (q.numer() >> shift as usize, q.denom() >> shift as usize)
            } else {
                (q.numer().clone(), q.denom().clone())
            };
            n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
        }
    }
}

fn trim(p: &mut Poly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        q[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    (q, rem)
}

/// Inverse of `a` modulo `m` in `Q[x]` by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Poly> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; it must be a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclotomic::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "{}*z{}", a, self.order)?,
                _ => write!(f, "{}*z{}^{}", a, self.order, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a.simplified()
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::unify(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a.simplified()
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            let c = &self.coeffs[0];
            return Cyclotomic {
                order: rhs.order,
                coeffs: rhs.coeffs.iter().map(|x| x * c).collect(),
            }
            .simplified();
        }
        if rhs.order == 1 {
            return rhs * self;
        }
        let (a, b) = Cyclotomic::unify(self, rhs);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Cyclotomic {
            order: a.order,
            coeffs: reduce(prod, a.order),
        }
        .simplified()
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        let inv = rhs.inverse().expect("division by zero in cyclotomic field");
        self * &inv
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), int(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), int(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), int(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), int(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(105).len(), 49);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=30u64 {
            let s: Cyclotomic = (0..n).map(|a| Cyclotomic::root_of_unity(a, n)).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn lifting_preserves_value() {
        let i = Cyclotomic::root_of_unity(1, 4);
        let i12 = i.lift(12);
        assert_eq!(i, i12);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        let w = Cyclotomic::root_of_unity(1, 3);
        let prod = &i * &w;
        assert_eq!(prod, Cyclotomic::root_of_unity(7, 12));
    }

    #[test]
    fn inverse_and_conjugate() {
        let z = Cyclotomic::root_of_unity(2, 7);
        let x = &(&z + &Cyclotomic::from_integer(3)) * &Cyclotomic::from_ratio(1, 5);
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
        assert_eq!(z.conj(), Cyclotomic::root_of_unity(5, 7));
        let norm = &x * &x.conj();
        let c = norm.to_complex();
        assert!(c.im.abs() < 1e-14);
        assert!((c.re - x.to_complex().norm_sqr()).abs() < 1e-14);
    }

    #[test]
    fn to_complex_matches_polar() {
        let z = Cyclotomic::root_of_unity(5, 24);
        let c = z.to_complex();
        let want = Complex64::from_polar(1.0, std::f64::consts::TAU * 5.0 / 24.0);
        assert!((c - want).norm() < 1e-14);
        assert!(Cyclotomic::root_of_unity(0, 9).is_one());
    }
}
