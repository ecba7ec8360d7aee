//! Field abstraction shared by the floating-point and exact evaluation paths.
//!
//! The Rankin local polynomials and matrix entries are written once over
//! [`Scalar`]; instantiating with [`Complex64`] gives the production numeric
//! route at arbitrary complex `s`, instantiating with [`Cyclotomic`] gives the
//! exact route at integer `s`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::characters::CharacterValue;
use crate::cyclotomic::Cyclotomic;

pub trait Scalar: Clone + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_char(v: CharacterValue) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
    fn conj(&self) -> Self;
    /// Exact zero test for exact scalars; bitwise-zero test for floats.
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_char(v: CharacterValue) -> Self {
        v.to_complex()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn pow(&self, e: u32) -> Self {
        self.powi(e as i32)
    }
}

impl Scalar for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn from_i64(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
    fn from_char(v: CharacterValue) -> Self {
        v.to_cyclotomic()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn conj(&self) -> Self {
        Cyclotomic::conj(self)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn to_complex(&self) -> Complex64 {
        Cyclotomic::to_complex(self)
    }
    fn pow(&self, e: u32) -> Self {
        Cyclotomic::pow(self, e)
    }
}

/// A point `s` at which Dirichlet-series factors `n^{-s}` can be formed in a given scalar type.
pub trait EvalPoint: Clone + Debug + Send + Sync {
    type S: Scalar;
    /// `base^{-s}`.
    fn pow_neg(&self, base: u64) -> Self::S;
}

impl EvalPoint for Complex64 {
    type S = Complex64;
    fn pow_neg(&self, base: u64) -> Complex64 {
        if base == 1 {
            return Complex64::new(1.0, 0.0);
        }
        (-*self * (base as f64).ln()).exp()
    }
}

/// An integer point `s`, evaluated exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerPoint(pub i64);

impl EvalPoint for IntegerPoint {
    type S = Cyclotomic;
    fn pow_neg(&self, base: u64) -> Cyclotomic {
        let b = BigInt::from(base);
        let e = self.0;
        let q = if e >= 0 {
            BigRational::new(BigInt::from(1), num_traits::pow(b, e as usize))
        } else {
            BigRational::from_integer(num_traits::pow(b, (-e) as usize))
        };
        Cyclotomic::from_rational(q)
    }
}
