//! Eisenstein series `E_k^{ψ,φ,t}`: basis enumeration, q-expansions, Hecke and diamond operators.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{divisors, gcd};
use crate::characters::{primitive_characters, CharacterValue, DirichletCharacter};
use crate::cyclotomic::Cyclotomic;
use crate::error::{invalid, Error, Result};
use crate::lfunctions::l_at_nonpositive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Standard,
    /// `E₂(z) − t·E₂(tz)`, used for `k = 2`, `ψ = φ = 1`, `t > 1`.
    Weight2Modified,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinLabel {
    pub psi: DirichletCharacter,
    pub phi: DirichletCharacter,
    pub t: u64,
    pub k: u32,
    pub variant: Variant,
}

impl EisensteinLabel {
    pub fn new(psi: DirichletCharacter, phi: DirichletCharacter, t: u64, k: u32) -> Result<Self> {
        if !psi.is_primitive() || !phi.is_primitive() {
            return invalid("ψ and φ must be primitive");
        }
        if t == 0 || k < 1 {
            return invalid("t ≥ 1 and k ≥ 1 required");
        }
        let sign = psi.parity() * phi.parity();
        if sign != if k % 2 == 0 { 1 } else { -1 } {
            return invalid("ψφ(−1) must equal (−1)^k");
        }
        let trivial = psi.modulus() == 1 && phi.modulus() == 1;
        let variant = if k == 2 && trivial {
            if t == 1 {
                return invalid("E_2^{1,1,1} is not modular");
            }
            Variant::Weight2Modified
        } else {
            Variant::Standard
        };
        Ok(EisensteinLabel {
            psi,
            phi,
            t,
            k,
            variant,
        })
    }

    pub fn c_psi(&self) -> u64 {
        self.psi.modulus()
    }

    pub fn c_phi(&self) -> u64 {
        self.phi.modulus()
    }

    /// Whether the form lies on `Γ₁(N)`: `c_ψ·c_φ·t | N`.
    pub fn fits_level(&self, n: u64) -> bool {
        n % (self.c_psi() * self.c_phi() * self.t) == 0
    }

    /// Nebentypus `ψφ` as a character mod `N`.
    pub fn nebentypus(&self, level: u64) -> DirichletCharacter {
        self.psi.multiply(&self.phi).induce(level)
    }

    /// `T_p` eigenvalue `ψ(p) + φ(p)·p^{k−1}` for `p ∤ N`.
    pub fn hecke_eigenvalue(&self, p: u64) -> Cyclotomic {
        let pk = Cyclotomic::from_rational(BigRational::from_integer(
            num_traits::pow(BigInt::from(p), (self.k - 1) as usize),
        ));
        self.psi.evaluate(p as i64).to_cyclotomic() + self.phi.evaluate(p as i64).to_cyclotomic() * pk
    }
}

impl fmt::Display for EisensteinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{}^{{{},{},{}}}", self.k, self.psi, self.phi, self.t)
    }
}

#[derive(Clone, Debug)]
pub enum Group {
    Gamma1,
    /// `Γ₀(N)` with nebentypus χ mod N.
    Gamma0(DirichletCharacter),
}

impl Group {
    pub fn name(&self) -> &'static str {
        match self {
            Group::Gamma1 => "gamma1",
            Group::Gamma0(_) => "gamma0",
        }
    }
}

/// All basis labels of the Eisenstein subspace of weight `k` and level `N`.
///
/// Order: `c_ψ` ascending, ψ in enumeration order, `c_φ` ascending, φ, then `t` ascending.
pub fn enumerate_basis(n: u64, k: u32, group: &Group) -> Result<Vec<EisensteinLabel>> {
    if n == 0 || k < 2 {
        return invalid("need N ≥ 1 and k ≥ 2");
    }
    if let Group::Gamma0(chi) = group {
        if chi.modulus() != n {
            return Err(Error::InvalidArgument(format!(
                "nebentypus has modulus {} but level is {n}",
                chi.modulus()
            )));
        }
    }
    let want_sign = if k % 2 == 0 { 1 } else { -1 };
    let mut out = Vec::new();
    for cpsi in divisors(n) {
        for psi in primitive_characters(cpsi).iter() {
            for cphi in divisors(n / cpsi) {
                for phi in primitive_characters(cphi).iter() {
                    if psi.parity() * phi.parity() != want_sign {
                        continue;
                    }
                    if let Group::Gamma0(chi) = group {
                        if &psi.multiply(phi).induce(n) != chi {
                            continue;
                        }
                    }
                    for t in divisors(n / (cpsi * cphi)) {
                        if k == 2 && cpsi == 1 && cphi == 1 && t == 1 {
                            continue;
                        }
                        out.push(EisensteinLabel::new(psi.clone(), phi.clone(), t, k)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Truncated q-expansion `a(0), …, a(P−1)` with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    pub weight: u32,
    pub level: u64,
    pub coefficients: Vec<Cyclotomic>,
}

impl QExpansion {
    pub fn precision(&self) -> usize {
        self.coefficients.len()
    }

    pub fn add(&self, other: &QExpansion) -> QExpansion {
        let p = self.precision().min(other.precision());
        QExpansion {
            weight: self.weight,
            level: self.level.max(other.level),
            coefficients: (0..p)
                .map(|i| &self.coefficients[i] + &other.coefficients[i])
                .collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> QExpansion {
        QExpansion {
            weight: self.weight,
            level: self.level,
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coefficients.iter().map(|c| c.to_complex()).collect()
    }
}

/// `σ_{k−1}^{ψ,φ}(n) = Σ_{ad=n} ψ(a)·φ(d)·d^{k−1}`, exact.
pub fn sigma_twisted(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, n: u64) -> Cyclotomic {
    assert!(n >= 1);
    let ex = crate::arith::lcm(psi.unit_group().exponent(), phi.unit_group().exponent());
    let mut poly = vec![BigRational::zero(); ex as usize];
    let mut any = false;
    for d in divisors(n) {
        let a = n / d;
        if let CharacterValue::Root { num, den } = psi.evaluate(a as i64).mul(phi.evaluate(d as i64)) {
            let j = (num * (ex / den)) as usize;
            poly[j] += BigRational::from_integer(num_traits::pow(BigInt::from(d), (k - 1) as usize));
            any = true;
        }
    }
    if !any {
        return Cyclotomic::zero();
    }
    Cyclotomic::from_power_coefficients(ex, poly)
}

/// Floating-point twisted divisor sum.
pub fn sigma_twisted_complex(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32, n: u64) -> Complex64 {
    divisors(n)
        .into_iter()
        .map(|d| {
            let v = psi.evaluate((n / d) as i64).mul(phi.evaluate(d as i64));
            v.to_complex() * (d as f64).powi(k as i32 - 1)
        })
        .sum()
}

/// Constant term `δ(ψ)/2 · L(1−k, φ)` of `E_k^{ψ,φ}`.
pub fn constant_term(psi: &DirichletCharacter, phi: &DirichletCharacter, k: u32) -> Cyclotomic {
    if psi.modulus() != 1 {
        return Cyclotomic::zero();
    }
    l_at_nonpositive(phi, k) * Cyclotomic::from_ratio(1, 2)
}

/// Coefficients `a(0..P)` of the label's form, exact.
pub fn q_expansion(label: &EisensteinLabel, precision: usize, level: u64) -> QExpansion {
    let (psi, phi, k, t) = (&label.psi, &label.phi, label.k, label.t);
    let mut coeffs = vec![Cyclotomic::zero(); precision];
    if precision == 0 {
        return QExpansion {
            weight: k,
            level,
            coefficients: coeffs,
        };
    }
    match label.variant {
        Variant::Standard => {
            coeffs[0] = constant_term(psi, phi, k);
            let mut m = t as usize;
            while m < precision {
                coeffs[m] = sigma_twisted(psi, phi, k, (m as u64) / t);
                m += t as usize;
            }
        }
        Variant::Weight2Modified => {
            let e2_0 = constant_term(psi, phi, 2);
            coeffs[0] = &e2_0 * &Cyclotomic::from_integer(1 - t as i64);
            let tt = Cyclotomic::from_integer(t as i64);
            for (m, c) in coeffs.iter_mut().enumerate().skip(1) {
                let mut v = sigma_twisted(psi, phi, 2, m as u64);
                if m as u64 % t == 0 {
                    v = &v - &(&tt * &sigma_twisted(psi, phi, 2, m as u64 / t));
                }
                *c = v;
            }
        }
    }
    QExpansion {
        weight: k,
        level,
        coefficients: coeffs,
    }
}

/// Floating-point coefficients `a(1..=P)` (no constant term), for Dirichlet-series oracles.
pub fn series_coefficients(label: &EisensteinLabel, terms: usize) -> Vec<Complex64> {
    let (psi, phi, k, t) = (&label.psi, &label.phi, label.k, label.t);
    let mut out = vec![Complex64::new(0.0, 0.0); terms + 1];
    // σ(n) for n ≤ terms via a divisor sieve
    let mut sigma = vec![Complex64::new(0.0, 0.0); terms + 1];
    for d in 1..=terms {
        let fd = phi.evaluate_complex(d as i64) * (d as f64).powi(k as i32 - 1);
        if fd.norm() == 0.0 {
            continue;
        }
        let mut a = 1;
        while a * d <= terms {
            let pa = psi.evaluate_complex(a as i64);
            if pa.norm() != 0.0 {
                sigma[a * d] += pa * fd;
            }
            a += 1;
        }
    }
    let t = t as usize;
    match label.variant {
        Variant::Standard => {
            let mut m = t;
            while m <= terms {
                out[m] = sigma[m / t];
                m += t;
            }
        }
        Variant::Weight2Modified => {
            for m in 1..=terms {
                out[m] = sigma[m];
                if m % t == 0 {
                    out[m] -= sigma[m / t] * t as f64;
                }
            }
        }
    }
    out
}

/// Weight-k Hecke operator `T_n` with nebentypus χ:
/// `b(m) = Σ_{d | gcd(m,n)} χ(d)·d^{k−1}·a(mn/d²)`.
pub fn hecke_tn(f: &QExpansion, n: u64, chi: &DirichletCharacter, out_precision: usize) -> Result<QExpansion> {
    if n == 0 {
        return invalid("n must be positive");
    }
    if gcd(n, f.level) != 1 {
        return invalid(format!("n = {n} is not coprime to the level {}", f.level));
    }
    if out_precision > 0 && (out_precision as u64 - 1) * n >= f.precision() as u64 {
        return Err(Error::InsufficientPrecision(format!(
            "T_{n} to precision {out_precision} needs input precision {}",
            (out_precision as u64 - 1) * n + 1
        )));
    }
    let k = f.weight;
    let coeffs = (0..out_precision as u64)
        .map(|m| {
            let g = if m == 0 { n } else { gcd(m, n) };
            divisors(g)
                .into_iter()
                .map(|d| {
                    let c = chi.evaluate(d as i64);
                    if c.is_zero() {
                        return Cyclotomic::zero();
                    }
                    let dk = BigRational::from_integer(num_traits::pow(BigInt::from(d), (k - 1) as usize));
                    let idx = (m * n / (d * d)) as usize;
                    &f.coefficients[idx] * &(c.to_cyclotomic() * Cyclotomic::from_rational(dk))
                })
                .sum()
        })
        .collect();
    Ok(QExpansion {
        weight: k,
        level: f.level,
        coefficients: coeffs,
    })
}

/// Diamond eigenvalue `ψ(n)φ(n)`.
pub fn diamond(label: &EisensteinLabel, n: u64, level: u64) -> Result<CharacterValue> {
    if gcd(n, level) != 1 {
        return invalid(format!("n = {n} is not coprime to the level {level}"));
    }
    Ok(label.psi.evaluate(n as i64).mul(label.phi.evaluate(n as i64)))
}

/// Cusp count of `Γ₁(N)`.
pub fn gamma1_cusp_count(n: u64) -> u64 {
    use crate::arith::totient;
    match n {
        1 => 1,
        2 => 2,
        3 => 2,
        4 => 3,
        _ => divisors(n).iter().map(|&d| totient(d) * totient(n / d)).sum::<u64>() / 2,
    }
}

/// `dim 𝓔_k(Γ₁(N))` from cusp counts: all cusps for even `k`, regular cusps for odd `k`, minus one at `k = 2`.
pub fn gamma1_eisenstein_dimension(n: u64, k: u32) -> u64 {
    let cusps = gamma1_cusp_count(n);
    if k % 2 == 1 {
        return match n {
            1 | 2 => 0,
            4 => 2,
            _ => cusps,
        };
    }
    if k == 2 {
        cusps - 1
    } else {
        cusps
    }
}
