//! Level-1 renormalized integral of `y^k|E_k|²` over the truncated fundamental
//! domain, compared against the residue formula.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::gcd;
use crate::characters::DirichletCharacter;
use crate::cyclotomic::rational_to_f64;
use crate::error::{invalid, Error, Result};
use crate::gram::{residue_r, scale};
use crate::lfunctions::{l_at_nonpositive, l_value};

/// Midpoint grid on `{|z| ≥ 1, |x| ≤ 1/2, y < T}`: uniform in `x`, uniform in `ln y` per column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalDomainGrid {
    pub height: f64,
    pub nx: usize,
    pub ny: usize,
}

impl FundamentalDomainGrid {
    pub fn new(height: f64, nx: usize, ny: usize) -> Result<Self> {
        if height < 1.0 || nx == 0 || ny == 0 {
            return invalid("need T ≥ 1 and a nonempty grid");
        }
        Ok(FundamentalDomainGrid { height, nx, ny })
    }

    fn column(&self, i: usize) -> (f64, f64, f64) {
        let dx = 1.0 / self.nx as f64;
        let x = -0.5 + (i as f64 + 0.5) * dx;
        let u0 = (1.0 - x * x).sqrt().ln();
        let du = (self.height.ln() - u0) / self.ny as f64;
        (x, u0, du)
    }

    /// Points `(x, y)` with `dμ = dx dy/y²` weights.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let dx = 1.0 / self.nx as f64;
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for i in 0..self.nx {
            let (x, u0, du) = self.column(i);
            for j in 0..self.ny {
                let y = (u0 + (j as f64 + 0.5) * du).exp();
                out.push((x, y, dx * du / y));
            }
        }
        out
    }

    /// Deterministic sum of `f(x, y)·w` over the grid.
    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64 + Sync) -> f64 {
        let dx = 1.0 / self.nx as f64;
        let cols: Vec<f64> = (0..self.nx)
            .into_par_iter()
            .map(|i| {
                let (x, u0, du) = self.column(i);
                let mut acc = 0.0;
                for j in 0..self.ny {
                    let y = (u0 + (j as f64 + 0.5) * du).exp();
                    acc += f(x, y) / y;
                }
                acc * du * dx
            })
            .collect();
        cols.iter().sum()
    }
}

/// `E(z,s) = Σ y^s/|cz+d|^{2s}` over coprime `(c,d)` modulo sign with `max(|c|,|d|) ≤ cutoff`.
#[derive(Clone, Copy, Debug)]
pub struct LatticeSum {
    pub value: f64,
    /// `value − y^s`, summed separately to keep the cusp term out of the cancellation.
    pub non_constant: f64,
    pub error_bound: f64,
}

pub fn weight0_eisenstein(z: Complex64, s: f64, cutoff: i64) -> Result<LatticeSum> {
    if s <= 1.0 {
        return Err(Error::Divergent(format!("E(z,s) needs s > 1, got {s}")));
    }
    if z.im <= 0.0 || cutoff < 1 {
        return invalid("need Im z > 0 and cutoff ≥ 1");
    }
    let (x, y) = (z.re, z.im);
    let ys = y.powf(s);
    let mut rest = 0.0;
    for c in 1..=cutoff {
        let cx = c as f64 * x;
        let cy2 = (c as f64 * y).powi(2);
        for d in -cutoff..=cutoff {
            if gcd(c as u64, d.unsigned_abs()) != 1 {
                continue;
            }
            let r = (cx + d as f64).powi(2) + cy2;
            rest += ys * r.powf(-s);
        }
    }
    // |cz+d|² ≥ λ(c²+d²), λ the small eigenvalue of [[|z|², x], [x, 1]]; 4R pairs at sup-radius R
    let n2 = z.norm_sqr();
    let lambda = ((n2 + 1.0) - ((n2 - 1.0).powi(2) + 4.0 * x * x).sqrt()) / 2.0;
    let cf = cutoff as f64;
    let bound = 4.0 * ys * lambda.powf(-s) * cf.powf(2.0 - 2.0 * s) / (2.0 * s - 2.0);
    Ok(LatticeSum {
        value: ys + rest,
        non_constant: rest,
        error_bound: bound,
    })
}

/// `φ(s) = √π Γ(s−½) ζ(2s−1) / (Γ(s) ζ(2s))`, the `y^{1−s}` coefficient of `E(z,s)`.
pub fn scattering(s: u32) -> Result<f64> {
    let one = DirichletCharacter::principal(1);
    let g_half: f64 = PI.sqrt() * (1..s).map(|j| j as f64 - 0.5).product::<f64>();
    let g: f64 = (1..s).map(|j| j as f64).product();
    Ok(PI.sqrt() * g_half * l_value(2.0 * s as f64 - 1.0, &one)?.re / (g * l_value(2.0 * s as f64, &one)?.re))
}

/// Level-1 `E_k = ζ(1−k)/2 + Σ σ_{k−1}(n) qⁿ`.
#[derive(Clone, Debug)]
pub struct LevelOneEisenstein {
    pub k: u32,
    pub a0: f64,
    pub coefficients: Vec<f64>,
}

impl LevelOneEisenstein {
    /// Enough terms that the tail is below `1e−16` relative for `y ≥ y_min`.
    pub fn new(k: u32, y_min: f64) -> Result<Self> {
        if k < 4 || k % 2 == 1 {
            return invalid("level 1 needs even k ≥ 4");
        }
        let r = (-2.0 * PI * y_min).exp();
        let mut p = 1usize;
        while (p as f64).powi(k as i32) * r.powi(p as i32) > 1e-18 {
            p += 1;
            if p > 10_000 {
                return Err(Error::InsufficientPrecision(format!("y_min = {y_min} too small")));
            }
        }
        let one = DirichletCharacter::principal(1);
        let a0 = rational_to_f64(&l_at_nonpositive(&one, k).as_rational().expect("rational")) / 2.0;
        let mut coefficients = vec![0.0; p + 1];
        for d in 1..=p {
            let dk = (d as f64).powi(k as i32 - 1);
            for m in (d..=p).step_by(d) {
                coefficients[m] += dk;
            }
        }
        Ok(LevelOneEisenstein { k, a0, coefficients })
    }

    /// `E_k(z) − a0`.
    pub fn non_constant(&self, x: f64, y: f64) -> Complex64 {
        let q = Complex64::from_polar((-2.0 * PI * y).exp(), 2.0 * PI * x);
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coefficients.iter().skip(1).rev() {
            acc = (acc + c) * q;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenormForm {
    /// `∫_{F_T} y^k|E_k|² dμ − a0²T^{k−1}/(k−1)`
    Truncated,
    /// `∫_F (y^k|E_k|² − a0²E(z,k)) dμ`
    LatticeSubtracted { cutoff: i64 },
}

#[derive(Clone, Copy, Debug)]
pub struct RenormResult {
    pub integral: f64,
    pub residue_reference: f64,
    pub abs_error: f64,
}

/// `(π/3)(4π)^{−k}(k−1)!·res_{s=k}[ζ(s)ζ(s−k+1)²ζ(s−2k+2)/ζ(2s−2k+2)]`.
pub fn residue_reference(k: u32) -> Result<f64> {
    let one = DirichletCharacter::principal(1);
    Ok(scale(k) * residue_r(&one, &one, k)?.r.re)
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// `y^k|E_k|² − a0²E(z,k)` at one point, with the lattice-sum error bound scaled by `a0²`.
pub fn subtracted_integrand(k: u32, x: f64, y: f64, cutoff: i64) -> Result<(f64, f64)> {
    let e = LevelOneEisenstein::new(k, y.min(3f64.sqrt() / 2.0))?;
    let a0 = e.a0;
    let g = e.non_constant(x, y);
    let ls = weight0_eisenstein(Complex64::new(x, y), k as f64, cutoff)?;
    let v = y.powi(k as i32) * (2.0 * a0 * g.re + g.norm_sqr()) - a0 * a0 * ls.non_constant;
    Ok((v, a0 * a0 * ls.error_bound))
}

pub fn renormalized_norm(k: u32, grid: &FundamentalDomainGrid, form: RenormForm) -> Result<RenormResult> {
    if grid.height < 2.0 {
        return invalid("height T must be at least 2");
    }
    let e = LevelOneEisenstein::new(k, 3f64.sqrt() / 2.0)?;
    let a0 = e.a0;
    let kf = k as f64;
    // y^k(|E|² − a0²) = y^k(2a0 Re g + |g|²) with g = E − a0
    let excess = |x: f64, y: f64| {
        let g = e.non_constant(x, y);
        y.powi(k as i32) * (2.0 * a0 * g.re + g.norm_sqr())
    };
    let integral = match form {
        RenormForm::Truncated => {
            // ∫_{F_T} a0² y^{k−2} dx dy = a0²(T^{k−1} − ∫(1−x²)^{(k−1)/2}dx)/(k−1)
            let bottom = simpson(|x| (1.0 - x * x).powf((kf - 1.0) / 2.0), -0.5, 0.5, 4000);
            grid.integrate(excess) - a0 * a0 * bottom / (kf - 1.0)
        }
        RenormForm::LatticeSubtracted { cutoff } => {
            let err = std::sync::atomic::AtomicU64::new(0);
            let inner = grid.integrate(|x, y| {
                let ls = weight0_eisenstein(Complex64::new(x, y), kf, cutoff).expect("valid point");
                let prev = f64::from_bits(err.load(std::sync::atomic::Ordering::Relaxed));
                if ls.error_bound > prev {
                    err.store(ls.error_bound.to_bits(), std::sync::atomic::Ordering::Relaxed);
                }
                excess(x, y) - a0 * a0 * ls.non_constant
            });
            let worst = f64::from_bits(err.load(std::sync::atomic::Ordering::Relaxed));
            if a0 * a0 * worst * PI / 3.0 > 1e-10 {
                return Err(Error::InsufficientPrecision(format!("lattice cutoff {cutoff} leaves tail {worst:e}")));
            }
            // above T the integrand is −a0²φ(k)y^{1−k} up to exponentially small terms
            inner - a0 * a0 * scattering(k)? * grid.height.powf(-kf) / kf
        }
    };
    let reference = residue_reference(k)?;
    Ok(RenormResult {
        integral,
        residue_reference: reference,
        abs_error: (integral - reference).abs(),
    })
}
