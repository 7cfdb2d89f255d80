//! Truncated Eisenstein–Kronecker lattice sums in double precision.
//!
//! The sums converge only polynomially, so they serve as a moderate
//! accuracy oracle for the q-series. Terms are added over square shells
//! `max(|m|,|n|) = k` for `k = 1, …, K`; shells are evaluated in parallel
//! and reduced in ascending order, so results are deterministic.

use super::torsion::{Tau, TorsionCoord};
use crate::error::{Error, Result};
use crate::numeric::PrecisionCtx;
use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};
use std::f64::consts::PI;

/// Default square-shell cutoff.
pub const DEFAULT_CUTOFF: u32 = 500;

/// Sum of `f(m, n)` over one shell `max(|m|,|n|) = k` in a fixed order.
fn shell<T, F>(k: i64, f: &F) -> T
where
    T: Default + std::ops::AddAssign,
    F: Fn(i64, i64) -> T,
{
    let mut s = T::default();
    for m in -k..=k {
        s += f(m, -k);
        s += f(m, k);
    }
    for n in (-k + 1)..k {
        s += f(-k, n);
        s += f(k, n);
    }
    s
}

/// `Σ'_{max(|m|,|n|) ≤ K} f(m, n)`, excluding `(0, 0)`, reduced shell by
/// shell in ascending order.
pub fn shell_sum<T, F>(cutoff: u32, f: F) -> T
where
    T: Default + std::ops::AddAssign + Send,
    F: Fn(i64, i64) -> T + Sync,
{
    let parts: Vec<T> = (1..=cutoff as i64).into_par_iter().map(|k| shell(k, &f)).collect();
    let mut acc = T::default();
    for p in parts {
        acc += p;
    }
    acc
}

fn seg_dist(a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = (-(a.re * d.re + a.im * d.im) / d.norm_sqr()).clamp(0.0, 1.0);
    (a + d * t).norm()
}

/// `c = min |sτ + t|` over the boundary `max(|s|,|t|) = 1`, so that
/// `|mτ+n| ≥ c·max(|m|,|n|)`.
pub fn shell_modulus(tau: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    [
        seg_dist(-tau - one, tau - one),
        seg_dist(-tau + one, tau + one),
        seg_dist(-tau - one, -tau + one),
        seg_dist(tau - one, tau + one),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Bound `Σ_{k>K} 8k (ck)^{-p} ≤ 8 c^{-p} K^{2-p}/(p-2)` on the absolute tail
/// of a sum whose terms are at most `|mτ+n|^{-p}`.
pub fn tail_bound(tau: Complex64, p: u32, cutoff: u32) -> f64 {
    let c = shell_modulus(tau);
    let p = p as f64;
    8.0 * c.powf(-p) * (cutoff as f64).powf(2.0 - p) / (p - 2.0)
}

/// A truncated lattice sum with its tail estimate.
#[derive(Clone, Debug)]
pub struct LatticeSum {
    /// Truncated sum.
    pub value: Complex,
    /// Estimated absolute truncation error.
    pub tail_estimate: f64,
    /// Shell cutoff used.
    pub cutoff: u32,
}

fn tau_f64(tau: &Tau) -> Complex64 {
    Complex64::new(tau.value.real().to_f64(), tau.value.imag().to_f64())
}

fn coords_f64(p: &TorsionCoord) -> (f64, f64) {
    (p.xi.to_f64(), p.eta.to_f64())
}

/// Character `e^{2πi(nξ - mη)}` with the phase reduced mod 1 before scaling.
fn character(m: i64, n: i64, xi: f64, eta: f64) -> Complex64 {
    let ph = (n as f64 * xi - m as f64 * eta).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * ph)
}

/// `K_{a,b}(τ;u) = Σ' e^{2πi(nξ-mη)} / ((mτ+n)^a (mτ̄+n)^b)` at real
/// coordinates, truncated at `cutoff` shells.
pub fn ek_lattice_at(a: u32, b: u32, tau: &Tau, xi: f64, eta: f64, cutoff: u32, ctx: &PrecisionCtx) -> Result<LatticeSum> {
    if a + b < 4 {
        return Err(Error::Unsupported(format!("K_{{{a},{b}}} is only conditionally convergent")));
    }
    if cutoff < 10 {
        return Err(Error::Domain("lattice cutoff must be at least 10".into()));
    }
    let t = tau_f64(tau);
    let tb = t.conj();
    let v = shell_sum(cutoff, |m, n| {
        let z = t * m as f64 + n as f64;
        let zb = tb * m as f64 + n as f64;
        character(m, n, xi, eta) / (z.powi(a as i32) * zb.powi(b as i32))
    });
    Ok(LatticeSum {
        value: Complex::with_val(ctx.prec(), (v.re, v.im)),
        tail_estimate: tail_bound(t, a + b, cutoff),
        cutoff,
    })
}

/// `K_{a,b}(τ;u)` at a point of `ℂ/(ℤ+ℤτ)`.
pub fn ek_lattice(a: u32, b: u32, tau: &Tau, p: &TorsionCoord, cutoff: u32, ctx: &PrecisionCtx) -> Result<LatticeSum> {
    let (xi, eta) = coords_f64(p);
    ek_lattice_at(a, b, tau, xi, eta, cutoff, ctx)
}

/// The two kernel sums behind the lattice forms of `ℒ^E_{3,1}` and `ℒ^E_{3,2}`:
/// `A = Σ' χ/|mτ+n|⁴` and `B = Re Σ' χ (mτ+n)²/|mτ+n|⁶`, `χ = e^{2πi(nξ-mη)}`.
#[derive(Clone, Debug)]
pub struct KernelSums {
    /// `A`.
    pub a: Float,
    /// `B`.
    pub b: Float,
    /// Tail estimate shared by `A` and `B`.
    pub tail_estimate: f64,
    /// `Im τ`.
    pub y: Float,
    /// `log|q|`.
    pub log_abs_q: Float,
}

impl KernelSums {
    /// `(2 Im(τ)³/3π)(A - B)`.
    pub fn l31(&self, ctx: &PrecisionCtx) -> Float {
        let y3 = Float::with_val(ctx.prec(), self.y.clone() * &self.y * &self.y);
        y3 * 2u32 / (ctx.pi() * 3u32) * Float::with_val(ctx.prec(), &self.a - &self.b)
    }

    /// `(Im(τ)³/π)(A + 2B) + log³|q|/120`.
    pub fn l32(&self, ctx: &PrecisionCtx) -> Float {
        let prec = ctx.prec();
        let y3 = Float::with_val(prec, self.y.clone() * &self.y * &self.y);
        let lq3 = Float::with_val(prec, self.log_abs_q.clone() * &self.log_abs_q * &self.log_abs_q) / 120u32;
        y3 / ctx.pi() * (Float::with_val(prec, &self.b * 2u32) + &self.a) + lq3
    }

    /// Error estimate of [`Self::l31`].
    pub fn l31_tail(&self) -> f64 {
        let y = self.y.to_f64();
        2.0 * y.powi(3) / (3.0 * PI) * 2.0 * self.tail_estimate
    }

    /// Error estimate of [`Self::l32`].
    pub fn l32_tail(&self) -> f64 {
        let y = self.y.to_f64();
        y.powi(3) / PI * 3.0 * self.tail_estimate
    }
}

/// Kernel sums at real coordinates.
pub fn kernel_sums_at(tau: &Tau, xi: f64, eta: f64, cutoff: u32, ctx: &PrecisionCtx) -> Result<KernelSums> {
    if cutoff < 10 {
        return Err(Error::Domain("lattice cutoff must be at least 10".into()));
    }
    let t = tau_f64(tau);
    let (sa, sb) = shell_sum(cutoff, |m, n| {
        let z = t * m as f64 + n as f64;
        let r2 = z.norm_sqr();
        let ch = character(m, n, xi, eta);
        let a = ch / (r2 * r2);
        let b = ch * z * z / (r2 * r2 * r2);
        Pair(a, b)
    })
    .into();
    let prec = ctx.prec();
    Ok(KernelSums {
        a: Float::with_val(prec, sa.re),
        b: Float::with_val(prec, sb.re),
        tail_estimate: tail_bound(t, 4, cutoff),
        y: tau.im(),
        log_abs_q: tau.log_abs_q(ctx),
    })
}

/// Kernel sums at a point of `ℂ/(ℤ+ℤτ)`.
pub fn kernel_sums(tau: &Tau, p: &TorsionCoord, cutoff: u32, ctx: &PrecisionCtx) -> Result<KernelSums> {
    let (xi, eta) = coords_f64(p);
    kernel_sums_at(tau, xi, eta, cutoff, ctx)
}

#[derive(Default)]
struct Pair(Complex64, Complex64);

impl std::ops::AddAssign for Pair {
    fn add_assign(&mut self, o: Self) {
        self.0 += o.0;
        self.1 += o.1;
    }
}

impl From<Pair> for (Complex64, Complex64) {
    fn from(p: Pair) -> Self {
        (p.0, p.1)
    }
}
