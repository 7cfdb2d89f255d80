//! `M_N = L'(g_N, 0)` for weight-3 newforms, and the determinant of
//! elliptic trilogarithms against Eisenstein–Kronecker values.

use super::newform::NewformSpec;
use crate::elliptic::{divisor_eval, ek_lattice, Divisor, OriginPolicy, PointFn, Tau};
use crate::error::{Error, Result};
use crate::numeric::quad::exp_sinh;
use crate::numeric::{inc_gamma, PrecisionCtx};
use rug::{Complex, Float};

/// Number of coefficients needed so that `Σ_{n>n₀} n² e^{-2πn/√N}` falls
/// below `10^{-(digits+guard)}` (the bound `|a_n| ≤ d(n) n ≤ n²`).
pub fn required_length(level: u32, ctx: &PrecisionCtx) -> usize {
    let c = 2.0 * std::f64::consts::PI / (level as f64).sqrt();
    let target = -ctx.ln_eps() + 10.0;
    let mut n = 1.0f64;
    while c * n - 3.0 * n.ln() < target {
        n += 1.0;
    }
    n as usize + 2
}

fn check_length(f: &NewformSpec, ctx: &PrecisionCtx) -> Result<usize> {
    let need = required_length(f.level, ctx);
    if f.len() < need {
        return Err(Error::Accuracy(format!(
            "level {} needs {need} coefficients at {} digits, {} stored",
            f.level,
            ctx.working_digits(),
            f.len()
        )));
    }
    Ok(need)
}

/// Completed `Λ(s) = (√N/2π)^s Γ(s) L(g, s)` at `s = 0` and `s = 3`,
/// assuming `Λ(s) = ε Λ(3-s)`. With `x_n = 2πn/√N`:
/// `Λ(0) = Σ a_n Γ(0, x_n) + ε N^{3/2} Σ a_n (2πn)^{-3} Γ(3, x_n)`,
/// `Λ(3) = N^{3/2} Σ a_n (2πn)^{-3} Γ(3, x_n) + ε Σ a_n Γ(0, x_n)`.
fn lambda_halves(f: &NewformSpec, eps: i32, ctx: &PrecisionCtx) -> Result<(Float, Float)> {
    let need = check_length(f, ctx)?;
    let w = ctx.widened(5);
    let prec = w.prec();
    let two_pi = w.pi() * 2u32;
    let sqrt_n = Float::with_val(prec, f.level).sqrt();
    let n32 = Float::with_val(prec, &sqrt_n * f.level);
    let s0 = Complex::with_val(prec, 0);
    let s3 = Complex::with_val(prec, 3);
    let mut sum0 = Float::with_val(prec, 0);
    let mut sum3 = Float::with_val(prec, 0);
    for n in 1..need.min(f.len()) {
        let a = f.a(n);
        if a == 0 {
            continue;
        }
        let tpn = Float::with_val(prec, &two_pi * n as u32);
        let x = Float::with_val(prec, &tpn / &sqrt_n);
        let g0 = inc_gamma(&s0, &x, &w)?;
        let g3 = inc_gamma(&s3, &x, &w)?;
        sum0 += Float::with_val(prec, g0.real()) * a;
        let tpn3 = Float::with_val(prec, &tpn * &tpn) * &tpn;
        sum3 += Float::with_val(prec, g3.real()) * a / tpn3;
    }
    let e = Float::with_val(prec, eps);
    let l0 = Float::with_val(prec, &sum0 + Float::with_val(prec, &n32 * &sum3) * &e);
    let l3 = Float::with_val(prec, &n32 * &sum3) + Float::with_val(prec, &sum0 * &e);
    Ok((Float::with_val(ctx.prec(), l0), Float::with_val(ctx.prec(), l3)))
}

/// `L(g, 3)` by the incomplete-gamma smoothed sum with sign `ε = +1`.
pub fn l_value_3(f: &NewformSpec, ctx: &PrecisionCtx) -> Result<Float> {
    let (_, l3) = lambda_halves(f, 1, ctx)?;
    let w = ctx.widened(5);
    let c = Float::with_val(w.prec(), f.level).sqrt() / (w.pi() * 2u32);
    let c3 = Float::with_val(w.prec(), c.clone() * &c) * &c;
    Ok(Float::with_val(ctx.prec(), l3 / (c3 * 2u32)))
}

/// `M_N = L'(g_N, 0) = ε N^{3/2} L(g_N, 3)/(4π³)` with `ε = +1`.
///
/// `L(g, 0) = 0` because `Γ(s)` has a pole at `0` while `Λ(0) = εΛ(3)` is
/// finite, so `L'(g, 0) = Λ(0) = εΛ(3)`, and `Λ(3) = 2(√N/2π)³ L(g, 3)`.
#[allow(non_snake_case)]
pub fn M_value(f: &NewformSpec, ctx: &PrecisionCtx) -> Result<Float> {
    let l3 = l_value_3(f, ctx)?;
    let w = ctx.widened(5);
    let n32 = Float::with_val(w.prec(), f.level).sqrt() * f.level;
    let pi3 = Float::with_val(w.prec(), w.pi().square_ref()) * w.pi();
    Ok(Float::with_val(ctx.prec(), n32 * l3 / (pi3 * 4u32)))
}

/// `g(iy) = Σ a_n e^{-2πny}`, truncated where the remaining terms fall
/// below the working tolerance.
pub fn eval_imaginary(f: &NewformSpec, y: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec();
    let q = Float::with_val(prec, -(ctx.pi() * 2u32) * y).exp();
    let lq = -2.0 * std::f64::consts::PI * y.to_f64();
    let target = ctx.ln_eps() - 10.0;
    let mut acc = Float::with_val(prec, 0);
    let mut qn = Float::with_val(prec, 1);
    for n in 1..f.len() {
        qn *= &q;
        let a = f.a(n);
        if a != 0 {
            acc += Float::with_val(prec, &qn * a);
        }
        if (n as f64) * lq + 2.0 * (n as f64).ln() < target {
            return Ok(acc);
        }
    }
    Err(Error::Accuracy(format!("q-series of level {} truncated at y = {}", f.level, y.to_f64())))
}

/// `g(i/(Nt)) / (N^{3/2} t³ g(it))` at `t = 1.1/√N`; equals the
/// Atkin–Lehner sign `ε` when `g` is a newform of level `N` with real
/// coefficients.
pub fn fricke_ratio(f: &NewformSpec, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec();
    let n = Float::with_val(prec, f.level);
    let t = Float::with_val(prec, 1.1f64) / n.clone().sqrt();
    let y = Float::with_val(prec, &n * &t).recip();
    let lhs = eval_imaginary(f, &y, ctx)?;
    let t3 = Float::with_val(prec, t.clone() * &t) * &t;
    let rhs = eval_imaginary(f, &t, ctx)? * t3 * n.clone().sqrt() * &n;
    Ok(lhs / rhs)
}

/// Independent evaluation of `M_N` by quadrature of the Mellin integral
/// split at `y₀ = 1/√N`:
/// `Λ(0) = ∫_{y₀}^∞ g(iy) (y^{-1} + ε N^{3/2} y²) dy`, `ε = +1`.
#[allow(non_snake_case)]
pub fn M_value_quadrature(f: &NewformSpec, ctx: &PrecisionCtx) -> Result<Float> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let n32 = Float::with_val(prec, f.level).sqrt() * f.level;
    let y0 = Float::with_val(prec, f.level).sqrt().recip();
    let r = exp_sinh(
        |y, _| {
            let g = eval_imaginary(f, y, &w)?;
            let y2 = Float::with_val(prec, y.square_ref());
            let k = Float::with_val(prec, y.recip_ref()) + y2 * &n32;
            Ok(g * k)
        },
        &y0,
        &w,
        14,
    )?;
    Ok(Float::with_val(ctx.prec(), r.value))
}

/// Both sides of the identity
/// `det[ℒ_{3,1}(ξ_i), ℒ_{3,2}(ξ_i)] = -(2 Im(τ)⁶/π²) det[Re K_{1,3}(ξ_i), K_{2,2}(ξ_i)]`.
#[derive(Clone, Debug)]
pub struct Sym2Det {
    /// Left side from the `q`-series trilogarithms, full precision.
    pub trilog_det: Float,
    /// Right side from truncated lattice sums (double precision).
    pub lattice_det: f64,
    /// Bound on the truncation error of `lattice_det`.
    pub lattice_tail: f64,
}

/// Determinant of `ℒ_{3,1}, ℒ_{3,2}` on two degree-zero divisors with the
/// Eisenstein–Kronecker cross-check. `ℒ_{3,2}` uses `J_3(1) := 0` at the
/// origin.
pub fn sym2_det_check(tau: &Tau, xi1: &Divisor, xi2: &Divisor, cutoff: u32, ctx: &PrecisionCtx) -> Result<Sym2Det> {
    if xi1.degree() != 0 || xi2.degree() != 0 {
        return Err(Error::Domain("divisors must have degree zero".into()));
    }
    let l32 = PointFn::L32(OriginPolicy::Limit);
    let a1 = divisor_eval(PointFn::L31, tau, xi1, ctx)?;
    let b1 = divisor_eval(l32, tau, xi1, ctx)?;
    let a2 = divisor_eval(PointFn::L31, tau, xi2, ctx)?;
    let b2 = divisor_eval(l32, tau, xi2, ctx)?;
    let trilog_det = Float::with_val(ctx.prec(), &a1 * &b2) - Float::with_val(ctx.prec(), &a2 * &b1);

    let ek = |d: &Divisor| -> Result<(f64, f64, f64)> {
        let (mut k13, mut k22, mut tail) = (0.0, 0.0, 0.0);
        for (p, c) in d.terms() {
            let s1 = ek_lattice(1, 3, tau, p, cutoff, ctx)?;
            let s2 = ek_lattice(2, 2, tau, p, cutoff, ctx)?;
            k13 += c as f64 * s1.value.real().to_f64();
            k22 += c as f64 * s2.value.real().to_f64();
            tail += (c.abs() as f64) * (s1.tail_estimate + s2.tail_estimate);
        }
        Ok((k13, k22, tail))
    };
    let (r1, k1, t1) = ek(xi1)?;
    let (r2, k2, t2) = ek(xi2)?;
    let y = tau.im().to_f64();
    let scale = -2.0 * y.powi(6) / std::f64::consts::PI.powi(2);
    let det = r1 * k2 - r2 * k1;
    let tail = scale.abs() * (t1 * (k2.abs() + r2.abs() + t2) + t2 * (k1.abs() + r1.abs()));
    Ok(Sym2Det { trilog_det, lattice_det: scale * det, lattice_tail: tail })
}

#[cfg(test)]
mod tests {
    use super::super::newform::{newform_coeffs, BUILTIN_LEVELS};
    use super::*;

    #[test]
    fn m_values_match_quadrature_and_fricke() {
        let ctx = PrecisionCtx::new(30).unwrap();
        for lvl in BUILTIN_LEVELS {
            let f = newform_coeffs(lvl, 2000).unwrap();
            let ratio = fricke_ratio(&f, &ctx).unwrap();
            assert!((ratio.to_f64() - 1.0).abs() < 1e-25, "level {lvl}: Fricke ratio {ratio}");
            let m = M_value(&f, &ctx).unwrap();
            let o = M_value_quadrature(&f, &ctx).unwrap();
            assert!(m > 0);
            assert!(Float::with_val(ctx.prec(), &m - &o).abs() < 1e-25, "level {lvl}: {m} vs {o}");
        }
    }

    #[test]
    fn short_expansion_is_an_accuracy_error() {
        let ctx = PrecisionCtx::new(30).unwrap();
        let f = newform_coeffs(16, 20).unwrap();
        let e = M_value(&f, &ctx).unwrap_err();
        assert!(matches!(&e, Error::Accuracy(m) if m.contains("needs")), "{e}");
    }
}
