//! Riemann and Hurwitz zeta functions.

use super::{bernoulli_number_f, gamma, PrecisionCtx};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// `ζ(k)` for an integer `k ≠ 1` at precision `prec` (MPFR, cached).
pub fn zeta_int(k: i32, prec: u32) -> Float {
    static CACHE: OnceLock<Mutex<HashMap<(i32, u32), Float>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("zeta cache poisoned").get(&(k, prec)) {
        return v.clone();
    }
    let v = Float::with_val(prec, k).zeta();
    cache.lock().expect("zeta cache poisoned").insert((k, prec), v.clone());
    v
}

fn cpow_neg(base: &Float, s: &Complex, prec: u32) -> Complex {
    // base^{-s} = exp(-s ln base) for base > 0
    let l = Float::with_val(prec, base.ln_ref());
    (-Complex::with_val(prec, s) * l).exp()
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` continued to `s ≠ 1`, for
/// real `a > 0`, by Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: &Complex, a: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    if *a <= 0 {
        return Err(Error::Domain("hurwitz_zeta needs a > 0".into()));
    }
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::Pole("hurwitz_zeta at s = 1".into()));
    }
    let prec = ctx.prec();
    let s_abs = Float::with_val(prec, s.abs_ref()).to_f64();
    let n_terms = (0.45 * ctx.working_digits() as f64 + s_abs).ceil() as u32 + 8;
    let mut acc = Complex::with_val(prec, 0);
    for n in 0..n_terms {
        let b = Float::with_val(prec, a + n);
        acc += cpow_neg(&b, s, prec);
    }
    let na = Float::with_val(prec, a + n_terms);
    let na_ms = cpow_neg(&na, s, prec);
    // (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
    acc += Complex::with_val(prec, &na_ms * &na) / Complex::with_val(prec, s - 1u32);
    acc += Complex::with_val(prec, &na_ms / 2u32);
    let eps = ctx.eps();
    let na2 = Float::with_val(prec, &na * &na);
    // t_k = (s)_{2k-1} (N+a)^{-s-2k+1} / (2k)!
    let mut rising = Complex::with_val(prec, s);
    let mut pw = Complex::with_val(prec, &na_ms / &na);
    let mut fact = Float::with_val(prec, 2);
    let mut prev = f64::INFINITY;
    for k in 1..2000u32 {
        let b = bernoulli_number_f(2 * k, prec);
        let term = Complex::with_val(prec, &rising * &pw) * b / &fact;
        let mag = Float::with_val(prec, term.abs_ref());
        acc += &term;
        if mag < eps {
            return Ok(acc);
        }
        let m = mag.to_f64();
        if m > prev && k > 4 {
            return Err(Error::Accuracy("Euler-Maclaurin series for hurwitz_zeta diverged".into()));
        }
        prev = m;
        let k2 = 2 * k;
        rising *= Complex::with_val(prec, s + (k2 - 1)) * Complex::with_val(prec, s + k2);
        pw /= &na2;
        fact *= (k2 + 1) * (k2 + 2);
    }
    Err(Error::Accuracy("hurwitz_zeta: Euler-Maclaurin tail not reached".into()))
}

/// Riemann zeta `ζ(s)` for complex `s ≠ 1`.
///
/// Uses Borwein's alternating-series acceleration for `Re s ≥ 1/2` and the
/// functional equation otherwise; this route is independent of
/// [`hurwitz_zeta`].
pub fn riemann_zeta(s: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    if s.imag().is_zero() && *s.real() == 1 {
        return Err(Error::Pole("riemann_zeta at s = 1".into()));
    }
    if *s.real() < 0.5 {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one_minus = Complex::with_val(prec, 1 - s);
        let z1 = riemann_zeta(&one_minus, ctx)?;
        let g = gamma(&one_minus, ctx)?;
        let two_s = Complex::with_val(prec, 2).pow(s);
        let pi_s1 = Complex::with_val(prec, ctx.pi()).pow(Complex::with_val(prec, s - 1u32));
        let sn = Complex::with_val(prec, s * ctx.pi()) / 2u32;
        return Ok(two_s * pi_s1 * sn.sin() * g * z1);
    }
    let t = s.imag().to_f64().abs();
    let one_m = Complex::with_val(prec, 1) - Complex::with_val(prec, 2).pow(Complex::with_val(prec, 1 - s));
    if Float::with_val(prec, one_m.abs_ref()) < 1e-3 {
        return hurwitz_zeta(s, &Float::with_val(prec, 1), ctx);
    }
    let ln_target = ctx.working_digits() as f64 * std::f64::consts::LN_10 + std::f64::consts::PI * t / 2.0 + (3.0 + 6.0 * t).ln();
    let n = (ln_target / (3.0 + 8f64.sqrt()).ln()).ceil() as u32 + 6;
    let wp = prec + 16;
    // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut term = Float::with_val(wp, 1) / n; // i = 0: (n-1)!/n! = 1/n
    let mut sum = Float::with_val(wp, 0);
    for i in 0..=n {
        if i > 0 {
            // ratio term_i/term_{i-1} = (n+i-1)(n-i+1)·4 / ((2i)(2i-1))
            term *= 4u64 * (n + i - 1) as u64 * (n - i + 1) as u64;
            term /= (2 * i) as u64 * (2 * i - 1) as u64;
        }
        sum += &term;
        d.push(Float::with_val(wp, &sum * n));
    }
    let dn = d[n as usize].clone();
    let mut acc = Complex::with_val(wp, 0);
    for k in 0..n {
        let coef = Float::with_val(wp, &d[k as usize] - &dn);
        let pk = cpow_neg(&Float::with_val(wp, k + 1), s, wp);
        if k % 2 == 0 {
            acc += pk * coef;
        } else {
            acc -= pk * coef;
        }
    }
    let res = -acc / (one_m * dn);
    Ok(Complex::with_val(prec, res))
}
