//! The q-averaged functions `D^E`, `J^E`, `ℒ^E_{3,1}`, `ℒ^E_{3,2}` and
//! `D_{a,b}(q;x)`.
//!
//! Every function is a sum `Σ_{n≥0} k(q^n x) ± Σ_{n≥1} k(q^n x^{-1})` plus
//! an elementary correction. With `x = e^{2πi(ξτ+η)}` and `0 ≤ ξ < 1`
//! all arguments have modulus at most 1 and the terms decay like
//! `|q|^n` times powers of `n log|q|`.

use super::torsion::{Divisor, Tau, TorsionCoord};
use crate::error::{Error, Result};
use crate::numeric::{bernoulli_poly, factorial, log_abs, PrecisionCtx};
use crate::polylog::{bloch_wigner, dab, dab_decaying, li_upto, zagier_L};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Treatment of the singular term `J_3(1) = log²|1|·log|0|` when `ℒ^E_{3,2}`
/// is evaluated at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OriginPolicy {
    /// The origin is outside the domain.
    Reject,
    /// Use `J_3(1) := 0`, the limit of `log²|x| log|1-x|` as `x → 1`.
    Limit,
}

#[derive(Clone, Copy, Debug)]
enum Kernel {
    Dilog,
    J,
    L3,
    J3(OriginPolicy),
    Dab(u32, u32),
}

fn is_exact_one(z: &Complex) -> bool {
    z.imag().is_zero() && *z.real() == 1
}

/// Number of q-series terms for `Im τ` and `|ξ|`: the smallest `N` with
/// `(1 + (N+2+|ξ|)² log²|q|)^{3/2} |q|^{N-|ξ|} < 10^-5 ε`.
fn term_count(a: f64, xi_abs: f64, ctx: &PrecisionCtx) -> usize {
    let target = ctx.ln_eps() - 5.0 * std::f64::consts::LN_10;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let lg = 1.5 * (1.0 + (a * (nf + 2.0 + xi_abs)).powi(2)).ln();
        if lg - a * (nf - xi_abs) < target {
            return n;
        }
        n += 1;
    }
}

fn kernel_at(k: Kernel, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let as_c = |f: Float| Complex::with_val(prec, (f, 0));
    if is_exact_one(z) {
        return match k {
            Kernel::Dilog => Ok(Complex::with_val(prec, 0)),
            Kernel::J => Err(Error::Domain("J^E is singular at the origin".into())),
            Kernel::J3(OriginPolicy::Reject) => Err(Error::Domain(
                "ℒ^E_{3,2} at the origin needs the J_3(1) := 0 limit policy".into(),
            )),
            Kernel::J3(OriginPolicy::Limit) => Ok(Complex::with_val(prec, 0)),
            Kernel::L3 => Ok(as_c(zagier_L(3, z, ctx)?)),
            Kernel::Dab(a, b) => dab(a, b, z, ctx),
        };
    }
    let l = log_abs(z);
    let om = Complex::with_val(prec, 1 - z);
    match k {
        Kernel::J => Ok(as_c(l * log_abs(&om))),
        Kernel::J3(_) => Ok(as_c(Float::with_val(prec, l.square_ref()) * log_abs(&om))),
        _ if Float::with_val(prec, z.norm_ref()) > 1 => match k {
            Kernel::Dilog => Ok(as_c(bloch_wigner(z, ctx)?)),
            Kernel::L3 => Ok(as_c(zagier_L(3, z, ctx)?)),
            Kernel::Dab(a, b) => dab(a, b, z, ctx),
            _ => unreachable!(),
        },
        Kernel::Dilog => {
            let lis = li_upto(2, z, ctx)?;
            let arg = Float::with_val(prec, om.arg_ref());
            Ok(as_c(Float::with_val(prec, lis[1].imag()) + arg * l))
        }
        Kernel::L3 => {
            // Re(Li_3 - L Li_2 + L²/3 Li_1)
            let lis = li_upto(3, z, ctx)?;
            let l2 = Float::with_val(prec, l.square_ref()) / 3u32;
            let v = Float::with_val(prec, lis[2].real()) - Float::with_val(prec, lis[1].real()) * &l
                + Float::with_val(prec, lis[0].real()) * l2;
            Ok(as_c(v))
        }
        Kernel::Dab(a, b) => {
            let lis = li_upto(a + b - 1, z, ctx)?;
            dab_decaying(a, b, z, &lis, ctx)
        }
    }
}

/// `Σ_{n≥0} k(q^n x) + sign·Σ_{n≥1} k(q^n x^{-1})` at real coordinates.
fn averaged(k: Kernel, sign: i32, tau: &Tau, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let wctx = ctx.widened(5);
    let prec = wctx.prec();
    let tau = Tau::new(Complex::with_val(prec, &tau.value), &wctx)?;
    let xi = Float::with_val(prec, xi);
    let eta = Float::with_val(prec, eta);
    let a = -tau.log_abs_q(&wctx).to_f64();
    let n = term_count(a, xi.to_f64().abs(), &wctx);
    let x = tau.point_x(&xi, &eta, &wctx);
    let xinv = if is_exact_one(&x) { x.clone() } else { Complex::with_val(prec, x.recip_ref()) };
    let mut acc = kernel_at(k, &x, &wctx)?;
    let mut zp = x;
    let mut zm = xinv;
    for _ in 1..=n {
        zp *= &tau.q;
        zm *= &tau.q;
        acc += kernel_at(k, &zp, &wctx)?;
        let t = kernel_at(k, &zm, &wctx)?;
        if sign > 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(Complex::with_val(ctx.prec(), acc))
}

fn real_of(c: Complex) -> Float {
    c.real().clone()
}

/// Elliptic dilogarithm `D^E(x) = Σ_{n∈ℤ} D(q^n x)` at `x = e^{2πi(ξτ+η)}`.
pub fn ell_dilog_at(tau: &Tau, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    // D(q^{-n} x) = -D(q^n x^{-1}).
    Ok(real_of(averaged(Kernel::Dilog, -1, tau, xi, eta, ctx)?))
}

/// Elliptic dilogarithm at a point of `ℂ/(ℤ+ℤτ)`.
pub fn ell_dilog(tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Float> {
    let (xi, eta) = p.to_floats(ctx);
    ell_dilog_at(tau, &xi, &eta, ctx)
}

/// `J^E(x) = Σ_{n≥0} J(q^n x) - Σ_{n≥1} J(q^n x^{-1}) + (1/3) log²|q| B_3(log|x|/log|q|)`.
pub fn ell_j_at(tau: &Tau, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    let s = real_of(averaged(Kernel::J, -1, tau, xi, eta, ctx)?);
    let lq = tau.log_abs_q(ctx);
    let corr = Float::with_val(ctx.prec(), lq.square_ref()) * bernoulli_poly(3, xi) / 3u32;
    Ok(s + corr)
}

/// `J^E` at a point of `ℂ/(ℤ+ℤτ)`; the origin is a domain error.
#[allow(non_snake_case)]
pub fn ell_J(tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Float> {
    let (xi, eta) = p.to_floats(ctx);
    ell_j_at(tau, &xi, &eta, ctx)
}

/// Elliptic trilogarithm `ℒ^E_{3,1}(x) = Σ_{n∈ℤ} ℒ_3(q^n x)`, summed as
/// `ℒ_3(x) + Σ_{n≥1} (ℒ_3(q^n x) + ℒ_3(q^n x^{-1}))`.
pub fn ell_l31_at(tau: &Tau, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    Ok(real_of(averaged(Kernel::L3, 1, tau, xi, eta, ctx)?))
}

/// `ℒ^E_{3,1}` at a point of `ℂ/(ℤ+ℤτ)`, origin included.
#[allow(non_snake_case)]
pub fn ell_L31(tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Float> {
    let (xi, eta) = p.to_floats(ctx);
    ell_l31_at(tau, &xi, &eta, ctx)
}

/// `ℒ^E_{3,2}(x) = Σ_{n≥0} J_3(q^n x) + Σ_{n≥1} J_3(q^n x^{-1})
/// + log²|x| log²|q x^{-1}| / (4 log|q|)`.
pub fn ell_l32_at(tau: &Tau, xi: &Float, eta: &Float, origin: OriginPolicy, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec();
    let s = real_of(averaged(Kernel::J3(origin), 1, tau, xi, eta, ctx)?);
    let lq = tau.log_abs_q(ctx);
    let lx = Float::with_val(prec, &lq * xi);
    let lqx = Float::with_val(prec, &lq - &lx);
    let corr = Float::with_val(prec, lx.square_ref()) * Float::with_val(prec, lqx.square_ref()) / (lq * 4u32);
    Ok(s + corr)
}

/// `ℒ^E_{3,2}` at a point of `ℂ/(ℤ+ℤτ)`; the origin is a domain error.
#[allow(non_snake_case)]
pub fn ell_L32(tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Float> {
    ell_L32_with(tau, p, OriginPolicy::Reject, ctx)
}

/// `ℒ^E_{3,2}` with an explicit treatment of the origin.
#[allow(non_snake_case)]
pub fn ell_L32_with(tau: &Tau, p: &TorsionCoord, origin: OriginPolicy, ctx: &PrecisionCtx) -> Result<Float> {
    let (xi, eta) = p.to_floats(ctx);
    ell_l32_at(tau, &xi, &eta, origin, ctx)
}

/// `D_{a,b}(q;x) = Σ_{n≥0} D_{a,b}(q^n x) + (-1)^{r-1} Σ_{n≥1} D_{a,b}(q^n x^{-1})
/// + (-2 log|q|)^r B_{r+1}(log|x|/log|q|)/(r+1)!`, `r = a+b-1`.
pub fn dab_q_at(a: u32, b: u32, tau: &Tau, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("D_{a,b} needs a, b ≥ 1".into()));
    }
    let prec = ctx.prec();
    let r = a + b - 1;
    let sign = if r % 2 == 1 { 1 } else { -1 };
    let s = averaged(Kernel::Dab(a, b), sign, tau, xi, eta, ctx)?;
    let m2lq = Float::with_val(prec, tau.log_abs_q(ctx) * -2i32);
    let corr = m2lq.pow(r) * bernoulli_poly(r + 1, xi) / factorial(r + 1, prec);
    Ok(s + corr)
}

/// `D_{a,b}(q;x)` at a point of `ℂ/(ℤ+ℤτ)`.
pub fn dab_q(a: u32, b: u32, tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Complex> {
    let (xi, eta) = p.to_floats(ctx);
    dab_q_at(a, b, tau, &xi, &eta, ctx)
}

/// A real-valued function on `ℂ/(ℤ+ℤτ)` that extends linearly to divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointFn {
    /// `D^E`.
    Dilog,
    /// `J^E`.
    J,
    /// `ℒ^E_{3,1}`.
    L31,
    /// `ℒ^E_{3,2}` with the given origin treatment.
    L32(OriginPolicy),
    /// `Re D_{a,b}(q;x)`.
    ReDab(u32, u32),
}

impl PointFn {
    /// Value at a single point.
    pub fn eval(&self, tau: &Tau, p: &TorsionCoord, ctx: &PrecisionCtx) -> Result<Float> {
        match *self {
            PointFn::Dilog => ell_dilog(tau, p, ctx),
            PointFn::J => ell_J(tau, p, ctx),
            PointFn::L31 => ell_L31(tau, p, ctx),
            PointFn::L32(o) => ell_L32_with(tau, p, o, ctx),
            PointFn::ReDab(a, b) => Ok(dab_q(a, b, tau, p, ctx)?.real().clone()),
        }
    }
}

/// `Σ n_P f(P)` over the divisor.
pub fn divisor_eval(f: PointFn, tau: &Tau, d: &Divisor, ctx: &PrecisionCtx) -> Result<Float> {
    let mut acc = Float::with_val(ctx.prec(), 0);
    for (p, c) in d.terms() {
        acc += f.eval(tau, p, ctx)? * c;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::zeta_int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn tau(re: f64, im: f64, c: &PrecisionCtx) -> Tau {
        Tau::new(c.complex((re, im)), c).unwrap()
    }

    #[test]
    fn shift_invariance() {
        let c = ctx(40);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4 {
            let t = tau(rng.gen_range(-0.5..0.5), rng.gen_range(0.6..2.0), &c);
            let xi = c.real(rng.gen_range(0.05..0.95));
            let eta = c.real(rng.gen_range(0.0..1.0));
            let xi1 = Float::with_val(c.prec(), &xi + 1u32);
            let pairs = [
                (ell_dilog_at(&t, &xi, &eta, &c).unwrap(), ell_dilog_at(&t, &xi1, &eta, &c).unwrap()),
                (ell_j_at(&t, &xi, &eta, &c).unwrap(), ell_j_at(&t, &xi1, &eta, &c).unwrap()),
                (ell_l31_at(&t, &xi, &eta, &c).unwrap(), ell_l31_at(&t, &xi1, &eta, &c).unwrap()),
                (
                    ell_l32_at(&t, &xi, &eta, OriginPolicy::Reject, &c).unwrap(),
                    ell_l32_at(&t, &xi1, &eta, OriginPolicy::Reject, &c).unwrap(),
                ),
                (
                    dab_q_at(2, 2, &t, &xi, &eta, &c).unwrap().real().clone(),
                    dab_q_at(2, 2, &t, &xi1, &eta, &c).unwrap().real().clone(),
                ),
            ];
            for (i, (a, b)) in pairs.iter().enumerate() {
                assert!(Float::with_val(c.prec(), a - b).abs() < c.tol(), "function {i}");
            }
        }
    }

    #[test]
    fn dilog_vanishes_on_real_points_at_tau_i() {
        let c = ctx(40);
        let t = tau(0.0, 1.0, &c);
        let v = ell_dilog(&t, &TorsionCoord::from_fracs(0, 1, 1, 2), &c).unwrap();
        assert!(v.abs() < c.tol());
    }

    #[test]
    fn l31_origin_closed_form() {
        let c = ctx(40);
        let t = tau(0.1, 0.8, &c);
        let v = ell_L31(&t, &TorsionCoord::origin(), &c).unwrap();
        // ζ(3) + 2 Σ_{n≥1} ℒ_3(q^n), summed independently by brute force.
        let mut want = zeta_int(3, c.prec());
        let mut qn = Complex::with_val(c.prec(), 1);
        for _ in 0..200 {
            qn *= &t.q;
            want += zagier_L(3, &qn, &c).unwrap() * 2u32;
        }
        assert!((v - want).abs() < c.tol());
    }

    #[test]
    fn j_and_l32_reject_origin() {
        let c = ctx(30);
        let t = tau(0.0, 1.0, &c);
        assert!(ell_J(&t, &TorsionCoord::origin(), &c).is_err());
        assert!(ell_L32(&t, &TorsionCoord::origin(), &c).is_err());
        assert!(ell_L32_with(&t, &TorsionCoord::origin(), OriginPolicy::Limit, &c).is_ok());
    }

    #[test]
    fn truncation_is_self_consistent() {
        // Two precisions imply two truncation depths; the values must agree.
        let lo = ctx(40);
        let hi = ctx(60);
        let p = TorsionCoord::from_fracs(1, 2, 0, 1);
        let v1 = ell_dilog(&tau(0.0, 1.0, &lo), &p, &lo).unwrap();
        let v2 = ell_dilog(&tau(0.0, 1.0, &hi), &p, &hi).unwrap();
        assert!(Float::with_val(lo.prec(), &v1 - &v2).abs() < lo.tol());
        let j1 = ell_J(&tau(0.2, 0.9, &lo), &TorsionCoord::from_fracs(1, 3, 1, 5), &lo).unwrap();
        let j2 = ell_J(&tau(0.2, 0.9, &hi), &TorsionCoord::from_fracs(1, 3, 1, 5), &hi).unwrap();
        assert!(Float::with_val(lo.prec(), &j1 - &j2).abs() < lo.tol());
    }

    #[test]
    fn ek_identities_including_origin() {
        let c = ctx(40);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut pts: Vec<(Tau, TorsionCoord)> = (0..3)
            .map(|_| {
                let t = tau(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..3.0), &c);
                let p = TorsionCoord::from_fracs(rng.gen_range(0..97), 97, rng.gen_range(0..89), 89);
                (t, p)
            })
            .collect();
        pts.push((tau(0.0, 1.0, &c), TorsionCoord::origin()));
        for (t, p) in &pts {
            let l31 = ell_L31(t, p, &c).unwrap();
            let l32 = ell_L32_with(t, p, OriginPolicy::Limit, &c).unwrap();
            let d13 = dab_q(1, 3, t, p, &c).unwrap().real().clone();
            let d22 = dab_q(2, 2, t, p, &c).unwrap().real().clone();
            let lq3 = Float::with_val(c.prec(), t.log_abs_q(&c).pow(3u32)) / 120u32;
            let ek2 = Float::with_val(c.prec(), &d13 - &d22) / 6u32;
            let ek3 = -Float::with_val(c.prec(), Float::with_val(c.prec(), &d13 * 2u32) + &d22) / 4u32 + &lq3;
            assert!(Float::with_val(c.prec(), &l31 - &ek2).abs() < c.tol(), "EK2 at {p}");
            assert!(Float::with_val(c.prec(), &l32 - &ek3).abs() < c.tol(), "EK3 at {p}");
        }
    }

    #[test]
    fn divisor_linearity() {
        let c = ctx(30);
        let t = tau(0.1, 1.1, &c);
        let p = TorsionCoord::from_fracs(1, 3, 0, 1);
        let q = TorsionCoord::from_fracs(1, 4, 1, 2);
        let d = Divisor::from_terms([(2, p.clone()), (1, q.clone())]);
        let lhs = divisor_eval(PointFn::L31, &t, &d, &c).unwrap();
        let rhs = ell_L31(&t, &p, &c).unwrap() * 2u32 + ell_L31(&t, &q, &c).unwrap();
        assert!((lhs - rhs).abs() < c.tol());
        assert_eq!(divisor_eval(PointFn::L31, &t, &Divisor::new(), &c).unwrap(), 0);
        let z = Divisor::from_terms([(1, p.clone()), (-1, p)]);
        assert_eq!(divisor_eval(PointFn::J, &t, &z, &c).unwrap(), 0);
    }
}
