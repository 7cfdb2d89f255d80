//! Gauss `₂F₁` with the continuations needed here, the signature-`t`
//! functions `F_t`, `₃F₂` on its disc, and the elliptic nome `q_t(α)`.

use crate::error::{Error, Result};
use crate::numeric::{digamma_real, gamma_real, PrecisionCtx};
use rug::{Complex, Float};

/// Treatment of arguments on the cut `(1, ∞)` of `₂F₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutPolicy {
    /// Arguments on the cut are a domain error.
    Reject,
    /// Use the limit from the lower half-plane, `F(x - i0)`.
    LowerLimit,
}

fn cnorm(z: &Complex, prec: u32) -> f64 {
    Float::with_val(prec, z.abs_ref()).to_f64()
}

/// `Σ (a)_n (b)_n/((c)_n n!) z^n`, stopped when two consecutive terms fall
/// below `ε`.
fn series_2f1(a: &Float, b: &Float, c: &Float, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let eps = ctx.eps();
    let mut term = Complex::with_val(prec, 1);
    let mut acc = Complex::with_val(prec, 1);
    let mut small = 0;
    for n in 0u32..2_000_000 {
        let nf = Float::with_val(prec, n);
        let num = Float::with_val(prec, a + &nf) * Float::with_val(prec, b + &nf);
        let den = Float::with_val(prec, c + &nf) * Float::with_val(prec, &nf + 1u32);
        if den.is_zero() {
            return Err(Error::Pole("₂F₁ with c a non-positive integer".into()));
        }
        term *= z;
        term *= Float::with_val(prec, num / den);
        acc += &term;
        if Float::with_val(prec, term.abs_ref()) < eps {
            small += 1;
            if small >= 2 {
                return Ok(acc);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Accuracy("₂F₁ series did not converge".into()))
}

/// `log(1 - z)` and `(1 - z)^p` on the principal branch, with real `z > 1`
/// taken on the lower edge of the cut.
fn one_minus(z: &Complex, prec: u32) -> Complex {
    let mut w = Complex::with_val(prec, 1 - z);
    if w.imag().is_zero() && *w.real() < 0 {
        // z - i0 gives 1 - z + i0.
        w = Complex::with_val(prec, (w.real(), Float::with_val(prec, 0)));
    }
    w
}

/// Connection at `z = 1` for `|1 - z|` small.
fn connect_at_one(a: &Float, b: &Float, c: &Float, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let w = one_minus(z, prec);
    let s = Float::with_val(prec, c - a) - b;
    let s_round = s.to_f64().round();
    if (s.to_f64() - s_round).abs() > 1e-12 {
        // Non-integer c - a - b: Gauss connection formula.
        let gc = gamma_real(c, ctx)?;
        let g1 = Float::with_val(prec, &gc * gamma_real(&s, ctx)?)
            / (gamma_real(&Float::with_val(prec, c - a), ctx)? * gamma_real(&Float::with_val(prec, c - b), ctx)?);
        let ms = Float::with_val(prec, -&s);
        let g2 = Float::with_val(prec, &gc * gamma_real(&ms, ctx)?) / (gamma_real(a, ctx)? * gamma_real(b, ctx)?);
        let f1 = series_2f1(a, b, &Float::with_val(prec, &ms + 1u32), &w, ctx)?;
        let f2 = series_2f1(
            &Float::with_val(prec, c - a),
            &Float::with_val(prec, c - b),
            &Float::with_val(prec, &s + 1u32),
            &w,
            ctx,
        )?;
        let pw = Complex::with_val(prec, w.ln_ref()) * &s;
        return Ok(f1 * g1 + f2 * pw.exp() * g2);
    }
    if s_round != 0.0 {
        return Err(Error::Unsupported("₂F₁ connection with c - a - b a nonzero integer".into()));
    }
    // c = a + b: logarithmic case
    // F = Γ(c)/(Γ(a)Γ(b)) Σ (a)_n(b)_n/n!² [2ψ(n+1) - ψ(a+n) - ψ(b+n) - log(1-z)] (1-z)^n
    let pref = gamma_real(c, ctx)? / (gamma_real(a, ctx)? * gamma_real(b, ctx)?);
    let lw = Complex::with_val(prec, w.ln_ref());
    let mut psi1 = digamma_real(&Float::with_val(prec, 1), ctx)?;
    let mut psia = digamma_real(a, ctx)?;
    let mut psib = digamma_real(b, ctx)?;
    let mut coef = Complex::with_val(prec, 1);
    let mut acc = Complex::with_val(prec, 0);
    let eps = ctx.eps();
    let mut small = 0;
    for n in 0u32..2_000_000 {
        let bracket = Complex::with_val(prec, Float::with_val(prec, &psi1 * 2u32) - &psia - &psib) - &lw;
        let t = Complex::with_val(prec, &coef * &bracket);
        acc += &t;
        if Float::with_val(prec, t.abs_ref()) < eps && n > 2 {
            small += 1;
            if small >= 2 {
                return Ok(acc * pref);
            }
        } else {
            small = 0;
        }
        let nf = Float::with_val(prec, n);
        let an = Float::with_val(prec, a + &nf);
        let bn = Float::with_val(prec, b + &nf);
        let n1 = Float::with_val(prec, &nf + 1u32);
        coef *= &w;
        coef *= Float::with_val(prec, &an * &bn) / Float::with_val(prec, n1.square_ref());
        psi1 += Float::with_val(prec, n1.recip_ref());
        psia += Float::with_val(prec, an.recip_ref());
        psib += Float::with_val(prec, bn.recip_ref());
    }
    Err(Error::Accuracy("₂F₁ logarithmic connection did not converge".into()))
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real parameters.
///
/// Routes: the defining series for `|z| ≤ 0.6`; the connection at `z = 1`
/// for `|1 - z| ≤ 0.6` (Gauss formula, or the logarithmic form when
/// `c = a + b`); the Pfaff transformation `(1-z)^{-a} ₂F₁(a, c-b; c; z/(z-1))`
/// for `Re z < 1/2`; the series again for `|z| < 0.95`. Other arguments
/// are unsupported.
pub fn hyp2f1(a: &Float, b: &Float, c: &Float, z: &Complex, cut: CutPolicy, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let on_cut = z.imag().is_zero() && *z.real() > 1;
    if on_cut && cut == CutPolicy::Reject {
        return Err(Error::Domain("₂F₁ argument on the branch cut (1, ∞)".into()));
    }
    let r = cnorm(z, prec);
    if r <= 0.6 {
        return series_2f1(a, b, c, z, ctx);
    }
    let w = Complex::with_val(prec, 1 - z);
    if cnorm(&w, prec) <= 0.6 {
        return connect_at_one(a, b, c, z, ctx);
    }
    if *z.real() < 0.5 {
        // Pfaff: w = z/(z-1) satisfies |w| < 1 and lands in one of the
        // branches above or in the slow-series region.
        let zm1 = Complex::with_val(prec, z - 1u32);
        let wz = Complex::with_val(prec, z / &zm1);
        let cb = Float::with_val(prec, c - b);
        let inner = hyp2f1(a, &cb, c, &wz, CutPolicy::Reject, ctx)?;
        let pw = Complex::with_val(prec, w.ln_ref()) * Float::with_val(prec, -a);
        return Ok(inner * pw.exp());
    }
    if r < 0.95 {
        return series_2f1(a, b, c, z, ctx);
    }
    Err(Error::Unsupported("₂F₁ argument outside the implemented continuation regions".into()))
}

/// `F_t(z) = ₂F₁(1/t, (t-1)/t; 1; z)` for `t ∈ {2, 3, 4}`.
pub fn hyp2f1_ft(t: u32, z: &Complex, cut: CutPolicy, ctx: &PrecisionCtx) -> Result<Complex> {
    if !(2..=4).contains(&t) {
        return Err(Error::Domain(format!("F_t needs t ∈ {{2,3,4}}, got {t}")));
    }
    let prec = ctx.prec();
    let a = Float::with_val(prec, 1) / t;
    let b = Float::with_val(prec, t - 1) / t;
    hyp2f1(&a, &b, &Float::with_val(prec, 1), z, cut, ctx)
}

/// `F_t` at a real argument `x < 1`, as a real.
pub fn ft_real(t: u32, x: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    if *x >= 1 {
        return Err(Error::Domain("real F_t needs x < 1".into()));
    }
    Ok(hyp2f1_ft(t, &Complex::with_val(ctx.prec(), x), CutPolicy::Reject, ctx)?.real().clone())
}

/// `₃F₂(a1, a2, a3; b1, b2; z)` by its series on `|z| < 1`.
pub fn hyp3f2(a: [&Float; 3], b: [&Float; 2], z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    if cnorm(z, prec) >= 1.0 {
        return Err(Error::Domain("₃F₂ series needs |z| < 1".into()));
    }
    let eps = ctx.eps();
    let mut term = Complex::with_val(prec, 1);
    let mut acc = Complex::with_val(prec, 1);
    let mut small = 0;
    for n in 0u32..5_000_000 {
        let nf = Float::with_val(prec, n);
        let mut num = Float::with_val(prec, 1);
        for ai in a {
            num *= Float::with_val(prec, ai + &nf);
        }
        let mut den = Float::with_val(prec, &nf + 1u32);
        for bi in b {
            den *= Float::with_val(prec, bi + &nf);
        }
        if den.is_zero() {
            return Err(Error::Pole("₃F₂ with a non-positive integer lower parameter".into()));
        }
        term *= z;
        term *= Float::with_val(prec, num / den);
        acc += &term;
        if Float::with_val(prec, term.abs_ref()) < eps {
            small += 1;
            if small >= 2 {
                return Ok(acc);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Accuracy("₃F₂ series did not converge".into()))
}

/// Elliptic nome of signature `t`:
/// `q_t(α) = exp(-π/sin(π/t) · F_t(1-α)/F_t(α))`, `α ∈ (0, 1)`.
pub fn elliptic_nome(t: u32, alpha: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    if *alpha <= 0 || *alpha >= 1 {
        return Err(Error::Domain("elliptic nome needs α ∈ (0, 1)".into()));
    }
    let prec = ctx.prec();
    let f1 = ft_real(t, &Float::with_val(prec, 1 - alpha), ctx)?;
    let f0 = ft_real(t, alpha, ctx)?;
    let s = Float::with_val(prec, ctx.pi() / t).sin();
    let e = -(ctx.pi() / s) * f1 / f0;
    Ok(e.exp())
}

/// `τ` with `e^{2πiτ} = q_t(α)`, i.e. `τ = i F_t(1-α)/(2 sin(π/t) F_t(α))`.
pub fn tau_from_nome(t: u32, alpha: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    if *alpha <= 0 || *alpha >= 1 {
        return Err(Error::Domain("elliptic nome needs α ∈ (0, 1)".into()));
    }
    let f1 = ft_real(t, &Float::with_val(prec, 1 - alpha), ctx)?;
    let f0 = ft_real(t, alpha, ctx)?;
    let s = Float::with_val(prec, ctx.pi() / t).sin();
    Ok(Complex::with_val(prec, (0, f1 / (f0 * s * 2u32))))
}

/// The pair of `F_2` transformations for `α > 1`:
/// `F_2((α-1)/α) = α^{1/2} F_2(1-α)` and
/// `F_2(1/α) = α^{1/2} (F_2(α) + i F_2(1-α))`, with `F_2(α)` taken on the lower
/// edge of the cut, where `Im F_2(α) = -F_2(1-α)` makes the bracket real
/// and positive. Returns `(lhs1, rhs1, lhs2, rhs2)`.
pub fn f2_transformation_pair(alpha: &Float, ctx: &PrecisionCtx) -> Result<(Complex, Complex, Complex, Complex)> {
    if *alpha <= 1 {
        return Err(Error::Domain("transformation pair needs α > 1".into()));
    }
    let prec = ctx.prec();
    let sq = Float::with_val(prec, alpha.sqrt_ref());
    let z1 = Complex::with_val(prec, Float::with_val(prec, alpha - 1u32) / alpha);
    let lhs1 = hyp2f1_ft(2, &z1, CutPolicy::Reject, ctx)?;
    let f_one_minus = hyp2f1_ft(2, &Complex::with_val(prec, Float::with_val(prec, 1 - alpha)), CutPolicy::Reject, ctx)?;
    let rhs1 = Complex::with_val(prec, &f_one_minus * &sq);
    let z2 = Complex::with_val(prec, Float::with_val(prec, alpha.recip_ref()));
    let lhs2 = hyp2f1_ft(2, &z2, CutPolicy::Reject, ctx)?;
    let f_alpha = hyp2f1_ft(2, &Complex::with_val(prec, alpha), CutPolicy::LowerLimit, ctx)?;
    let i = Complex::with_val(prec, (0, 1));
    let rhs2 = (f_alpha + f_one_minus * i) * sq;
    Ok((lhs1, rhs1, lhs2, rhs2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::agm;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn cd(a: &Complex, b: &Complex) -> f64 {
        Float::with_val(a.prec().0, Complex::with_val(a.prec().0, a - b).abs_ref()).to_f64()
    }

    #[test]
    fn ft_at_zero_and_known_value() {
        let c = ctx(40);
        for t in 2..=4 {
            assert_eq!(*hyp2f1_ft(t, &c.complex(0), CutPolicy::Reject, &c).unwrap().real(), 1);
        }
        // F_2(1/2) = 2K(1/√2)/π = Γ(1/4)²/(2π^{3/2})
        let v = ft_real(2, &c.real(0.5), &c).unwrap();
        let g14 = crate::numeric::gamma_real(&c.real(0.25), &c).unwrap();
        let p = c.pi();
        let want = Float::with_val(c.prec(), g14.square_ref()) / (Float::with_val(c.prec(), p.sqrt_ref()) * &p * 2u32);
        assert!((v - want).abs() < c.tol());
    }

    #[test]
    fn agm_relation() {
        let c = ctx(40);
        let b = c.real(0.7);
        let lhs = agm(&c.real(1), &b, &c).unwrap();
        let z = Float::with_val(c.prec(), 1 - Float::with_val(c.prec(), b.square_ref()));
        let rhs = ft_real(2, &z, &c).unwrap().recip();
        assert!((lhs - rhs).abs() < c.tol());
        // agm(2, 1) = 2/F_2(3/4)
        let lhs = agm(&c.real(2), &c.real(1), &c).unwrap();
        let rhs = Float::with_val(c.prec(), 2) / ft_real(2, &c.real(0.75), &c).unwrap();
        assert!((lhs - rhs).abs() < c.tol());
    }

    #[test]
    fn routes_agree_on_overlaps() {
        // Series (slow region) vs connection vs Pfaff on shared arguments.
        let c = ctx(30);
        let a = c.real(0.3);
        let b = c.real(0.45);
        let cc = c.real(1.2);
        for z in [c.complex(0.65), c.complex((0.5, 0.3)), c.complex(-0.7), c.complex((0.55, -0.2))] {
            let s = series_2f1(&a, &b, &cc, &z, &c).unwrap();
            let h = hyp2f1(&a, &b, &cc, &z, CutPolicy::Reject, &c).unwrap();
            assert!(cd(&s, &h) < 1e-29);
        }
        // Logarithmic case against the plain series at 0.8.
        let z = c.complex(0.8);
        let s = series_2f1(&c.real(0.25), &c.real(0.75), &c.real(1), &z, &c).unwrap();
        let h = connect_at_one(&c.real(0.25), &c.real(0.75), &c.real(1), &z, &c).unwrap();
        assert!(cd(&s, &h) < 1e-29);
    }

    #[test]
    fn cut_policy() {
        let c = ctx(30);
        assert!(hyp2f1_ft(2, &c.complex(1.5), CutPolicy::Reject, &c).is_err());
        let v = hyp2f1_ft(2, &c.complex(1.5), CutPolicy::LowerLimit, &c).unwrap();
        // Limit from below equals the value just below the cut.
        let near = hyp2f1_ft(2, &c.complex((1.5, -1e-25)), CutPolicy::Reject, &c).unwrap();
        assert!(cd(&v, &near) < 1e-20);
    }

    #[test]
    fn transformation_pair() {
        let c = ctx(40);
        for al in [1.03, 1.2, 1.5] {
            let (l1, r1, l2, r2) = f2_transformation_pair(&c.real(al), &c).unwrap();
            assert!(cd(&l1, &r1) < 1e-40);
            assert!(cd(&l2, &r2) < 1e-40);
            assert!(r2.imag().to_f64().abs() < 1e-40);
        }
    }

    #[test]
    fn nome_values() {
        let c = ctx(40);
        let q = elliptic_nome(2, &c.real(0.5), &c).unwrap();
        let want = Float::with_val(c.prec(), -c.pi()).exp();
        assert!((q - want).abs() < c.tol());
        let mut prev = Float::with_val(c.prec(), 0);
        for k in 1..=10 {
            let q = elliptic_nome(2, &c.real(k as f64 / 20.0), &c).unwrap();
            assert!(q > prev);
            prev = q;
        }
        assert!(elliptic_nome(3, &c.real(1.0), &c).is_err());
    }

    #[test]
    fn hyp3f2_clausen() {
        // ₃F₂(1/4,1/2,3/4;1,1;z) = ₂F₁(1/8,3/8;1;z)²
        let c = ctx(40);
        let z = c.complex(0.256);
        let (a1, a2, a3, one) = (c.real(0.25), c.real(0.5), c.real(0.75), c.real(1));
        let l = hyp3f2([&a1, &a2, &a3], [&one, &one], &z, &c).unwrap();
        let f = hyp2f1(&c.real(0.125), &c.real(0.375), &one, &z, CutPolicy::Reject, &c).unwrap();
        assert!(cd(&l, &Complex::with_val(c.prec(), f.square_ref())) < 1e-40);
        assert!(hyp3f2([&a1, &a2, &a3], [&one, &one], &c.complex(1.0), &c).is_err());
    }
}
