//! Parameter functions `s_2, s_3, s_4`, the Hauptmoduln `j_N^*` of
//! `Γ_0(N)^*`, the Weber-type function `𝔤_3` and the modular invariant.

use super::eta::{delta, eta};
use crate::error::{Error, Result};
use crate::numeric::PrecisionCtx;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

fn powi(z: &Complex, k: i32) -> Complex {
    z.clone().pow(k)
}

fn scaled(tau: &Complex, m: u32, add: f64, ctx: &PrecisionCtx) -> Complex {
    Complex::with_val(ctx.prec(), tau * m) + Float::with_val(ctx.prec(), add)
}

/// `η(mτ)/η(τ)` at working precision.
fn eta_ratio(tau: &Complex, m: u32, ctx: &PrecisionCtx) -> Result<Complex> {
    Ok(eta(&scaled(tau, m, 0.0, ctx), ctx)? / eta(tau, ctx)?)
}

/// The parameter functions of `q = e^{2πiτ}`:
///
/// `s_2 = -Δ((2τ+1)/2)/Δ(2τ+1)`,
/// `s_3 = (27 (η(3τ)/η(τ))^6 + (η(τ)/η(3τ))^6)^2`,
/// `s_4 = Δ(2τ)/Δ(τ) · (16 (η(τ)η(4τ)^2/η(2τ)^3)^4 + (η(2τ)^3/(η(τ)η(4τ)^2))^4)^4`.
pub fn s_param(j: u32, tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let v = match j {
        2 => {
            let a = scaled(tau, 1, 0.5, &w);
            let b = scaled(tau, 2, 1.0, &w);
            -(delta(&a, &w)? / delta(&b, &w)?)
        }
        3 => {
            let r = powi(&eta_ratio(tau, 3, &w)?, 6);
            let inner = Complex::with_val(prec, &r * 27u32) + Complex::with_val(prec, r.recip_ref());
            Complex::with_val(prec, inner.square_ref())
        }
        4 => {
            let e1 = eta(tau, &w)?;
            let e2 = eta(&scaled(tau, 2, 0.0, &w), &w)?;
            let e4 = eta(&scaled(tau, 4, 0.0, &w), &w)?;
            let x = powi(&(Complex::with_val(prec, &e1 * Complex::with_val(prec, e4.square_ref())) / powi(&e2, 3)), 4);
            let inner = Complex::with_val(prec, &x * 16u32) + Complex::with_val(prec, x.recip_ref());
            powi(&Complex::with_val(prec, &e2 / &e1), 24) * powi(&inner, 4)
        }
        _ => return Err(Error::Domain(format!("s_j needs j ∈ {{2,3,4}}, got {j}"))),
    };
    Ok(Complex::with_val(ctx.prec(), v))
}

/// Hauptmodul of `Γ_0(N)^*`:
/// `j_N^*(τ) = (η(τ)/η(Nτ))^k + k + N^{k/2}(η(Nτ)/η(τ))^k` with
/// `k = 24/(N-1)` rounded to `24, 12, 8` for `N = 2, 3, 4`.
pub fn jstar(n: u32, tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let k: i32 = match n {
        2 => 24,
        3 => 12,
        4 => 8,
        _ => return Err(Error::Domain(format!("j_N^* needs N ∈ {{2,3,4}}, got {n}"))),
    };
    let w = ctx.widened(5);
    let prec = w.prec();
    let r = powi(&eta_ratio(tau, n, &w)?, k);
    let big = Integer::from(n).pow((k / 2) as u32);
    let v = Complex::with_val(prec, r.recip_ref()) + k + r * Float::with_val(prec, &big);
    Ok(Complex::with_val(ctx.prec(), v))
}

/// Weber-type function `𝔤_3(τ) = √3 η(3τ)/η(τ)`.
pub fn weber_g3(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let w = ctx.widened(3);
    let r = eta_ratio(tau, 3, &w)?;
    Ok(Complex::with_val(ctx.prec(), r * Float::with_val(w.prec(), 3).sqrt()))
}

/// `j(τ) = (x+3)^3 (x+27)/x` with `x = 𝔤_3(τ)^{12}`.
pub fn j_from_g3(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let x = powi(&weber_g3(tau, &w)?, 12);
    let a = Complex::with_val(prec, &x + 3u32);
    let b = Complex::with_val(prec, &x + 27u32);
    Ok(Complex::with_val(ctx.prec(), powi(&a, 3) * b / x))
}

/// Maps `τ` into the closure of the standard fundamental domain of
/// `SL_2(ℤ)` by translations and `τ ↦ -1/τ`.
pub fn reduce_sl2z(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    if *tau.imag() <= 0 {
        return Err(Error::Domain("τ must lie in the upper half-plane".into()));
    }
    let prec = ctx.prec();
    let mut t = Complex::with_val(prec, tau);
    for _ in 0..1000 {
        let n = t.real().to_f64().round();
        t -= Float::with_val(prec, n);
        if Float::with_val(prec, t.norm_ref()) >= 1 {
            return Ok(t);
        }
        t = -Complex::with_val(prec, t.recip_ref());
    }
    Err(Error::Accuracy("modular reduction of τ did not terminate".into()))
}

/// Modular invariant `j = 1728 E_4^3/(E_4^3 - E_6^2)` from the Lambert
/// series `E_4 = 1 + 240 Σ n^3 q^n/(1-q^n)` and
/// `E_6 = 1 - 504 Σ n^5 q^n/(1-q^n)`, evaluated at the reduced point.
///
/// This route never touches the eta function.
pub fn j_classical(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let t = reduce_sl2z(tau, &w)?;
    let i = Complex::with_val(prec, (0, 1));
    let q = (Complex::with_val(prec, &t * &i) * (w.pi() * 2u32)).exp();
    let y = t.imag().to_f64();
    let mut s3 = Complex::with_val(prec, 0);
    let mut s5 = Complex::with_val(prec, 0);
    let mut qn = Complex::with_val(prec, 1);
    let budget = -w.ln_eps() + 5.0;
    let mut n: u64 = 1;
    loop {
        qn *= &q;
        let nf = n as f64;
        if 2.0 * std::f64::consts::PI * y * nf - 5.0 * nf.ln() > budget {
            break;
        }
        let l = Complex::with_val(prec, &qn / Complex::with_val(prec, 1 - &qn));
        let n3 = Integer::from(n).pow(3);
        let n5 = Integer::from(n).pow(5);
        s3 += Complex::with_val(prec, &l * &n3);
        s5 += Complex::with_val(prec, &l * &n5);
        n += 1;
    }
    let e4 = Complex::with_val(prec, &s3 * 240u32) + 1u32;
    let e6 = 1u32 - Complex::with_val(prec, &s5 * 504u32);
    let e43 = powi(&e4, 3);
    let den = Complex::with_val(prec, &e43 - Complex::with_val(prec, e6.square_ref()));
    if Float::with_val(prec, den.abs_ref()).is_zero() {
        return Err(Error::Pole("j at a cusp".into()));
    }
    Ok(Complex::with_val(ctx.prec(), e43 * 1728u32 / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::hyper::tau_from_nome;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn dist(a: &Complex, b: &Complex) -> f64 {
        Float::with_val(a.prec().0, Complex::with_val(a.prec().0, a - b).abs_ref()).to_f64()
    }

    fn rel(a: &Complex, b: &Complex) -> f64 {
        dist(a, b) / (1.0 + Float::with_val(b.prec().0, b.abs_ref()).to_f64())
    }

    fn random_taus(n: usize, seed: u64) -> Vec<(f64, f64)> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| (rng.gen_range(-0.5..0.5), rng.gen_range(0.4..1.5))).collect()
    }

    #[test]
    fn offset_identities() {
        let c = ctx(40);
        for (x, y) in random_taus(20, 3) {
            let t = c.complex((x, y));
            let s2 = s_param(2, &t, &c).unwrap();
            let s3 = s_param(3, &t, &c).unwrap();
            let s4 = s_param(4, &t, &c).unwrap();
            assert!(rel(&s2, &(jstar(4, &t, &c).unwrap() + 24u32)) < 1e-40);
            assert!(rel(&s3, &(jstar(3, &t, &c).unwrap() + 42u32)) < 1e-40);
            assert!(rel(&s4, &(jstar(2, &t, &c).unwrap() + 104u32)) < 1e-40);
        }
    }

    #[test]
    fn fricke_invariance() {
        let c = ctx(40);
        for n in 2..=4u32 {
            for (x, y) in random_taus(5, 10 + n as u64) {
                let t = c.complex((x, y));
                let nt = Complex::with_val(c.prec(), &t * n);
                let ft = -Complex::with_val(c.prec(), nt.recip_ref());
                let a = jstar(n, &t, &c).unwrap();
                let b = jstar(n, &ft, &c).unwrap();
                assert!(rel(&a, &b) < 1e-38, "N={n}");
            }
        }
    }

    #[test]
    fn weber_relations() {
        let c = ctx(40);
        for (x, y) in random_taus(6, 5) {
            let t = c.complex((x, y));
            let g = weber_g3(&t, &c).unwrap();
            let g6 = powi(&g, 6);
            let want = Complex::with_val(c.prec(), (Complex::with_val(c.prec(), g6.recip_ref()) * 27u32 + &g6).square_ref());
            assert!(rel(&s_param(3, &t, &c).unwrap(), &want) < 1e-40);
            let xx = powi(&g, 12);
            let j = j_from_g3(&t, &c).unwrap();
            // x^4 + 36x^3 + 270x^2 + (756 - j)x + 3^6 = 0
            let p = powi(&xx, 4) + powi(&xx, 3) * 36u32 + powi(&xx, 2) * 270u32
                + Complex::with_val(c.prec(), 756u32 - &j) * &xx
                + 729u32;
            let scale = 1.0 + Float::with_val(c.prec(), j.abs_ref()).to_f64() * Float::with_val(c.prec(), xx.abs_ref()).to_f64();
            assert!(Float::with_val(c.prec(), p.abs_ref()).to_f64() / scale < 1e-40);
            assert!(rel(&j, &j_classical(&t, &c).unwrap()) < 1e-38);
        }
    }

    #[test]
    fn j_at_i() {
        let c = ctx(40);
        let i = c.complex((0, 1));
        assert!(dist(&j_classical(&i, &c).unwrap(), &c.complex(1728)) < 1e-35);
        assert!(dist(&j_from_g3(&i, &c).unwrap(), &c.complex(1728)) < 1e-35);
        // ρ = e^{2πi/3} gives j = 0.
        let rho = c.complex((-0.5, Float::with_val(c.prec(), 3).sqrt() / 2u32));
        assert!(dist(&j_classical(&rho, &c).unwrap(), &c.complex(0)) < 1e-35);
    }

    #[test]
    fn s_values_at_nomes() {
        // s_3(q_3(α)) = 27/(α(1-α)) and s_4(q_4(α)) = 64/(α(1-α)).
        let c = ctx(40);
        for al in [0.5, 0.25, 0.1] {
            let a = c.real(al);
            let aa = Float::with_val(c.prec(), &a * Float::with_val(c.prec(), 1 - &a));
            let t3 = tau_from_nome(3, &a, &c).unwrap();
            let t4 = tau_from_nome(4, &a, &c).unwrap();
            let w3 = Float::with_val(c.prec(), 27) / &aa;
            let w4 = Float::with_val(c.prec(), 64) / &aa;
            assert!(rel(&s_param(3, &t3, &c).unwrap(), &c.complex(&w3)) < 1e-40);
            assert!(rel(&s_param(4, &t4, &c).unwrap(), &c.complex(&w4)) < 1e-40);
        }
    }
}
