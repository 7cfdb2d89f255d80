//! Odd quadratic Dirichlet characters `χ_{-k} = (-k/·)` and the constants
//! `d_k = L'(χ_{-k}, -1)`.

use super::newform::kronecker;
use crate::error::{Error, Result};
use crate::modular::fd_derivatives;
use crate::numeric::{hurwitz_zeta, PrecisionCtx};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Quadratic character `n ↦ (-k/n)` of conductor `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    /// Conductor `k`.
    pub k: u32,
    /// `values[a] = χ(a)` for `0 ≤ a < k`.
    pub values: Vec<i32>,
}

fn is_fundamental_discriminant(d: i64) -> bool {
    let squarefree = |mut m: i64| {
        m = m.abs();
        let mut p = 2;
        while p * p <= m {
            if m % (p * p) == 0 {
                return false;
            }
            p += 1;
        }
        true
    };
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

impl DirichletChar {
    /// `χ_{-k}`; requires `-k` to be a fundamental discriminant, so the
    /// character is primitive of conductor `k` and odd.
    pub fn new(k: u32) -> Result<Self> {
        if k < 3 || !is_fundamental_discriminant(-(k as i64)) {
            return Err(Error::Unsupported(format!("-{k} is not a fundamental discriminant")));
        }
        let values = (0..k).map(|a| kronecker(-(k as i64), a as u64)).collect();
        Ok(Self { k, values })
    }

    /// Quadratic character `(d/·)` for a fundamental discriminant `d`, of
    /// either parity.
    pub fn from_discriminant(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) || d.abs() < 3 {
            return Err(Error::Unsupported(format!("{d} is not a fundamental discriminant")));
        }
        let k = d.unsigned_abs() as u32;
        Ok(Self { k, values: (0..k).map(|a| kronecker(d, a as u64)).collect() })
    }

    /// `χ(n)`.
    pub fn at(&self, n: i64) -> i32 {
        self.values[n.rem_euclid(self.k as i64) as usize]
    }

    /// Whether `χ(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.at(-1) == -1
    }
}

/// `L(χ, s) = k^{-s} Σ_{a=1}^{k} χ(a) ζ(s, a/k)`, continued to `s ≠ 1`.
pub fn dirichlet_l(chi: &DirichletChar, s: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let k = Float::with_val(prec, chi.k);
    let mut acc = Complex::with_val(prec, 0);
    for a in 1..chi.k {
        let c = chi.values[a as usize];
        if c == 0 {
            continue;
        }
        let z = hurwitz_zeta(s, &(Float::with_val(prec, a) / &k), ctx)?;
        if c > 0 {
            acc += z;
        } else {
            acc -= z;
        }
    }
    let ks = Complex::with_val(prec, &k).pow(Complex::with_val(prec, -s));
    Ok(acc * ks)
}

/// `L(χ, 2) = k^{-2} Σ_{a=1}^{k} χ(a) ζ(2, a/k)` for odd `χ`.
#[allow(non_snake_case)]
pub fn dirichlet_L2(chi: &DirichletChar, ctx: &PrecisionCtx) -> Result<Float> {
    if !chi.is_odd() {
        return Err(Error::Unsupported(format!("character mod {} is even", chi.k)));
    }
    let z = dirichlet_l(chi, &Complex::with_val(ctx.prec(), 2), ctx)?;
    Ok(z.real().clone())
}

/// `d_k = L'(χ_{-k}, -1) = k^{3/2} L(χ_{-k}, 2)/(4π)`.
///
/// The odd functional equation `Λ(s) = Λ(1-s)` with
/// `Λ(s) = (k/π)^{(s+1)/2} Γ((s+1)/2) L(χ, s)` and the simple zero of
/// `L(χ, s)` at `s = -1` give the closed form.
pub fn d_value(k: u32, ctx: &PrecisionCtx) -> Result<Float> {
    let chi = DirichletChar::new(k)?;
    let w = ctx.widened(5);
    let l2 = dirichlet_L2(&chi, &w)?;
    let kf = Float::with_val(w.prec(), k);
    let k32 = Float::with_val(w.prec(), kf.sqrt_ref()) * k;
    Ok(Float::with_val(ctx.prec(), k32 * l2 / (w.pi() * 4u32)))
}

/// Independent evaluation of `d_k`: an 11-point finite-difference
/// derivative of `s ↦ L(χ_{-k}, s)` at `s = -1` with step `10⁻³`, taken on
/// the Hurwitz continuation at doubled precision. Accurate to roughly
/// `10⁻²⁵`.
pub fn d_value_derivative_oracle(k: u32, ctx: &PrecisionCtx) -> Result<Float> {
    let chi = DirichletChar::new(k)?;
    let w = ctx.widened(ctx.working_digits());
    let mu = Float::with_val(w.prec(), -1);
    let h = Float::with_val(w.prec(), 1e-3f64);
    let d = fd_derivatives(|s| dirichlet_l(&chi, &Complex::with_val(w.prec(), s), &w), &mu, &h, 5, 1)?;
    Ok(Float::with_val(ctx.prec(), d[1].real()))
}

/// Independent evaluation of `L(χ, 2)` for odd primitive `χ` of conductor
/// `k`: `(1/√k) Σ_a χ(a) Im Li₂(e^{2πia/k})`, from the Gauss sum
/// `τ(χ) = i√k`.
#[allow(non_snake_case)]
pub fn dirichlet_L2_clausen(chi: &DirichletChar, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec();
    let mut acc = Float::with_val(prec, 0);
    for a in 1..chi.k {
        let c = chi.values[a as usize];
        if c == 0 {
            continue;
        }
        let t = Float::with_val(prec, a) / chi.k;
        let z = crate::numeric::e2pii(&t, ctx);
        let li = crate::polylog::li(2, &z, ctx)?;
        acc += Float::with_val(prec, li.imag()) * c;
    }
    Ok(acc / Float::with_val(prec, chi.k).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(40).unwrap()
    }

    #[test]
    fn catalan() {
        let c = ctx();
        let l = dirichlet_L2(&DirichletChar::new(4).unwrap(), &c).unwrap();
        let g = Float::with_val(c.prec(), Constant::Catalan);
        assert!(Float::with_val(c.prec(), &l - &g).abs() < 1e-45);
    }

    #[test]
    fn l2_chi3_value_and_clausen_oracle() {
        let c = ctx();
        for k in [3u32, 4, 7, 8] {
            let chi = DirichletChar::new(k).unwrap();
            let a = dirichlet_L2(&chi, &c).unwrap();
            let b = dirichlet_L2_clausen(&chi, &c).unwrap();
            assert!(a > 0);
            assert!(Float::with_val(c.prec(), &a - &b).abs() < 1e-45, "k = {k}");
        }
        let l3 = dirichlet_L2(&DirichletChar::new(3).unwrap(), &c).unwrap();
        assert!((l3.to_f64() - 0.7813024128964862).abs() < 1e-15);
    }

    #[test]
    fn d_values_match_derivative() {
        let c = ctx();
        for k in [3u32, 4, 7, 8] {
            let d = d_value(k, &c).unwrap();
            let o = d_value_derivative_oracle(k, &c).unwrap();
            assert!(d > 0);
            assert!(Float::with_val(c.prec(), &d - &o).abs() < 1e-20, "k = {k}: {d} vs {o}");
        }
    }

    #[test]
    fn even_and_invalid_characters() {
        assert!(DirichletChar::new(5).is_err());
        assert!(DirichletChar::new(12).is_err());
        let even = DirichletChar::from_discriminant(5).unwrap();
        assert!(!even.is_odd());
        assert!(matches!(dirichlet_L2(&even, &ctx()), Err(Error::Unsupported(_))));
        let c8 = DirichletChar::new(8).unwrap();
        assert_eq!(c8.values, vec![0, 1, 0, 1, 0, -1, 0, -1]);
    }
}
