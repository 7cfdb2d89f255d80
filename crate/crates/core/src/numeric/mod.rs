//! Arbitrary-precision kernel: precision context, scalar aliases, AGM,
//! Bernoulli numbers, gamma and zeta functions, quadrature and polynomial
//! roots.
//!
//! Scalars are MPFR/MPC values from `rug`. Every routine takes a
//! [`PrecisionCtx`]; the working precision is `digits + guard` decimal
//! digits and verdicts are rendered at `digits`.

mod bernoulli;
mod gamma;
pub mod quad;
pub mod roots;
mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_number_f, bernoulli_poly};
pub use gamma::{digamma_real, gamma, gamma_real, inc_gamma};
pub use zeta::{hurwitz_zeta, riemann_zeta, zeta_int};

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};

/// Arbitrary-precision real scalar.
pub type BigReal = Float;
/// Arbitrary-precision complex scalar.
pub type BigComplex = Complex;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Rule mapping a requested accuracy onto truncation bounds of series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailPolicy {
    /// Truncate once the estimated remainder drops below
    /// `10^-(digits + guard)`, i.e. the guard digits double as a safety
    /// margin on heuristic tail bounds.
    GuardMargin,
}

/// Working precision and truncation policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrecisionCtx {
    /// Requested decimal digits of the results.
    pub digits: u32,
    /// Extra decimal digits carried internally.
    pub guard: u32,
    /// Truncation rule for infinite series and sums.
    pub tail_policy: TailPolicy,
}

impl PrecisionCtx {
    /// Default number of guard digits.
    pub const DEFAULT_GUARD: u32 = 15;

    /// Context with `digits` requested digits and the default guard.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    /// Context with explicit guard digits.
    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::Precision(format!("digits must be at least 15, got {digits}")));
        }
        Ok(Self { digits, guard, tail_policy: TailPolicy::GuardMargin })
    }

    /// Total decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision of every intermediate value.
    pub fn prec(&self) -> u32 {
        (self.working_digits() as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// Same guard and policy, different requested digits.
    pub fn with_digits(&self, digits: u32) -> Self {
        Self { digits: digits.max(15), ..*self }
    }

    /// Context carrying `extra` more guard digits.
    pub fn widened(&self, extra: u32) -> Self {
        Self { guard: self.guard + extra, ..*self }
    }

    /// Target absolute error for series truncation, as a power of ten.
    pub fn tail_exponent(&self) -> i32 {
        match self.tail_policy {
            TailPolicy::GuardMargin => -(self.working_digits() as i32),
        }
    }

    /// Target absolute error for series truncation.
    pub fn eps(&self) -> Float {
        pow10(self.prec(), self.tail_exponent())
    }

    /// `10^-digits`, the verdict tolerance.
    pub fn tol(&self) -> Float {
        pow10(self.prec(), -(self.digits as i32))
    }

    /// Natural log of [`Self::eps`] as an `f64`, for term-count estimates.
    pub fn ln_eps(&self) -> f64 {
        self.tail_exponent() as f64 * std::f64::consts::LN_10
    }

    /// Real value at working precision.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec(), v)
    }

    /// Complex value at working precision.
    pub fn complex<T>(&self, v: T) -> Complex
    where
        Complex: rug::Assign<T>,
    {
        Complex::with_val(self.prec(), v)
    }

    /// π at working precision.
    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }
}

/// `10^e` at precision `prec`.
pub fn pow10(prec: u32, e: i32) -> Float {
    Float::with_val(prec, 10).pow(e)
}

/// Parses a decimal or rational string (`"3/4"`, `"-1.25"`) into a real.
pub fn parse_real(s: &str, ctx: &PrecisionCtx) -> Result<Float> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_real(n, ctx)?;
        let d = parse_real(d, ctx)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        return Ok(n / d);
    }
    let v = Float::parse(s).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    Ok(Float::with_val(ctx.prec(), v))
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits as usize));
    s
}

/// Number of matching decimal digits implied by an absolute difference,
/// capped at `cap`.
pub fn digits_matched(diff: &Float, cap: u32) -> u32 {
    if diff.is_zero() {
        return cap;
    }
    let l = -diff.to_f64().abs().log10();
    if !l.is_finite() {
        return cap;
    }
    (l.floor().max(0.0) as u32).min(cap)
}

/// Arithmetic-geometric mean of two positive reals.
///
/// Iterates `a ← (a+b)/2`, `b ← √(ab)` until the two sequences agree to
/// the working precision.
pub fn agm(a: &Float, b: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    if *a <= 0 || *b <= 0 {
        return Err(Error::Domain("agm needs positive arguments".into()));
    }
    let prec = ctx.prec();
    let mut x = Float::with_val(prec, a);
    let mut y = Float::with_val(prec, b);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4));
    for _ in 0..200 {
        let diff = Float::with_val(prec, &x - &y).abs();
        if diff <= Float::with_val(prec, &x * &tol) {
            return Ok(x);
        }
        let nx = Float::with_val(prec, &x + &y) / 2;
        let ny = Float::with_val(prec, &x * &y).sqrt();
        x = nx;
        y = ny;
    }
    Err(Error::Accuracy("agm iteration did not converge".into()))
}

/// Real part of a complex value.
pub fn re(z: &Complex) -> Float {
    z.real().clone()
}

/// Imaginary part of a complex value.
pub fn im(z: &Complex) -> Float {
    z.imag().clone()
}

/// Modulus of a complex value.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// `log|z|`.
pub fn log_abs(z: &Complex) -> Float {
    let n = Float::with_val(z.prec().0, z.norm_ref());
    n.ln() / 2
}

/// `e^{2πi t}` for real `t`.
pub fn e2pii(t: &Float, ctx: &PrecisionCtx) -> Complex {
    let prec = ctx.prec();
    let ang = Float::with_val(prec, t * ctx.pi()) * 2u32;
    let (s, c) = ang.sin_cos(Float::new(prec));
    Complex::with_val(prec, (c, s))
}

/// Binomial coefficient as an `i64`.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `n!` as a real at precision `prec`.
pub fn factorial(n: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ctx_rejects_low_digits() {
        assert!(PrecisionCtx::new(14).is_err());
        assert!(PrecisionCtx::new(15).is_ok());
    }

    #[test]
    fn agm_fixed_point_and_gauss_constant() {
        let ctx = PrecisionCtx::new(50).unwrap();
        let one = ctx.real(1);
        assert_eq!(agm(&one, &one, &ctx).unwrap(), 1);
        // Oracle: independent iteration of the recurrence in the test.
        let mut a = ctx.real(2).sqrt();
        let mut b = ctx.real(1);
        for _ in 0..40 {
            let na = Float::with_val(ctx.prec(), &a + &b) / 2;
            b = Float::with_val(ctx.prec(), &a * &b).sqrt();
            a = na;
        }
        let g = agm(&ctx.real(2).sqrt(), &one, &ctx).unwrap();
        assert!(Float::with_val(ctx.prec(), &g - &a).abs() < ctx.tol());
        assert!((g.to_f64() - 1.198_140_234_735_592).abs() < 1e-14);
    }

    #[test]
    fn agm_rejects_nonpositive() {
        let ctx = PrecisionCtx::new(20).unwrap();
        assert!(agm(&ctx.real(0), &ctx.real(1), &ctx).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(2, 3), 0);
    }
}
