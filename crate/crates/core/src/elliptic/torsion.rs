//! Points of `ℂ/(ℤ+ℤτ)` in normalized coordinates, divisors, and the
//! period ratio `τ` with its nome.

use crate::error::{Error, Result};
use crate::numeric::PrecisionCtx;
use rug::{Complex, Float, Rational};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Torsion (or general rational) point `u = ξτ + η` with `ξ, η ∈ [0, 1)`.
///
/// `(0, 0)` is the origin `O`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsionCoord {
    /// Coefficient of `τ`.
    pub xi: Rational,
    /// Coefficient of `1`.
    pub eta: Rational,
}

fn frac(r: Rational) -> Rational {
    let f = r.clone().floor();
    r - f
}

impl TorsionCoord {
    /// Point with the given coordinates reduced mod 1.
    pub fn new(xi: Rational, eta: Rational) -> Self {
        TorsionCoord { xi: frac(xi), eta: frac(eta) }
    }

    /// Point `(a/b)τ + c/d`.
    pub fn from_fracs(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(Rational::from((a, b)), Rational::from((c, d)))
    }

    /// The origin.
    pub fn origin() -> Self {
        Self::from_fracs(0, 1, 0, 1)
    }

    /// Whether this is the origin.
    pub fn is_origin(&self) -> bool {
        self.xi == 0 && self.eta == 0
    }

    /// Group law of `ℂ/(ℤ+ℤτ)`.
    pub fn add(&self, other: &Self) -> Self {
        Self::new(Rational::from(&self.xi + &other.xi), Rational::from(&self.eta + &other.eta))
    }

    /// Inverse in the group.
    pub fn neg(&self) -> Self {
        Self::new(Rational::from(-&self.xi), Rational::from(-&self.eta))
    }

    /// `k·P`.
    pub fn mul(&self, k: i64) -> Self {
        Self::new(Rational::from(&self.xi * k), Rational::from(&self.eta * k))
    }

    /// Parse `"xi,eta"` with each entry an integer or fraction.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected 'xi,eta', got '{s}'")))?;
        let pa = |t: &str| -> Result<Rational> {
            t.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("bad rational '{t}': {e}")))
        };
        Ok(Self::new(pa(a)?, pa(b)?))
    }

    /// `(ξ, η)` as floats at the context precision.
    pub fn to_floats(&self, ctx: &PrecisionCtx) -> (Float, Float) {
        (Float::with_val(ctx.prec(), &self.xi), Float::with_val(ctx.prec(), &self.eta))
    }
}

impl fmt::Display for TorsionCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.xi, self.eta)
    }
}

impl Serialize for TorsionCoord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite formal sum `Σ n_P (P)` of points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    terms: BTreeMap<TorsionCoord, i64>,
    degree: i64,
}

impl Divisor {
    /// The zero divisor.
    pub fn new() -> Self {
        Self::default()
    }

    /// Divisor from `(coefficient, point)` pairs; repeated points merge.
    pub fn from_terms<I: IntoIterator<Item = (i64, TorsionCoord)>>(it: I) -> Self {
        let mut d = Self::new();
        for (c, p) in it {
            d.add_term(c, p);
        }
        d
    }

    /// Add `c·(p)`, dropping the entry if it cancels.
    pub fn add_term(&mut self, c: i64, p: TorsionCoord) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&p);
        }
        self.degree += c;
    }

    /// Sum of the coefficients.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Stored terms in a fixed order.
    pub fn terms(&self) -> impl Iterator<Item = (&TorsionCoord, i64)> {
        self.terms.iter().map(|(p, c)| (p, *c))
    }

    /// Whether no terms are stored.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Period ratio `τ` in the upper half-plane with its nome `q = e^{2πiτ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tau {
    /// `τ`.
    pub value: Complex,
    /// `q = e^{2πiτ}`.
    pub q: Complex,
}

impl Tau {
    /// Validate `Im τ > 0` and cache the nome.
    pub fn new(value: Complex, ctx: &PrecisionCtx) -> Result<Self> {
        if *value.imag() <= 0 {
            return Err(Error::Domain("τ must lie in the upper half-plane".into()));
        }
        let prec = ctx.prec();
        let value = Complex::with_val(prec, &value);
        let two_pi_i = Complex::with_val(prec, (0, ctx.pi() * 2u32));
        let q = Complex::with_val(prec, &value * &two_pi_i).exp();
        Ok(Tau { value, q })
    }

    /// `τ = re + i·im`.
    pub fn from_parts(re: &Float, im: &Float, ctx: &PrecisionCtx) -> Result<Self> {
        Self::new(Complex::with_val(ctx.prec(), (re, im)), ctx)
    }

    /// `Im τ`.
    pub fn im(&self) -> Float {
        self.value.imag().clone()
    }

    /// `Re τ`.
    pub fn re(&self) -> Float {
        self.value.real().clone()
    }

    /// `log|q| = -2π Im τ`.
    pub fn log_abs_q(&self, ctx: &PrecisionCtx) -> Float {
        -(ctx.pi() * 2u32) * self.im()
    }

    /// `x = e^{2πi(ξτ+η)}` for real coordinates.
    pub fn point_x(&self, xi: &Float, eta: &Float, ctx: &PrecisionCtx) -> Complex {
        let prec = ctx.prec();
        let u = Complex::with_val(prec, &self.value * xi) + eta;
        let two_pi_i = Complex::with_val(prec, (0, ctx.pi() * 2u32));
        if xi.is_zero() && eta.is_zero() {
            return Complex::with_val(prec, 1);
        }
        (u * two_pi_i).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_and_reduction() {
        let p = TorsionCoord::from_fracs(1, 2, 0, 1);
        let q = TorsionCoord::from_fracs(0, 1, 3, 4);
        let q2 = q.mul(2);
        assert_eq!(q2, TorsionCoord::from_fracs(0, 1, 1, 2));
        assert_eq!(p.add(&q2), TorsionCoord::from_fracs(1, 2, 1, 2));
        assert_eq!(p.mul(2), TorsionCoord::origin());
        assert_eq!(TorsionCoord::from_fracs(-1, 3, 5, 4), TorsionCoord::from_fracs(2, 3, 1, 4));
        assert_eq!(TorsionCoord::parse("1/3, 2").unwrap(), TorsionCoord::from_fracs(1, 3, 0, 1));
        assert!(p.add(&p.neg()).is_origin());
    }

    #[test]
    fn divisor_degree_and_cancellation() {
        let p = TorsionCoord::from_fracs(1, 3, 0, 1);
        let mut d = Divisor::from_terms([(2, p.clone()), (1, TorsionCoord::origin())]);
        assert_eq!(d.degree(), 3);
        d.add_term(-2, p);
        assert_eq!(d.degree(), 1);
        assert_eq!(d.terms().count(), 1);
    }

    #[test]
    fn tau_nome() {
        let ctx = PrecisionCtx::new(30).unwrap();
        let t = Tau::new(ctx.complex((0, 1)), &ctx).unwrap();
        let want = Float::with_val(ctx.prec(), -(ctx.pi() * 2u32)).exp();
        assert!((Float::with_val(ctx.prec(), t.q.real()) - want).abs() < 1e-40);
        assert!(Tau::new(ctx.complex((0.3, -1)), &ctx).is_err());
    }
}
