//! The curve families `E_s`, `F_s`, `G_s`: their real parameters, period
//! ratios by hypergeometric ratios and by the AGM, the argument `τ` at
//! which the parameter function `s_j` recovers `s`, the named torsion
//! points, and `j`-invariants.

use crate::elliptic::{Tau, TorsionCoord};
use crate::error::{Error, Result};
use crate::modular::{ft_real, j_classical};
use crate::numeric::{agm, PrecisionCtx};
use rug::ops::Pow;
use rug::{Complex, Float};
use std::collections::BTreeMap;
use std::fmt;

/// Curve family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `E_s: y² = (x-1)(x² - s/(s-64))`.
    E,
    /// `F_s: x³ + y³ + 1 - r x y = 0`, `r³ = (s + √(s(s-108)))/2`.
    F,
    /// `G_s: y² = (x-1)(x-r')(x+r')`, `r'² = (1 + √(1-256/s))/2`.
    G,
}

impl Family {
    /// Index `j` of the parameter function `s_j` and Mahler measure `n_j`.
    pub fn j_index(self) -> u32 {
        match self {
            Family::E => 2,
            Family::F => 3,
            Family::G => 4,
        }
    }

    /// Parse `"E"`, `"F"` or `"G"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(Error::Parse(format!("unknown curve family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Range of `s` selecting the period formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainCase {
    /// `E_s`, `s > 64`: three real roots `-r < 1 < r`.
    EAbove64,
    /// `E_s`, `s < 0`: three real roots `-r < r < 1`.
    ENegative,
    /// `E_s`, `0 < s < 64`: one real root; the curve of the `P = Q`
    /// proposition and the two conjectural `n_2` evaluations.
    EOneRealRoot,
    /// `F_s`, `s ≥ 108`.
    FHesse,
    /// `G_s`, `s ≥ 256`: `r' ∈ [1/√2, 1)`.
    GAbove256,
    /// `G_s`, `s < 0`: `r' > 1`.
    GNegative,
}

/// A member of one of the three families.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveParam {
    /// Family tag.
    pub family: Family,
    /// Real parameter.
    pub s: Float,
    /// `√(s/(s-64))` for `E` (its modulus when `0 < s < 64`, where
    /// `r² < 0`), the real cube root for `F`, unused (zero) for `G`.
    pub r: Float,
    /// `√((1 + √(1-256/s))/2)` for `G`, unused (zero) otherwise.
    pub r_prime: Float,
    /// Validity case.
    pub domain_case: DomainCase,
}

impl CurveParam {
    /// Validate `s` for the family and derive `r`, `r'`.
    pub fn new(family: Family, s: &Float, ctx: &PrecisionCtx) -> Result<Self> {
        let prec = ctx.prec();
        let s = Float::with_val(prec, s);
        let zero = Float::with_val(prec, 0);
        match family {
            Family::E => {
                if s.is_zero() || s == 64 {
                    return Err(Error::SingularCurve(format!("E_s is singular at s = {}", s.to_f64())));
                }
                let case = if s > 64 {
                    DomainCase::EAbove64
                } else if s < 0 {
                    DomainCase::ENegative
                } else {
                    DomainCase::EOneRealRoot
                };
                let den = Float::with_val(prec, &s - 64u32);
                let r = Float::with_val(prec, &s / &den).abs().sqrt();
                Ok(Self { family, s, r, r_prime: zero, domain_case: case })
            }
            Family::F => {
                if s < 108 {
                    return Err(Error::Domain("F_s needs s ≥ 108".into()));
                }
                let disc = Float::with_val(prec, &s * Float::with_val(prec, &s - 108u32)).sqrt();
                let r = (Float::with_val(prec, &s + disc) / 2u32).cbrt();
                Ok(Self { family, s, r, r_prime: zero, domain_case: DomainCase::FHesse })
            }
            Family::G => {
                let case = if s >= 256 {
                    DomainCase::GAbove256
                } else if s < 0 {
                    DomainCase::GNegative
                } else {
                    return Err(Error::Domain("G_s needs s ≥ 256 or s < 0".into()));
                };
                let inner = Float::with_val(prec, 1 - Float::with_val(prec, 256u32 / &s)).sqrt();
                let rp = (inner + 1u32).sqrt() / Float::with_val(prec, 2u32).sqrt();
                Ok(Self { family, s, r: zero, r_prime: rp, domain_case: case })
            }
        }
    }

    /// Convenience constructor from an `f64`-representable `s`.
    pub fn from_f64(family: Family, s: f64, ctx: &PrecisionCtx) -> Result<Self> {
        Self::new(family, &Float::with_val(ctx.prec(), s), ctx)
    }

    /// Roots `e_1 > e_2 > e_3` of the cubic when all three are real.
    pub fn real_roots(&self, ctx: &PrecisionCtx) -> Option<[Float; 3]> {
        let prec = ctx.prec();
        let one = Float::with_val(prec, 1);
        match self.domain_case {
            DomainCase::EAbove64 => Some([self.r.clone(), one, -self.r.clone()]),
            DomainCase::ENegative => Some([one, self.r.clone(), -self.r.clone()]),
            DomainCase::GAbove256 => Some([one, self.r_prime.clone(), -self.r_prime.clone()]),
            DomainCase::GNegative => Some([self.r_prime.clone(), one, -self.r_prime.clone()]),
            _ => None,
        }
    }
}

/// Period ratio of a family member and the matching modular argument.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    /// Normalized period ratio `τ` of the curve, `E ≅ ℂ/(ℤ+ℤτ)`.
    pub tau_curve: Tau,
    /// Argument at which `s_j(e^{2πiτ}) = s`; absent for `0 < s < 64` on `E`.
    pub tau_mahler: Option<Tau>,
    /// Real period from the AGM, when the cubic has three real roots.
    pub omega1: Option<Complex>,
    /// Complex period from the AGM, when the cubic has three real roots.
    pub omega2: Option<Complex>,
}

fn f2_ratio_tau(num_arg: &Float, den_arg: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let n = ft_real(2, num_arg, ctx)?;
    let d = ft_real(2, den_arg, ctx)?;
    Ok(Complex::with_val(ctx.prec(), (0, n / d)))
}

fn minus_inv_2(t: &Complex, prec: u32) -> Complex {
    -Complex::with_val(prec, Complex::with_val(prec, t * 2u32).recip_ref())
}

fn cayley_half(t: &Complex, prec: u32) -> Complex {
    Complex::with_val(prec, t - 1u32) / Complex::with_val(prec, t * 2u32)
}

/// Period ratio `τ` from hypergeometric ratios, the Mahler-side argument,
/// and (for three real roots) the AGM periods.
///
/// * `E`, `s > 64`: `τ = i F_2((r-1)/2r)/F_2((r+1)/2r)`, `τ_M = -1/(2τ)`.
/// * `E`, `s < 0`: `τ = i F_2((1-r)/(1+r))/F_2(2r/(1+r))`, `τ_M = (τ-1)/(2τ)`.
/// * `E`, `0 < s < 64`: `τ` from [`tau_one_real_root`], no `τ_M`.
/// * `F`: `τ = i√3 F_3(27/r³)/F_3(1-27/r³)`, `τ_M = -1/τ`.
/// * `G`, `s ≥ 256`: `τ = i F_2((1-r')/(1+r'))/F_2(2r'/(1+r'))`, `τ_M = -1/(2τ)`.
/// * `G`, `s < 0`: `τ = i F_2((r'-1)/2r')/F_2((r'+1)/2r')`, `τ_M = (τ-1)/(2τ)`.
pub fn curve_tau(c: &CurveParam, ctx: &PrecisionCtx) -> Result<PeriodData> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let one = Float::with_val(prec, 1);
    let (tau, tm) = match c.domain_case {
        DomainCase::EAbove64 => {
            let r2 = Float::with_val(prec, &c.r * 2u32);
            let a = Float::with_val(prec, &c.r - 1u32) / &r2;
            let b = Float::with_val(prec, &c.r + 1u32) / &r2;
            let t = f2_ratio_tau(&a, &b, &w)?;
            let m = minus_inv_2(&t, prec);
            (t, Some(m))
        }
        DomainCase::ENegative | DomainCase::GAbove256 => {
            let x = if c.family == Family::E { &c.r } else { &c.r_prime };
            let den = Float::with_val(prec, x + 1u32);
            let a = Float::with_val(prec, 1 - x) / &den;
            let b = Float::with_val(prec, x * 2u32) / &den;
            let t = f2_ratio_tau(&a, &b, &w)?;
            let m = if c.family == Family::E { cayley_half(&t, prec) } else { minus_inv_2(&t, prec) };
            (t, Some(m))
        }
        DomainCase::GNegative => {
            let r2 = Float::with_val(prec, &c.r_prime * 2u32);
            let a = Float::with_val(prec, &c.r_prime - 1u32) / &r2;
            let b = Float::with_val(prec, &c.r_prime + 1u32) / &r2;
            let t = f2_ratio_tau(&a, &b, &w)?;
            let m = cayley_half(&t, prec);
            (t, Some(m))
        }
        DomainCase::EOneRealRoot => {
            let r2 = -Float::with_val(prec, c.r.square_ref());
            (tau_one_real_root(&r2, &w)?, None)
        }
        DomainCase::FHesse => {
            let k3 = Float::with_val(prec, c.r.clone().pow(3u32));
            let a = Float::with_val(prec, 27u32 / &k3);
            let b = Float::with_val(prec, &one - &a);
            let ratio = ft_real(3, &a, &w)? / ft_real(3, &b, &w)? * Float::with_val(prec, 3).sqrt();
            let t = Complex::with_val(prec, (0, ratio));
            let m = -Complex::with_val(prec, t.recip_ref());
            (t, Some(m))
        }
    };
    let (omega1, omega2) = match c.real_roots(&w) {
        Some([a, b, cc]) => {
            let (o1, o2) = periods_agm(&a, &b, &cc, ctx)?;
            (Some(o1), Some(o2))
        }
        None => (None, None),
    };
    Ok(PeriodData {
        tau_curve: Tau::new(tau, ctx)?,
        tau_mahler: tm.map(|m| Tau::new(m, ctx)).transpose()?,
        omega1,
        omega2,
    })
}

/// Real and complex periods of `y² = (x-a)(x-b)(x-c)`, `a > b > c`:
/// `ω_1 = π/AGM(√(a-c), √(a-b))`, `ω_2 = iπ/AGM(√(a-c), √(b-c))`.
///
/// The roots may be given in any order.
pub fn periods_agm(e1: &Float, e2: &Float, e3: &Float, ctx: &PrecisionCtx) -> Result<(Complex, Complex)> {
    let prec = ctx.prec();
    let mut v = [Float::with_val(prec, e1), Float::with_val(prec, e2), Float::with_val(prec, e3)];
    v.sort_by(|x, y| y.partial_cmp(x).expect("finite roots"));
    let [a, b, c] = v;
    if a == b || b == c {
        return Err(Error::SingularCurve("coincident roots".into()));
    }
    let ac = Float::with_val(prec, &a - &c).sqrt();
    let ab = Float::with_val(prec, &a - &b).sqrt();
    let bc = Float::with_val(prec, &b - &c).sqrt();
    let w1 = ctx.pi() / agm(&ac, &ab, ctx)?;
    let w2 = ctx.pi() / agm(&ac, &bc, ctx)?;
    Ok((Complex::with_val(prec, w1), Complex::with_val(prec, (0, w2))))
}

/// Period ratio of `y² = (x-1)(x² - r²)` with `r² < 0` (one real root):
/// `τ = 1/2 + i·AGM(2(1-r²)^{1/4}, √(2(√(1-r²)+1))) / (2 AGM(2(1-r²)^{1/4}, √(2(√(1-r²)-1))))`.
pub fn tau_one_real_root(r_squared: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    if *r_squared >= 0 {
        return Err(Error::Domain("one-real-root period formula needs r² < 0".into()));
    }
    let prec = ctx.prec();
    let s = Float::with_val(prec, 1 - r_squared).sqrt();
    let a = Float::with_val(prec, s.sqrt_ref()) * 2u32;
    let b1 = (Float::with_val(prec, &s + 1u32) * 2u32).sqrt();
    let b2 = (Float::with_val(prec, &s - 1u32) * 2u32).sqrt();
    let im = agm(&a, &b1, ctx)? / (agm(&a, &b2, ctx)? * 2u32);
    Ok(Complex::with_val(prec, (Float::with_val(prec, 0.5), im)))
}

/// Named torsion points of a family member, as `ξτ + η` coordinates.
///
/// * `E`, `s > 64`: `P ↦ τ/2`, `Q ↦ 1/2`.
/// * `E`, `s < 0`: `P ↦ τ/2`, `Q ↦ (1+τ)/2`.
/// * `E`, `0 < s < 64`: `P ↦ (1+τ)/2`, `Q ↦ τ/2`, and the real
///   two-torsion point `R = (1, 0) ↦ 1/2`.
/// * `F`: `O ↦ 0`, `P ↦ 1/3`, `Q ↦ τ/3`, `P+Q`.
/// * `G`: `P ↦ τ/2`, `Q ↦ 3/4`, `2Q`, `P+Q`, `P+2Q`.
pub fn named_points(c: &CurveParam) -> BTreeMap<String, TorsionCoord> {
    let mut m = BTreeMap::new();
    m.insert("O".to_string(), TorsionCoord::origin());
    match c.domain_case {
        DomainCase::EAbove64 => {
            m.insert("P".into(), TorsionCoord::from_fracs(1, 2, 0, 1));
            m.insert("Q".into(), TorsionCoord::from_fracs(0, 1, 1, 2));
        }
        DomainCase::ENegative => {
            m.insert("P".into(), TorsionCoord::from_fracs(1, 2, 0, 1));
            m.insert("Q".into(), TorsionCoord::from_fracs(1, 2, 1, 2));
        }
        DomainCase::EOneRealRoot => {
            m.insert("P".into(), TorsionCoord::from_fracs(1, 2, 1, 2));
            m.insert("Q".into(), TorsionCoord::from_fracs(1, 2, 0, 1));
            m.insert("R".into(), TorsionCoord::from_fracs(0, 1, 1, 2));
        }
        DomainCase::FHesse => {
            let p = TorsionCoord::from_fracs(0, 1, 1, 3);
            let q = TorsionCoord::from_fracs(1, 3, 0, 1);
            m.insert("P+Q".into(), p.add(&q));
            m.insert("P".into(), p);
            m.insert("Q".into(), q);
        }
        DomainCase::GAbove256 | DomainCase::GNegative => {
            let p = TorsionCoord::from_fracs(1, 2, 0, 1);
            let q = TorsionCoord::from_fracs(0, 1, 3, 4);
            let q2 = q.mul(2);
            m.insert("P+Q".into(), p.add(&q));
            m.insert("P+2Q".into(), p.add(&q2));
            m.insert("2Q".into(), q2);
            m.insert("P".into(), p);
            m.insert("Q".into(), q);
        }
    }
    m
}

/// Point names used by the torsion linear relations on a generic curve:
/// `P ↦ τ/3`, `Q ↦ 1/3`, `R ↦ τ/2`, `S ↦ 3/4`, `O ↦ 0`.
pub fn generic_points() -> BTreeMap<String, TorsionCoord> {
    let mut m = BTreeMap::new();
    m.insert("O".to_string(), TorsionCoord::origin());
    m.insert("P".into(), TorsionCoord::from_fracs(1, 3, 0, 1));
    m.insert("Q".into(), TorsionCoord::from_fracs(0, 1, 1, 3));
    m.insert("R".into(), TorsionCoord::from_fracs(1, 2, 0, 1));
    m.insert("S".into(), TorsionCoord::from_fracs(0, 1, 3, 4));
    m
}

/// `j` of `y² = x³ + a_2 x² + a_4 x + a_6` from `c_4` and the discriminant:
/// `b_2 = 4a_2`, `b_4 = 2a_4`, `b_6 = 4a_6`, `b_8 = 4a_2a_6 - a_4²`,
/// `c_4 = b_2² - 24 b_4`,
/// `Δ = -b_2² b_8 - 8 b_4³ - 27 b_6² + 9 b_2 b_4 b_6`, `j = c_4³/Δ`.
pub fn j_weierstrass(a2: &Complex, a4: &Complex, a6: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.prec();
    let b2 = Complex::with_val(prec, a2 * 4u32);
    let b4 = Complex::with_val(prec, a4 * 2u32);
    let b6 = Complex::with_val(prec, a6 * 4u32);
    let b8 = Complex::with_val(prec, a2 * a6) * 4u32 - Complex::with_val(prec, a4.square_ref());
    let b22 = Complex::with_val(prec, b2.square_ref());
    let c4 = Complex::with_val(prec, &b22 - Complex::with_val(prec, &b4 * 24u32));
    let disc = -Complex::with_val(prec, &b22 * &b8) - b4.clone().pow(3u32) * 8u32
        - Complex::with_val(prec, b6.square_ref()) * 27u32
        + Complex::with_val(prec, &b2 * &b4) * &b6 * 9u32;
    if Float::with_val(prec, disc.abs_ref()) < ctx.eps() {
        return Err(Error::SingularCurve("vanishing discriminant".into()));
    }
    Ok(c4.pow(3u32) / disc)
}

/// `j`-invariant of a family member.
///
/// * `F`: `j = (k(k³+216)/(k³-27))³` with `k = r`.
/// * `G`: `j = 64(u²+3)³(3u²+1)³/((u²-1)⁴(u²+1)²)` with
///   `s = -2¹⁰u⁴/(u⁴-1)²`; here `u = r' + √(r'²-1)`, which satisfies
///   `r' = (u + u^{-1})/2` and fixes the branch of `u²`.
/// * `E`: from the Weierstrass model `y² = x³ - x² - r²x + r²`.
pub fn j_invariant(c: &CurveParam, ctx: &PrecisionCtx) -> Result<Complex> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let v = match c.family {
        Family::F => {
            let k3 = Float::with_val(prec, c.r.clone().pow(3u32));
            let den = Float::with_val(prec, &k3 - 27u32);
            if den.is_zero() {
                return Err(Error::SingularCurve("r³ = 27".into()));
            }
            let base = Float::with_val(prec, &c.r * Float::with_val(prec, &k3 + 216u32)) / den;
            Complex::with_val(prec, base.pow(3u32))
        }
        Family::G => {
            let rp = Complex::with_val(prec, &c.r_prime);
            let d = Complex::with_val(prec, rp.square_ref()) - 1u32;
            let u = rp + d.sqrt();
            let u2 = Complex::with_val(prec, u.square_ref());
            let a = Complex::with_val(prec, &u2 + 3u32).pow(3u32);
            let b = (Complex::with_val(prec, &u2 * 3u32) + 1u32).pow(3u32);
            let m = Complex::with_val(prec, &u2 - 1u32).pow(4u32);
            let p = Complex::with_val(prec, &u2 + 1u32).pow(2u32);
            a * b * 64u32 / (m * p)
        }
        Family::E => {
            let r2 = if c.domain_case == DomainCase::EOneRealRoot {
                -Float::with_val(prec, c.r.square_ref())
            } else {
                Float::with_val(prec, c.r.square_ref())
            };
            let a2 = Complex::with_val(prec, -1);
            let a4 = Complex::with_val(prec, -&r2);
            let a6 = Complex::with_val(prec, &r2);
            j_weierstrass(&a2, &a4, &a6, &w)?
        }
    };
    Ok(Complex::with_val(ctx.prec(), v))
}

/// `j` of the period ratio itself, through Eisenstein series.
pub fn j_of_tau(tau: &Tau, ctx: &PrecisionCtx) -> Result<Complex> {
    j_classical(&tau.value, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{j_from_g3, s_param, weber_g3};

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn rel(a: &Complex, b: &Complex) -> f64 {
        let p = a.prec().0;
        Float::with_val(p, Complex::with_val(p, a - b).abs_ref()).to_f64()
            / (1.0 + Float::with_val(p, b.abs_ref()).to_f64())
    }

    #[test]
    fn domains() {
        let c = ctx(30);
        assert!(matches!(CurveParam::from_f64(Family::E, 64.0, &c), Err(Error::SingularCurve(_))));
        assert!(matches!(CurveParam::from_f64(Family::E, 0.0, &c), Err(Error::SingularCurve(_))));
        assert!(CurveParam::from_f64(Family::F, 100.0, &c).is_err());
        assert!(CurveParam::from_f64(Family::G, 100.0, &c).is_err());
        assert_eq!(CurveParam::from_f64(Family::E, 32.0, &c).unwrap().domain_case, DomainCase::EOneRealRoot);
    }

    #[test]
    fn e256_root() {
        // s = 256 gives r = 2/√3, so x² - r² = x² - 4/3.
        let c = ctx(40);
        let cp = CurveParam::from_f64(Family::E, 256.0, &c).unwrap();
        let want = Float::with_val(c.prec(), 4) / 3u32;
        assert!((Float::with_val(c.prec(), cp.r.square_ref()) - want).abs() < c.tol());
    }

    #[test]
    fn round_trips() {
        let c = ctx(40);
        let cases: [(Family, f64); 9] = [
            (Family::E, 128.0),
            (Family::E, -512.0),
            (Family::E, 80.0),
            (Family::F, 108.0),
            (Family::F, 216.0),
            (Family::F, 1458.0),
            (Family::G, 256.0),
            (Family::G, 648.0),
            (Family::G, -1024.0),
        ];
        for (fam, s) in cases {
            let cp = CurveParam::from_f64(fam, s, &c).unwrap();
            let pd = curve_tau(&cp, &c).unwrap();
            let tm = pd.tau_mahler.clone().unwrap();
            let v = s_param(fam.j_index(), &tm.value, &c).unwrap();
            assert!(rel(&v, &c.complex(s)) < 1e-40, "{fam} {s}: {v}");
            if let (Some(o1), Some(o2)) = (&pd.omega1, &pd.omega2) {
                let ratio = Complex::with_val(c.prec(), o2 / o1);
                assert!(rel(&ratio, &pd.tau_curve.value) < 1e-40);
            }
            if matches!(cp.domain_case, DomainCase::EAbove64 | DomainCase::ENegative) {
                assert!(pd.tau_curve.re().is_zero());
            }
        }
    }

    #[test]
    fn one_real_root_case() {
        let c = ctx(40);
        let cp = CurveParam::from_f64(Family::E, 32.0, &c).unwrap();
        let pd = curve_tau(&cp, &c).unwrap();
        assert_eq!(pd.tau_curve.re(), 0.5);
        assert!(pd.tau_mahler.is_none());
        // The curve's j matches j(τ).
        let j1 = j_invariant(&cp, &c).unwrap();
        let j2 = j_of_tau(&pd.tau_curve, &c).unwrap();
        assert!(rel(&j1, &j2) < 1e-35);
    }

    #[test]
    fn periods_translation_invariant() {
        let c = ctx(30);
        let (a, b, d) = (c.real(2.5), c.real(0.25), c.real(-1.75));
        let (w1, w2) = periods_agm(&a, &b, &d, &c).unwrap();
        let (v1, v2) = periods_agm(&(a + 1u32), &(b + 1u32), &(d + 1u32), &c).unwrap();
        assert!(rel(&w1, &v1) < 1e-30 && rel(&w2, &v2) < 1e-30);
        assert!(periods_agm(&c.real(1), &c.real(1), &c.real(0), &c).is_err());
    }

    #[test]
    fn j_closed_forms() {
        let c = ctx(40);
        for s in [108.0, 200.0, 1458.0] {
            let cp = CurveParam::from_f64(Family::F, s, &c).unwrap();
            let pd = curve_tau(&cp, &c).unwrap();
            let j = j_invariant(&cp, &c).unwrap();
            assert!(j.imag().is_zero());
            assert!(rel(&j, &j_of_tau(&pd.tau_curve, &c).unwrap()) < 1e-35);
            let m = pd.tau_mahler.unwrap();
            assert!(rel(&j, &j_from_g3(&m.value, &c).unwrap()) < 1e-35);
        }
        // 𝔤_3^{12}(-1/τ) = 729/(k³-27) at k = 5, i.e. s = k⁶/(k³-27).
        let s = 15625.0 / 98.0;
        let cp = CurveParam::from_f64(Family::F, s, &c).unwrap();
        assert!((cp.r.to_f64() - 5.0).abs() < 1e-12);
        let m = curve_tau(&cp, &c).unwrap().tau_mahler.unwrap();
        let g12 = weber_g3(&m.value, &c).unwrap().pow(12u32);
        assert!(rel(&g12, &c.complex(729.0 / 98.0)) < 1e-14);
        for s in [256.0, 512.0, 648.0, -1024.0, -8.0] {
            let cp = CurveParam::from_f64(Family::G, s, &c).unwrap();
            let j = j_invariant(&cp, &c).unwrap();
            let rp2 = Complex::with_val(c.prec(), cp.r_prime.square_ref());
            let jw = j_weierstrass(&c.complex(-1), &(-rp2.clone()), &rp2, &c).unwrap();
            assert!(rel(&j, &jw) < 1e-35, "s = {s}");
            let pd = curve_tau(&cp, &c).unwrap();
            assert!(rel(&j, &j_of_tau(&pd.tau_curve, &c).unwrap()) < 1e-33);
        }
    }

    #[test]
    fn named_point_arithmetic() {
        let c = ctx(30);
        let g = named_points(&CurveParam::from_f64(Family::G, 648.0, &c).unwrap());
        assert_eq!(g["P+2Q"], g["P"].add(&g["2Q"]));
        assert_eq!(g["2Q"], TorsionCoord::from_fracs(0, 1, 1, 2));
        assert_eq!(g["P+Q"], TorsionCoord::from_fracs(1, 2, 3, 4));
        let e = named_points(&CurveParam::from_f64(Family::E, -512.0, &c).unwrap());
        assert_eq!(e["Q"], TorsionCoord::from_fracs(1, 2, 1, 2));
        let e = named_points(&CurveParam::from_f64(Family::E, 128.0, &c).unwrap());
        assert_eq!(e["P"], TorsionCoord::from_fracs(1, 2, 0, 1));
    }
}
