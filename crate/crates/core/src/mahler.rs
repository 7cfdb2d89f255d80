//! The Mahler measures
//! `n_2(s) = 2m((x+x⁻¹)(y+y⁻¹)(z+z⁻¹) + s^{1/2})`,
//! `n_3(s) = m((x+x⁻¹)²(y+y⁻¹)²(1+z)³z⁻² - s)` and
//! `n_4(s) = 4m(x⁴+y⁴+z⁴+1 + s^{1/4}xyz)` by three routes: elliptic
//! trilogarithms on torsion divisors, Eisenstein–Kronecker lattice sums,
//! and direct quadrature of the torus integral.

use crate::curves::{curve_tau, named_points, CurveParam, DomainCase, Family};
use crate::elliptic::lattice::tail_bound;
use crate::elliptic::{divisor_eval, shell_sum, Divisor, OriginPolicy, PointFn, Tau, TorsionCoord};
use crate::error::{Error, Result};
use crate::numeric::quad::{tanh_sinh, tanh_sinh_tol};
use crate::numeric::roots::poly_roots_c64;
use crate::numeric::PrecisionCtx;
use num_complex::Complex64;
use rug::Float;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// Evaluation route for `n_j(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MahlerRoute {
    /// Truncated lattice sum at the Mahler-side period ratio.
    Lattice,
    /// Torsion-divisor combination of `ℒ^E_{3,1}`, `ℒ^E_{3,2}`.
    Trilog,
    /// Quadrature of the torus integral after Jensen reduction.
    Integral,
}

impl MahlerRoute {
    /// Parse `"lattice"`, `"trilog"` or `"integral"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(Self::Lattice),
            "trilog" => Ok(Self::Trilog),
            "integral" => Ok(Self::Integral),
            _ => Err(Error::Parse(format!("unknown route {s:?}"))),
        }
    }
}

impl fmt::Display for MahlerRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Lattice => "lattice",
            Self::Trilog => "trilog",
            Self::Integral => "integral",
        };
        write!(f, "{s}")
    }
}

/// A value of `n_j(s)` with the route used and its estimated absolute error.
#[derive(Clone, Debug)]
pub struct MahlerResult {
    /// `n_j(s)`.
    pub value: Float,
    /// Route used.
    pub route: MahlerRoute,
    /// Estimated absolute error (always positive).
    pub accuracy_estimate: Float,
}

fn family_of(j: u32) -> Result<Family> {
    match j {
        2 => Ok(Family::E),
        3 => Ok(Family::F),
        4 => Ok(Family::G),
        _ => Err(Error::Domain(format!("n_j is defined for j ∈ {{2, 3, 4}}, got {j}"))),
    }
}

/// `W(z) = 4(Re z)²/|z|⁶ - 1/|z|⁴`.
pub fn kernel_w(z: Complex64) -> f64 {
    let r2 = z.norm_sqr();
    4.0 * z.re * z.re / (r2 * r2 * r2) - 1.0 / (r2 * r2)
}

/// Scaling `c` and prefactor `κ·Im τ/π³` of the lattice formula for `n_j`.
fn prop21_constants(j: u32) -> Result<(f64, f64)> {
    match j {
        2 => Ok((4.0, 2.0)),
        3 => Ok((3.0, 15.0 / 4.0)),
        4 => Ok((2.0, 10.0)),
        _ => Err(Error::Domain(format!("no lattice formula for j = {j}"))),
    }
}

/// Check that `τ` lies in the region where the lattice formula for `n_j`
/// holds: `τ = iy` with `y ≥ 1/2` or `τ = 1/2 + iy` (`j = 2`); `τ = iy`
/// with `y ≥ 1/√3` (`j = 3`); `τ = iy` with `y ≥ 1/√2` or `τ = 1/2 + iy`
/// with `y > 1/2` (`j = 4`).
pub fn check_prop21_hypothesis(j: u32, tau: &Tau, ctx: &PrecisionCtx) -> Result<()> {
    let tol = ctx.tol();
    let re = tau.re();
    let y = tau.im().to_f64();
    let on = |v: f64| Float::with_val(ctx.prec(), &re - v).abs() < tol;
    // Boundary points such as τ = i/√3 at s = 108 are admitted up to rounding.
    let slack = 1e-12;
    let ok = match j {
        2 => (on(0.0) && y >= 0.5 - slack) || on(0.5),
        3 => on(0.0) && y >= 1.0 / 3f64.sqrt() - slack,
        4 => (on(0.0) && y >= 1.0 / 2f64.sqrt() - slack) || (on(0.5) && y > 0.5),
        _ => return Err(Error::Domain(format!("no lattice formula for j = {j}"))),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "τ = {} + {}i is outside the region of the lattice formula for n_{j}",
            re.to_f64(),
            y
        )))
    }
}

/// A truncated real lattice sum with a bound on the omitted shells.
#[derive(Clone, Debug)]
pub struct LatticeEstimate {
    /// Truncated value.
    pub value: Float,
    /// Bound on the truncation error.
    pub tail_estimate: f64,
}

/// `n_j(s_j(q))` as the lattice sum
/// `(κ Im τ/π³) Σ'_{m,n} (c² W(cnτ + m) - W(nτ + m))`
/// with `(c, κ) = (4, 2), (3, 15/4), (2, 10)` for `j = 2, 3, 4`, summed over
/// square shells `max(|m|,|n|) ≤ cutoff`.
pub fn prop21_sum(j: u32, tau: &Tau, cutoff: u32, ctx: &PrecisionCtx) -> Result<LatticeEstimate> {
    if cutoff < 50 {
        return Err(Error::Domain("lattice cutoff must be at least 50".into()));
    }
    check_prop21_hypothesis(j, tau, ctx)?;
    let (c, kappa) = prop21_constants(j)?;
    let t = Complex64::new(tau.re().to_f64(), tau.im().to_f64());
    let ct = t * c;
    let sum: f64 = shell_sum(cutoff, |n, m| {
        let a = ct * n as f64 + m as f64;
        let b = t * n as f64 + m as f64;
        c * c * kernel_w(a) - kernel_w(b)
    });
    let pref = kappa * t.im / PI.powi(3);
    // |W(z)| ≤ 3/|z|⁴.
    let tail = pref * 3.0 * (c * c * tail_bound(ct, 4, cutoff) + tail_bound(t, 4, cutoff));
    Ok(LatticeEstimate { value: Float::with_val(ctx.prec(), pref * sum), tail_estimate: tail })
}

/// The four torsion-divisor formulas for `n_j(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremFormula {
    /// `n_2(s) = (8/3π²)(6ℒ_{3,1} - ℒ_{3,2})((P) - (Q))` on `E_s`, `s ∉ [0, 64]`.
    N2,
    /// `n_3(s) = (3/4π²)(15ℒ_{3,1}((Q)-3(P)-6(P+Q)) + ℒ_{3,2}(3(P)+6(P+Q)-7(Q)-2(O)))`
    /// on `F_s`, `s ≥ 108`.
    ///
    /// The Mahler measure follows this formula only for `s ≥ 128`. Below
    /// that, `z = 1` solves the polynomial on the torus wherever
    /// `16 cos²θ₁ cos²θ₂ = s/8`, `n_3` is not analytic at `s = 128`, and on
    /// `[108, 128)` the formula gives the continuation from `s > 128`
    /// instead (about `10⁻²` lower at `s = 108`).
    N3,
    /// `n_4(s) = (16/9π²)(15ℒ_{3,1}(2(P)-(2Q)+2(P+2Q))
    /// + ℒ_{3,2}(4(Q)-5(P)+2(2Q)+4(P+Q)-5(P+2Q)))` on `G_s`, `s ≥ 256`.
    N4Above256,
    /// `n_4(s) = (8/9π²)(30ℒ_{3,1}(2(2Q)-(P+2Q)+2(P))
    /// + ℒ_{3,2}(5(P+2Q)+8(Q)+8(P+Q)-11(2Q)-10(P)))` on `G_s`, `s < 0`.
    N4Negative,
}

type Terms = &'static [(i64, &'static str)];

impl TheoremFormula {
    /// The formula valid for the given curve, if any.
    pub fn for_curve(c: &CurveParam) -> Result<Self> {
        match c.domain_case {
            DomainCase::EAbove64 | DomainCase::ENegative => Ok(Self::N2),
            DomainCase::EOneRealRoot => Err(Error::Domain(
                "the torsion formula for n_2 does not hold for 0 < s < 64".into(),
            )),
            DomainCase::FHesse => Ok(Self::N3),
            DomainCase::GAbove256 => Ok(Self::N4Above256),
            DomainCase::GNegative => Ok(Self::N4Negative),
        }
    }

    /// `(numerator, denominator)` of the rational prefactor of `1/π²`,
    /// the `ℒ_{3,1}` multiplier, and the two divisors by point name.
    fn data(self) -> ((u32, u32), i64, Terms, Terms) {
        match self {
            Self::N2 => ((8, 3), 6, &[(1, "P"), (-1, "Q")], &[(-1, "P"), (1, "Q")]),
            Self::N3 => (
                (3, 4),
                15,
                &[(1, "Q"), (-3, "P"), (-6, "P+Q")],
                &[(3, "P"), (6, "P+Q"), (-7, "Q"), (-2, "O")],
            ),
            Self::N4Above256 => (
                (16, 9),
                15,
                &[(2, "P"), (-1, "2Q"), (2, "P+2Q")],
                &[(4, "Q"), (-5, "P"), (2, "2Q"), (4, "P+Q"), (-5, "P+2Q")],
            ),
            Self::N4Negative => (
                (8, 9),
                30,
                &[(2, "2Q"), (-1, "P+2Q"), (2, "P")],
                &[(5, "P+2Q"), (8, "Q"), (8, "P+Q"), (-11, "2Q"), (-10, "P")],
            ),
        }
    }

    /// Evaluate the right-hand side at period ratio `tau` with the given
    /// point names. `ℒ_{3,2}` at the origin uses `J_3(1) := 0`.
    pub fn evaluate(self, tau: &Tau, points: &BTreeMap<String, TorsionCoord>, ctx: &PrecisionCtx) -> Result<Float> {
        let ((num, den), k31, d31, d32) = self.data();
        let build = |terms: Terms| -> Result<Divisor> {
            let mut d = Divisor::new();
            for &(c, name) in terms {
                let p = points
                    .get(name)
                    .ok_or_else(|| Error::Domain(format!("point {name} is not defined on this curve")))?;
                d.add_term(c, p.clone());
            }
            Ok(d)
        };
        let w = ctx.widened(5);
        let l31 = divisor_eval(PointFn::L31, tau, &build(d31)?, &w)?;
        let l32 = divisor_eval(PointFn::L32(OriginPolicy::Limit), tau, &build(d32)?, &w)?;
        let pi2 = Float::with_val(w.prec(), w.pi().square_ref());
        let v = (l31 * k31 + l32) * num / den / pi2;
        Ok(Float::with_val(ctx.prec(), v))
    }
}

/// `n_j(s)` by the requested route.
///
/// * `Trilog`: the torsion-divisor formula on the curve period ratio, at
///   full precision.
/// * `Lattice`: [`prop21_sum`] at the Mahler-side period ratio `τ_M`.
/// * `Integral`: [`mahler_integral_oracle`] at default order.
pub fn n_mahler(j: u32, s: &Float, route: MahlerRoute, cutoff: u32, ctx: &PrecisionCtx) -> Result<MahlerResult> {
    let family = family_of(j)?;
    match route {
        MahlerRoute::Integral => {
            let (value, err) = mahler_integral_oracle_with_error(j, s.to_f64(), DEFAULT_QUAD_LEVEL)?;
            Ok(MahlerResult {
                value: Float::with_val(ctx.prec(), value),
                route,
                accuracy_estimate: Float::with_val(ctx.prec(), err.max(1e-12)),
            })
        }
        MahlerRoute::Trilog => {
            let c = CurveParam::new(family, s, ctx)?;
            let formula = TheoremFormula::for_curve(&c)?;
            let pd = curve_tau(&c, ctx)?;
            let value = formula.evaluate(&pd.tau_curve, &named_points(&c), ctx)?;
            Ok(MahlerResult { value, route, accuracy_estimate: ctx.tol() })
        }
        MahlerRoute::Lattice => {
            let c = CurveParam::new(family, s, ctx)?;
            TheoremFormula::for_curve(&c)?;
            let pd = curve_tau(&c, ctx)?;
            let tm = pd
                .tau_mahler
                .ok_or_else(|| Error::Domain("no Mahler-side period ratio for this s".into()))?;
            let est = prop21_sum(j, &tm, cutoff, ctx)?;
            // Double-precision summation error on top of the tail bound.
            let round = est.value.to_f64().abs() * 1e-12;
            Ok(MahlerResult {
                value: est.value,
                route,
                accuracy_estimate: Float::with_val(ctx.prec(), est.tail_estimate + round),
            })
        }
    }
}

/// Default refinement level for the integration oracle.
pub const DEFAULT_QUAD_LEVEL: u32 = 9;

/// `m_z` of the Laurent polynomial in `z` at fixed `x = e^{iθ₁}`,
/// `y = e^{iθ₂}`, by Jensen's formula: `log|lead| + Σ log⁺|root|`.
///
/// * `j = 2`: `A z² + √s z + A`, `A = 4cos θ₁ cos θ₂`.
/// * `j = 3`: `B z³ + (3B - s) z² + 3B z + B`, `B = A²`.
/// * `j = 4`: `z⁴ + s^{1/4} e^{i(θ₁+θ₂)} z + e^{4iθ₁} + e^{4iθ₂} + 1`,
///   with `s^{1/4} = |s|^{1/4} e^{iπ/4}` for `s < 0`.
///
/// For `s < 0` in `n_2` the constant is `i√|s|`. Jensen's formula only
/// sees root moduli, so any choice of root of `s` gives the same measure.
pub fn jensen_integrand(j: u32, s: f64, t1: f64, t2: f64) -> Result<f64> {
    let log_plus = |r: &[Complex64]| r.iter().map(|z| z.norm().ln().max(0.0)).sum::<f64>();
    match j {
        2 => {
            let a = 4.0 * t1.cos() * t2.cos();
            let c = if s >= 0.0 { Complex64::new(s.sqrt(), 0.0) } else { Complex64::new(0.0, (-s).sqrt()) };
            if a == 0.0 {
                return Ok(c.norm().ln());
            }
            // Roots of z² + (c/A) z + 1 with product 1.
            let b = c / a;
            let d = (b * b - 4.0).sqrt();
            let z1 = (-b + d) / 2.0;
            let z2 = (-b - d) / 2.0;
            Ok(a.abs().ln() + z1.norm().ln().max(0.0) + z2.norm().ln().max(0.0))
        }
        3 => {
            let a = 4.0 * t1.cos() * t2.cos();
            let b = a * a;
            if b < 1e-300 {
                return Ok(s.abs().ln());
            }
            // p(z) = B z³ + (3B - s) z² + 3B z + B has p(-1) = -s < 0 < B = p(0),
            // and p(1) = 8B - s. Its roots multiply to -1, so with r₁ ∈ (-1, 0)
            // and, when 8B < s, r₂ ∈ (0, 1), Jensen gives
            // m_z = log B - log|r₁| - [8B < s] log r₂.
            let p = |z: f64| ((b * z + 3.0 * b - s) * z + 3.0 * b) * z + b;
            let mut m = b.ln() - bisect_root(&p, -1.0, 0.0).abs().ln();
            if 8.0 * b < s {
                m -= bisect_root(&p, 0.0, 1.0).ln();
            }
            Ok(m)
        }
        4 => {
            let k = if s >= 0.0 {
                Complex64::new(s.powf(0.25), 0.0)
            } else {
                Complex64::from_polar((-s).powf(0.25), PI / 4.0)
            };
            let lin = k * Complex64::from_polar(1.0, t1 + t2);
            let c0 = Complex64::from_polar(1.0, 4.0 * t1) + Complex64::from_polar(1.0, 4.0 * t2) + 1.0;
            let zero = Complex64::new(0.0, 0.0);
            let roots = poly_roots_c64(&[Complex64::new(1.0, 0.0), zero, zero, lin, c0]);
            Ok(log_plus(&roots))
        }
        _ => Err(Error::Domain(format!("n_j is defined for j ∈ {{2, 3, 4}}, got {j}"))),
    }
}

/// Root of `f` in `[lo, hi]` given a sign change, by bisection to the
/// last bit.
fn bisect_root(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Threshold `k` on `cos θ₁ cos θ₂` at which two roots cross the unit
/// circle (a kink of the Jensen integrand), if one lies inside `(0, 1)`.
fn kink(j: u32, s: f64) -> Option<f64> {
    let k = match j {
        2 if s > 0.0 => s.sqrt() / 8.0,
        3 if s > 0.0 => (s / 128.0).sqrt(),
        _ => return None,
    };
    (k > 0.0 && k < 1.0).then_some(k)
}

/// Tanh-sinh over consecutive panels `[p_i, p_{i+1}]`.
fn panels<F>(mut f: F, pts: &[f64], ctx: &PrecisionCtx, level: u32, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let prec = ctx.prec();
    let tol = Float::with_val(prec, tol);
    let (mut v, mut e) = (0.0, 0.0);
    for w in pts.windows(2) {
        if w[1] - w[0] <= 0.0 {
            continue;
        }
        let r = tanh_sinh_tol(
            |x, _, _| Ok(Float::with_val(prec, f(x.to_f64())?)),
            &Float::with_val(prec, w[0]),
            &Float::with_val(prec, w[1]),
            ctx,
            level,
            &tol,
        )?;
        v += r.value.to_f64();
        e += r.error_estimate.to_f64();
    }
    Ok((v, e))
}

/// Integrate `g(θ₁, θ₂)` over `[0, π/2]²` and return the mean value with
/// an error estimate. Panels are split on the curve
/// `cos θ₁ cos θ₂ = k` when `k` is given.
pub fn torus_mean<G>(g: G, k: Option<f64>, level: u32) -> Result<(f64, f64)>
where
    G: Fn(f64, f64) -> Result<f64>,
{
    let ctx = PrecisionCtx::with_guard(15, 0)?;
    let outer_pts: Vec<f64> = match k {
        Some(k) => vec![0.0, k.acos(), FRAC_PI_2],
        None => vec![0.0, FRAC_PI_2],
    };
    let mut inner_err = 0.0f64;
    let (v, e) = panels(
        |t1| {
            let pts: Vec<f64> = match k {
                Some(k) if t1.cos() > k => vec![0.0, (k / t1.cos()).acos(), FRAC_PI_2],
                _ => vec![0.0, FRAC_PI_2],
            };
            let (iv, ie) = panels(|t2| g(t1, t2), &pts, &ctx, level, 1e-11)?;
            inner_err = inner_err.max(ie);
            Ok(iv)
        },
        &outer_pts,
        &ctx,
        level,
        1e-10,
    )?;
    let area = FRAC_PI_2 * FRAC_PI_2;
    Ok((v / area, (e + inner_err * FRAC_PI_2) / area))
}

/// `n_j(s)` from the torus integral: the `z`-integral by Jensen's formula
/// (see [`jensen_integrand`]) and the remaining mean over `(θ₁, θ₂)` by
/// nested tanh-sinh at refinement `level`, with panels split where roots
/// cross the unit circle. The integrand has period `π/2` in each angle
/// after a rotation of `z`, so `[0, π/2]²` suffices. Returns `2m`, `m`,
/// `4m` for `j = 2, 3, 4`, with an error estimate.
pub fn mahler_integral_oracle_with_error(j: u32, s: f64, level: u32) -> Result<(f64, f64)> {
    let norm = match j {
        2 => 2.0,
        3 => 1.0,
        4 => 4.0,
        _ => return Err(Error::Domain(format!("n_j is defined for j ∈ {{2, 3, 4}}, got {j}"))),
    };
    let (m, e) = torus_mean(|a, b| jensen_integrand(j, s, a, b), kink(j, s), level)?;
    Ok((norm * m, norm * e))
}

/// `n_j(s)` from the torus integral; see [`mahler_integral_oracle_with_error`].
pub fn mahler_integral_oracle(j: u32, s: &Float, quadrature_order: u32, ctx: &PrecisionCtx) -> Result<Float> {
    let (v, _) = mahler_integral_oracle_with_error(j, s.to_f64(), quadrature_order)?;
    Ok(Float::with_val(ctx.prec(), v))
}

/// `n_2(s)` to full working precision by nested tanh-sinh over
/// `[0, π/2]²` of the closed-form Jensen integrand in `A = 4cos θ₁ cos θ₂`:
///
/// * `s < 0`: `m_z = log((√|s| + √(|s| + 4A²))/2)`;
/// * `s ≥ 0`: `m_z = log((√s + √(s - 4A²))/2)` for `|A| < √s/2` and
///   `log|A|` otherwise.
///
/// Panels are split on `cos θ₁ cos θ₂ = √s/8`, the only place the integrand
/// fails to be analytic, so convergence is exponential for every real `s`.
pub fn n2_quadrature(s: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    let w = ctx.widened(5);
    let prec = w.prec();
    let half_pi = Float::with_val(prec, w.pi() / 2u32);
    let zero = Float::with_val(prec, 0);
    let neg = *s < 0;
    let sa = Float::with_val(prec, s.abs_ref());
    let c = Float::with_val(prec, sa.sqrt_ref());
    let k = Float::with_val(prec, &c / 8u32);
    let split = !neg && k > 0 && k < 1;
    let integrand = |t1: &Float, t2: &Float| -> Float {
        let a = Float::with_val(prec, t1.cos_ref()) * Float::with_val(prec, t2.cos_ref()) * 4u32;
        let a2 = Float::with_val(prec, a.square_ref());
        if neg {
            let r = Float::with_val(prec, &sa + Float::with_val(prec, &a2 * 4u32)).sqrt();
            return ((r + &c) / 2u32).ln();
        }
        let d = Float::with_val(prec, &sa - Float::with_val(prec, &a2 * 4u32));
        if d > 0 {
            ((d.sqrt() + &c) / 2u32).ln()
        } else {
            a.abs().ln()
        }
    };
    let inner = |t1: &Float| -> Result<Float> {
        let mut pts = vec![zero.clone()];
        if split {
            let ct = Float::with_val(prec, t1.cos_ref());
            if ct > k {
                pts.push(Float::with_val(prec, &k / &ct).acos());
            }
        }
        pts.push(half_pi.clone());
        let mut acc = Float::with_val(prec, 0);
        for win in pts.windows(2) {
            acc += tanh_sinh(|x, _, _| Ok(integrand(t1, x)), &win[0], &win[1], &w, 12)?.value;
        }
        Ok(acc)
    };
    let mut outer_pts = vec![zero.clone()];
    if split {
        outer_pts.push(Float::with_val(prec, k.acos_ref()));
    }
    outer_pts.push(half_pi.clone());
    let mut total = Float::with_val(prec, 0);
    for win in outer_pts.windows(2) {
        total += tanh_sinh(|x, _, _| inner(x), &win[0], &win[1], &w, 12)?.value;
    }
    let area = Float::with_val(prec, half_pi.square_ref());
    Ok(Float::with_val(ctx.prec(), total / area * 2u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(30).unwrap()
    }

    #[test]
    fn kernel_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let r2 = z.norm_sqr();
            let alt = 1.0 / (r2 * r2) + 2.0 * (z * z).re / (r2 * r2 * r2);
            assert!((kernel_w(z) - alt).abs() < 1e-12 * alt.abs().max(1.0));
        }
    }

    #[test]
    fn hypothesis_checks() {
        let c = ctx();
        let t = |re: f64, im: f64| Tau::from_parts(&c.real(re), &c.real(im), &c).unwrap();
        assert!(prop21_sum(2, &t(0.0, 0.4), 100, &c).is_err());
        assert!(prop21_sum(2, &t(0.5, 0.3), 100, &c).is_ok());
        assert!(prop21_sum(3, &t(0.5, 1.0), 100, &c).is_err());
        assert!(prop21_sum(4, &t(0.5, 0.5), 100, &c).is_err());
        assert!(prop21_sum(4, &t(0.0, 1.0), 20, &c).is_err());
    }

    #[test]
    fn trilog_matches_lattice_within_tail() {
        let c = ctx();
        for (j, s) in [(2u32, 128.0), (2, -512.0), (3, 216.0), (4, 648.0), (4, -1024.0)] {
            let s = c.real(s);
            let t = n_mahler(j, &s, MahlerRoute::Trilog, 0, &c).unwrap();
            let l = n_mahler(j, &s, MahlerRoute::Lattice, 400, &c).unwrap();
            let d = Float::with_val(c.prec(), &t.value - &l.value).abs();
            assert!(d < l.accuracy_estimate, "j = {j}, s = {s}: {} vs {} (tail {})", t.value, l.value, l.accuracy_estimate);
        }
    }

    #[test]
    fn lattice_drift_shrinks_quadratically() {
        let c = ctx();
        let s = c.real(128);
        let exact = n_mahler(2, &s, MahlerRoute::Trilog, 0, &c).unwrap().value.to_f64();
        let d1 = (n_mahler(2, &s, MahlerRoute::Lattice, 100, &c).unwrap().value.to_f64() - exact).abs();
        let d2 = (n_mahler(2, &s, MahlerRoute::Lattice, 200, &c).unwrap().value.to_f64() - exact).abs();
        let order = (d1 / d2).log2();
        assert!(order > 1.5, "observed order {order}");
    }

    #[test]
    fn wrong_n4_branch_disagrees() {
        let c = ctx();
        let cp = CurveParam::from_f64(Family::G, 648.0, &c).unwrap();
        let pd = curve_tau(&cp, &c).unwrap();
        let pts = named_points(&cp);
        let right = TheoremFormula::N4Above256.evaluate(&pd.tau_curve, &pts, &c).unwrap();
        let wrong = TheoremFormula::N4Negative.evaluate(&pd.tau_curve, &pts, &c).unwrap();
        assert!(Float::with_val(c.prec(), &right - &wrong).abs() > 1e-3);
    }

    #[test]
    fn n3_formula_departs_from_measure_below_128() {
        let c = PrecisionCtx::new(20).unwrap();
        for (s, departs) in [(108.0, true), (110.0, true), (120.0, true), (129.0, false), (140.0, false)] {
            let t = n_mahler(3, &c.real(s), MahlerRoute::Trilog, 0, &c).unwrap().value.to_f64();
            let (v, _) = mahler_integral_oracle_with_error(3, s, DEFAULT_QUAD_LEVEL).unwrap();
            assert_eq!((t - v).abs() > 1e-4, departs, "s = {s}: trilog {t}, integral {v}");
        }
    }

    #[test]
    fn n2_at_zero_vanishes() {
        let (v, _) = mahler_integral_oracle_with_error(2, 0.0, DEFAULT_QUAD_LEVEL).unwrap();
        assert!(v.abs() < 1e-6, "{v}");
    }

    #[test]
    fn integral_matches_trilog() {
        let c = PrecisionCtx::new(20).unwrap();
        for (j, s) in [(2u32, -512.0), (2, 128.0), (3, 216.0), (3, 1458.0), (4, 648.0), (4, -1024.0)] {
            let t = n_mahler(j, &c.real(s), MahlerRoute::Trilog, 0, &c).unwrap().value.to_f64();
            let (v, e) = mahler_integral_oracle_with_error(j, s, DEFAULT_QUAD_LEVEL).unwrap();
            assert!((t - v).abs() < 1e-6, "j = {j}, s = {s}: trilog {t}, integral {v} (est {e})");
        }
    }

    #[test]
    fn n4_integrand_symmetric_and_half_domain() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (a, b) = (rng.gen_range(0.0..FRAC_PI_2), rng.gen_range(0.0..FRAC_PI_2));
            let f = jensen_integrand(4, 648.0, a, b).unwrap();
            let g = jensen_integrand(4, 648.0, b, a).unwrap();
            assert!((f - g).abs() < 1e-12);
        }
        let (full, _) = torus_mean(|a, b| jensen_integrand(4, 648.0, a, b), None, DEFAULT_QUAD_LEVEL).unwrap();
        // Mean over the triangle θ₂ ≤ θ₁ equals the mean over the square.
        let (tri, _) = torus_mean(
            |a, b| {
                let t2 = b * a / FRAC_PI_2;
                Ok(jensen_integrand(4, 648.0, a, t2)? * 2.0 * a / FRAC_PI_2)
            },
            None,
            DEFAULT_QUAD_LEVEL,
        )
        .unwrap();
        assert!((full - tri).abs() < 1e-8, "{full} vs {tri}");
    }
}
