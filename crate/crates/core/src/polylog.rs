//! Classical polylogarithms `Li_m`, Zagier's single-valued `ℒ_m`, the
//! Bloch–Wigner dilogarithm, Ramakrishnan's `D_m` and Zagier's `D_{a,b}`.

use crate::error::{Error, Result};
use crate::numeric::{bernoulli_number_f, binom, factorial, log_abs, zeta_int, PrecisionCtx};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Principal logarithm with the cut approached from the upper half-plane
/// for negative reals, independent of the sign of a zero imaginary part.
fn clog(z: &Complex) -> Complex {
    let mut w = z.clone();
    if w.imag().is_zero() {
        w.mut_imag().assign_zero_positive();
    }
    w.ln()
}

trait ZeroPositive {
    fn assign_zero_positive(&mut self);
}

impl ZeroPositive for Float {
    fn assign_zero_positive(&mut self) {
        *self = Float::with_val(self.prec(), 0);
    }
}

fn is_exact_one(z: &Complex) -> bool {
    z.imag().is_zero() && *z.real() == 1
}

/// Complex Bernoulli polynomial `B_n(X)`.
fn bernoulli_poly_c(n: u32, x: &Complex, prec: u32) -> Complex {
    let mut acc = Complex::with_val(prec, 0);
    for k in 0..=n {
        let c = Float::with_val(prec, binom(n as i64, k as i64)) * bernoulli_number_f(k, prec);
        acc = acc * x + c;
    }
    acc
}

/// `Li_1(z), …, Li_m(z)` by the defining series, `|z| < 1`.
fn li_direct(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Vec<Complex> {
    let prec = ctx.prec();
    let mut out = vec![Complex::with_val(prec, 0); m as usize];
    let eps = ctx.eps();
    let mut zn = Complex::with_val(prec, 1);
    let mut n: u32 = 1;
    loop {
        zn *= z;
        let mut t = Complex::with_val(prec, &zn);
        for o in out.iter_mut() {
            t /= n;
            *o += &t;
        }
        // |z^n|/n bounds every remaining Li_j tail up to the factor 1/(1-|z|).
        if Float::with_val(prec, zn.abs_ref()) / n < eps {
            break;
        }
        n += 1;
    }
    out
}

/// `Li_1(z), …, Li_m(z)` by the expansion in `w = log z` around `z = 1`,
/// valid for `|w| < 2π`:
/// `Li_j(z) = Σ_{k≠j-1} ζ(j-k) w^k/k! + w^{j-1}/(j-1)! (H_{j-1} - log(-w))`.
fn li_logseries(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Vec<Complex> {
    let prec = ctx.prec();
    let w = clog(z);
    let wabs = Float::with_val(prec, w.abs_ref()).to_f64();
    let ratio = wabs / (2.0 * std::f64::consts::PI);
    let kmax = if ratio <= 0.0 { m as usize + 2 } else { (ctx.ln_eps() / ratio.ln()).ceil() as usize + m as usize + 4 };
    // P_k = w^k / k!
    let mut pw = Vec::with_capacity(kmax + 1);
    pw.push(Complex::with_val(prec, 1));
    for k in 1..=kmax {
        let next = Complex::with_val(prec, &pw[k - 1] * &w) / k as u32;
        pw.push(next);
    }
    let log_mw = clog(&Complex::with_val(prec, -&w));
    let mut out = Vec::with_capacity(m as usize);
    for j in 1..=m {
        let mut acc = Complex::with_val(prec, 0);
        for (k, p) in pw.iter().enumerate() {
            let k = k as i32;
            if k == j as i32 - 1 {
                continue;
            }
            let zeta = zeta_int(j as i32 - k, prec);
            if zeta.is_zero() {
                continue;
            }
            acc += Complex::with_val(prec, p * &zeta);
        }
        let mut h = Float::with_val(prec, 0);
        for i in 1..j {
            h += Float::with_val(prec, 1) / i;
        }
        let special = Complex::with_val(prec, &pw[j as usize - 1]) * (Complex::with_val(prec, h) - &log_mw);
        acc += special;
        out.push(acc);
    }
    out
}

/// `Li_1(z), …, Li_m(z)` for `|z| ≤ 1`, `z ≠ 1` when `m = 1` is requested.
fn li_upto_unit(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Vec<Complex>> {
    let prec = ctx.prec();
    if z.is_zero() {
        return Ok(vec![Complex::with_val(prec, 0); m as usize]);
    }
    if is_exact_one(z) {
        return Err(Error::Pole("Li_1 at z = 1".into()));
    }
    let r = Float::with_val(prec, z.abs_ref()).to_f64();
    let w = clog(z);
    let wabs = Float::with_val(prec, w.abs_ref()).to_f64();
    let ratio = wabs / (2.0 * std::f64::consts::PI);
    let cost_direct = if r < 1.0 { ctx.ln_eps() / r.ln() } else { f64::INFINITY };
    let cost_log = if ratio < 0.9 { ctx.ln_eps() / ratio.ln() + m as f64 } else { f64::INFINITY };
    if cost_direct.is_infinite() && cost_log.is_infinite() {
        return Err(Error::Unsupported("Li_m: no convergent expansion".into()));
    }
    if cost_direct <= cost_log {
        Ok(li_direct(m, z, ctx))
    } else {
        let mut v = li_logseries(m, z, ctx);
        // Li_1 is elementary; use the exact form for it.
        v[0] = -clog(&Complex::with_val(prec, 1 - z));
        Ok(v)
    }
}

/// Classical polylogarithm `Li_m(z)` on the principal branch with cut
/// `[1, ∞)`; values on the cut are the limits from the lower half-plane.
pub fn li(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    if m == 0 {
        return Err(Error::Domain("polylog order must be at least 1".into()));
    }
    let prec = ctx.prec();
    if m == 1 {
        if is_exact_one(z) {
            return Err(Error::Pole("Li_1 at z = 1".into()));
        }
        let one_minus = Complex::with_val(prec, 1 - z);
        let mut om = one_minus;
        if om.imag().is_zero() {
            // 1 - z negative real: z on the cut, approached from below.
            om = Complex::with_val(prec, (om.real(), 0));
        }
        return Ok(-clog(&om));
    }
    if is_exact_one(z) {
        return Ok(Complex::with_val(prec, zeta_int(m as i32, prec)));
    }
    let n2 = Float::with_val(prec, z.norm_ref());
    if n2 <= 1 {
        return Ok(li_upto_unit(m, z, ctx)?.pop().expect("m ≥ 1"));
    }
    // Li_m(z) = -(-1)^m Li_m(1/z) - (2πi)^m/m! B_m(1/2 + log(-z)/(2πi))
    let inv = Complex::with_val(prec, z.recip_ref());
    let li_inv = li_upto_unit(m, &inv, ctx)?.pop().expect("m ≥ 1");
    let two_pi_i = Complex::with_val(prec, (0, ctx.pi() * 2u32));
    let lmz = clog(&Complex::with_val(prec, -z));
    let arg = Complex::with_val(prec, &lmz / &two_pi_i) + Float::with_val(prec, 0.5);
    let bm = bernoulli_poly_c(m, &arg, prec);
    let pref = Complex::with_val(prec, two_pi_i.pow(m)) / factorial(m, prec);
    let sign = if m % 2 == 0 { -1 } else { 1 };
    Ok(li_inv * sign - pref * bm)
}

fn proj(m: u32, v: &Complex) -> Float {
    if m % 2 == 1 {
        v.real().clone()
    } else {
        v.imag().clone()
    }
}

/// `Li_1(z), …, Li_m(z)` on the principal branch.
pub fn li_upto(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Vec<Complex>> {
    if m == 0 {
        return Err(Error::Domain("polylog order must be at least 1".into()));
    }
    if Float::with_val(ctx.prec(), z.norm_ref()) <= 1 && !is_exact_one(z) {
        return li_upto_unit(m, z, ctx);
    }
    (1..=m).map(|j| li(j, z, ctx)).collect()
}

/// Zagier's single-valued polylogarithm
/// `ℒ_m(z) = ℜ_m(Σ_{k<m} 2^k B_k/k! log^k|z| Li_{m-k}(z))`, with `ℜ_m` the
/// real part for odd `m` and the imaginary part for even `m`, extended to
/// `|z| > 1` by `ℒ_m(1/z) = (-1)^{m-1} ℒ_m(z)`.
#[allow(non_snake_case)]
pub fn zagier_L(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Float> {
    if m == 0 {
        return Err(Error::Domain("polylog order must be at least 1".into()));
    }
    if z.is_zero() {
        return Err(Error::Domain("zagier_L at z = 0".into()));
    }
    let prec = ctx.prec();
    if Float::with_val(prec, z.norm_ref()) > 1 {
        let v = zagier_L(m, &Complex::with_val(prec, z.recip_ref()), ctx)?;
        return Ok(if m % 2 == 1 { v } else { -v });
    }
    if is_exact_one(z) {
        if m == 1 {
            return Err(Error::Pole("ℒ_1 at z = 1".into()));
        }
        let v = Complex::with_val(prec, zeta_int(m as i32, prec));
        return Ok(proj(m, &v));
    }
    let lis = li_upto_unit(m, z, ctx)?;
    let l = log_abs(z);
    let mut acc = Complex::with_val(prec, 0);
    let mut lk = Float::with_val(prec, 1);
    for k in 0..m {
        let b = bernoulli_number_f(k, prec);
        if !b.is_zero() {
            let c = Float::with_val(prec, &lk * &b) * Float::with_val(prec, 2u32).pow(k) / factorial(k, prec);
            acc += Complex::with_val(prec, &lis[(m - k - 1) as usize] * &c);
        }
        lk *= &l;
    }
    Ok(proj(m, &acc))
}

/// Bloch–Wigner dilogarithm `D(z) = Im Li_2(z) + arg(1-z) log|z|`; zero at
/// `z ∈ {0, 1}` by continuity.
pub fn bloch_wigner(z: &Complex, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.prec();
    if z.is_zero() || is_exact_one(z) {
        return Ok(Float::with_val(prec, 0));
    }
    if Float::with_val(prec, z.norm_ref()) > 1 {
        return Ok(-bloch_wigner(&Complex::with_val(prec, z.recip_ref()), ctx)?);
    }
    let l2 = li(2, z, ctx)?;
    let om = Complex::with_val(prec, 1 - z);
    let arg = Float::with_val(prec, om.arg_ref());
    Ok(Float::with_val(prec, l2.imag()) + arg * log_abs(z))
}

/// `D_1(z), …, D_m(z)` for `0 < |z| ≤ 1`, `z ≠ 1`.
fn ramakrishnan_all_unit(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Vec<Float>> {
    let prec = ctx.prec();
    let lis = li_upto_unit(m, z, ctx)?;
    let l = log_abs(z);
    let mut out = Vec::with_capacity(m as usize);
    for j in 1..=m {
        // Σ_{k<j} (-1)^k/k! L^k Li_{j-k}(z) - (-1)^j/(2·j!) L^j
        let mut acc = Complex::with_val(prec, 0);
        let mut lk = Float::with_val(prec, 1);
        for k in 0..j {
            let c = Float::with_val(prec, &lk / factorial(k, prec));
            let t = Complex::with_val(prec, &lis[(j - k - 1) as usize] * &c);
            if k % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
            lk *= &l;
        }
        let tail = Float::with_val(prec, &lk / factorial(j, prec)) / 2u32;
        if j % 2 == 0 {
            acc -= tail;
        } else {
            acc += tail;
        }
        out.push(proj(j, &acc));
    }
    Ok(out)
}

/// `D_1(z), …, D_m(z)` on `ℂ∖{0,1}`, using `D_j(1/z) = (-1)^{j-1} D_j(z)`
/// for `|z| > 1`.
pub fn ramakrishnan_all(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Vec<Float>> {
    if z.is_zero() {
        return Err(Error::Domain("D_m at z = 0".into()));
    }
    let prec = ctx.prec();
    if is_exact_one(z) {
        if m >= 1 {
            return Err(Error::Pole("D_1 at z = 1".into()));
        }
    }
    if Float::with_val(prec, z.norm_ref()) > 1 {
        let mut v = ramakrishnan_all_unit(m, &Complex::with_val(prec, z.recip_ref()), ctx)?;
        for (j, d) in v.iter_mut().enumerate() {
            if j % 2 == 1 {
                *d = -d.clone();
            }
        }
        return Ok(v);
    }
    ramakrishnan_all_unit(m, z, ctx)
}

/// Ramakrishnan–Zagier single-valued polylogarithm `D_m(z)`.
#[allow(non_snake_case)]
pub fn ramakrishnan_D(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Float> {
    if m == 0 {
        return Err(Error::Domain("polylog order must be at least 1".into()));
    }
    if is_exact_one(z) && m >= 2 {
        let v = Complex::with_val(ctx.prec(), zeta_int(m as i32, ctx.prec()));
        return Ok(proj(m, &v));
    }
    Ok(ramakrishnan_all(m, z, ctx)?.pop().expect("m ≥ 1"))
}

fn to_dstar(m: u32, d: Float) -> Complex {
    let prec = d.prec();
    if m % 2 == 1 {
        Complex::with_val(prec, (d, 0))
    } else {
        Complex::with_val(prec, (0, d))
    }
}

/// `D*_m(z)`: `D_m(z)` for odd `m`, `i·D_m(z)` for even `m`.
pub fn dstar(m: u32, z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    Ok(to_dstar(m, ramakrishnan_D(m, z, ctx)?))
}

/// Zagier's coefficient `c^{(l)}_{a,m} = Σ_{h=1}^{a} (-1)^{h-1} C(m-1,h-1) C(l-m,a-h)`.
pub fn c_coeff(a: i64, m: i64, l: i64) -> Result<i64> {
    if a < 1 || m < 1 || a > l || m > l {
        return Err(Error::Domain(format!("c_coeff indices out of range: a={a}, m={m}, l={l}")));
    }
    let mut s = 0;
    for h in 1..=a {
        let t = binom(m - 1, h - 1) * binom(l - m, a - h);
        s += if h % 2 == 1 { t } else { -t };
    }
    Ok(s)
}

/// Zagier's `D_{a,b}(x) = 2 Σ_{m=1}^{r} c^{(r)}_{a,m} D*_m(x) (-log|x|)^{r-m}/(r-m)!
/// + (-2 log|x|)^r/(2·r!)` with `r = a+b-1`.
///
/// The value is complex in general (`D_{b,a} = conj D_{a,b}`) and real
/// for `a = b`.
pub fn dab(a: u32, b: u32, x: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("D_{a,b} needs a, b ≥ 1".into()));
    }
    if x.is_zero() {
        return Err(Error::Domain("D_{a,b} at x = 0".into()));
    }
    let prec = ctx.prec();
    let r = a + b - 1;
    if is_exact_one(x) {
        if r == 1 {
            return Err(Error::Pole("D_{1,1} at x = 1".into()));
        }
        // log|x| = 0 leaves only the m = r term.
        let c = c_coeff(a as i64, r as i64, r as i64)?;
        let ds = dstar(r, x, ctx)?;
        return Ok(ds * (2 * c));
    }
    let d = ramakrishnan_all(r, x, ctx)?;
    let ml = -log_abs(x);
    let mut acc = Complex::with_val(prec, 0);
    for (idx, dm) in d.into_iter().enumerate() {
        let m = idx as u32 + 1;
        let c = c_coeff(a as i64, m as i64, r as i64)?;
        if c == 0 {
            continue;
        }
        let pw = Float::with_val(prec, ml.clone().pow(r - m)) / factorial(r - m, prec);
        acc += to_dstar(m, dm) * pw * (2 * c);
    }
    let last = Float::with_val(prec, Float::with_val(prec, &ml * 2u32).pow(r)) / factorial(r, prec) / 2u32;
    acc += last;
    Ok(acc)
}

/// `D_{a,b}(x)` for `0 < |x| ≤ 1`, `x ≠ 1`, from the polylogarithmic part
/// of each `D_m` only.
///
/// The pure powers of `log|x|` in the defining combination cancel
/// identically, so dropping them leaves a sum of terms that all decay like
/// `|x|` as `x → 0`. This avoids the cancellation of large `log³|x|`
/// terms when `|x|` is tiny, as in the q-series.
pub fn dab_decaying(a: u32, b: u32, x: &Complex, lis: &[Complex], ctx: &PrecisionCtx) -> Result<Complex> {
    if a == 0 || b == 0 {
        return Err(Error::Domain("D_{a,b} needs a, b ≥ 1".into()));
    }
    let prec = ctx.prec();
    let r = a + b - 1;
    if lis.len() < r as usize {
        return Err(Error::Domain("dab_decaying needs Li_1..Li_r".into()));
    }
    let l = log_abs(x);
    let ml = Float::with_val(prec, -&l);
    let mut acc = Complex::with_val(prec, 0);
    for m in 1..=r {
        let c = c_coeff(a as i64, m as i64, r as i64)?;
        if c == 0 {
            continue;
        }
        // D~_m = ℜ_m(Σ_{k<m} (-1)^k/k! L^k Li_{m-k})
        let mut inner = Complex::with_val(prec, 0);
        let mut lk = Float::with_val(prec, 1);
        for k in 0..m {
            let cf = Float::with_val(prec, &lk / factorial(k, prec));
            let t = Complex::with_val(prec, &lis[(m - k - 1) as usize] * &cf);
            if k % 2 == 0 {
                inner += t;
            } else {
                inner -= t;
            }
            lk *= &l;
        }
        let pw = Float::with_val(prec, ml.clone().pow(r - m)) / factorial(r - m, prec);
        acc += to_dstar(m, proj(m, &inner)) * pw * (2 * c);
    }
    Ok(acc)
}

/// `J(x) = log|x| log|1-x|`.
pub fn j_fn(x: &Complex, ctx: &PrecisionCtx) -> Result<Float> {
    if x.is_zero() || is_exact_one(x) {
        return Err(Error::Domain("J is singular at 0 and 1".into()));
    }
    let om = Complex::with_val(ctx.prec(), 1 - x);
    Ok(log_abs(x) * log_abs(&om))
}

/// `J_3(x) = log²|x| log|1-x|`.
pub fn j3_fn(x: &Complex, ctx: &PrecisionCtx) -> Result<Float> {
    if x.is_zero() || is_exact_one(x) {
        return Err(Error::Domain("J_3 is singular at 0 and 1".into()));
    }
    let om = Complex::with_val(ctx.prec(), 1 - x);
    let l = log_abs(x);
    Ok(Float::with_val(ctx.prec(), l.square_ref()) * log_abs(&om))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn cdiff(a: &Complex, b: &Complex) -> f64 {
        Float::with_val(a.prec().0, Complex::with_val(a.prec().0, a - b).abs_ref()).to_f64()
    }

    /// Brute-force oracle: direct series with Euler-transform free
    /// summation, only for |z| ≤ 0.95.
    fn brute_li(m: u32, z: &Complex, terms: u32, prec: u32) -> Complex {
        let mut acc = Complex::with_val(prec, 0);
        let mut zn = Complex::with_val(prec, 1);
        for n in 1..=terms {
            zn *= z;
            acc += Complex::with_val(prec, &zn) / Float::with_val(prec, n).pow(m);
        }
        acc
    }

    #[test]
    fn li_special_values() {
        let c = ctx(40);
        assert!(li(2, &c.complex(0), &c).unwrap().is_zero());
        let z3 = zeta_int(3, c.prec());
        assert!(cdiff(&li(3, &c.complex(1), &c).unwrap(), &c.complex(&z3)) < 1e-40);
        let m1 = li(3, &c.complex(-1), &c).unwrap();
        let want = Float::with_val(c.prec(), &z3 * -3i32) / 4u32;
        assert!(cdiff(&m1, &c.complex(want)) < 1e-40);
        assert!(matches!(li(1, &c.complex(1), &c), Err(Error::Pole(_))));
    }

    #[test]
    fn li_log_series_matches_brute_force() {
        let c = ctx(30);
        for &(re, imv) in &[(0.6, 0.3), (-0.7, 0.2), (0.2, -0.75), (0.66, -0.6)] {
            let z = c.complex((re, imv));
            for m in 1..=4 {
                let got = li_logseries(m, &z, &c)[m as usize - 1].clone();
                let want = brute_li(m, &z, 2000, c.prec());
                assert!(cdiff(&got, &want) < 1e-28, "m={m} z=({re},{imv})");
            }
        }
    }

    #[test]
    fn li_dilog_at_two_on_cut() {
        // Li_2(2) = π²/4 - iπ log 2 (limit from below).
        let c = ctx(40);
        let v = li(2, &c.complex(2), &c).unwrap();
        let pi = c.pi();
        let re_want = Float::with_val(c.prec(), pi.square_ref()) / 4u32;
        let im_want = -Float::with_val(c.prec(), &pi * Float::with_val(c.prec(), 2).ln());
        assert!(cdiff(&v, &c.complex((re_want, im_want))) < 1e-40);
    }

    #[test]
    fn bloch_wigner_values() {
        let c = ctx(40);
        let cat = bloch_wigner(&c.complex((0, 1)), &c).unwrap();
        let catalan = Float::with_val(c.prec(), rug::float::Constant::Catalan);
        assert!((cat - catalan).abs() < 1e-40);
        assert_eq!(bloch_wigner(&c.complex(0.3), &c).unwrap(), 0);
        assert!(bloch_wigner(&c.complex(-2.5), &c).unwrap().abs() < 1e-45);
    }

    #[test]
    fn zagier_l_values() {
        let c = ctx(40);
        let z3 = zeta_int(3, c.prec());
        assert!((zagier_L(3, &c.complex(1), &c).unwrap() - &z3).abs() < 1e-45);
        let a = zagier_L(3, &c.complex(2), &c).unwrap();
        let b = zagier_L(3, &c.complex(0.5), &c).unwrap();
        assert!((a - b).abs() < 1e-45);
        assert!(zagier_L(2, &c.complex(0.37), &c).unwrap().abs() < 1e-45);
        assert!(zagier_L(3, &c.complex(0), &c).is_err());
    }

    #[test]
    fn ramakrishnan_examples() {
        let c = ctx(40);
        let z = c.complex((0.3, -0.55));
        let d2 = ramakrishnan_D(2, &z, &c).unwrap();
        assert!((d2 - bloch_wigner(&z, &c).unwrap()).abs() < 1e-45);
        let x = c.complex((-0.4, 0.6));
        let d1 = ramakrishnan_D(1, &x, &c).unwrap();
        // -log|x^{1/2} - x^{-1/2}|
        let sq = Complex::with_val(c.prec(), x.sqrt_ref());
        let want = -log_abs(&(Complex::with_val(c.prec(), &sq - Complex::with_val(c.prec(), sq.recip_ref()))));
        assert!((d1 - want).abs() < 1e-45);
        let d3 = dstar(3, &z, &c).unwrap();
        assert!(d3.imag().is_zero());
        assert!((Float::with_val(c.prec(), d3.real()) - ramakrishnan_D(3, &z, &c).unwrap()).abs() < 1e-45);
    }

    #[test]
    fn ramakrishnan_direct_formula_agrees_past_the_unit_circle() {
        // The defining combination is single-valued on all of ℂ∖{0,1};
        // evaluate it literally at |z| > 1 and compare with the inversion.
        let c = ctx(30);
        let z = c.complex((1.3, 0.9));
        let lis: Vec<Complex> = (1..=3).map(|m| li(m, &z, &c).unwrap()).collect();
        let l = log_abs(&z);
        for j in 1..=3u32 {
            let mut acc = Complex::with_val(c.prec(), 0);
            for k in 0..j {
                let cf = Float::with_val(c.prec(), l.clone().pow(k)) / factorial(k, c.prec());
                let t = Complex::with_val(c.prec(), &lis[(j - k - 1) as usize] * &cf);
                if k % 2 == 0 { acc += t } else { acc -= t }
            }
            let tail = Float::with_val(c.prec(), l.clone().pow(j)) / factorial(j, c.prec()) / 2u32;
            if j % 2 == 0 { acc -= tail } else { acc += tail }
            let direct = proj(j, &acc);
            let via = ramakrishnan_D(j, &z, &c).unwrap();
            assert!((direct - via).abs() < 1e-28, "j={j}");
        }
    }

    #[test]
    fn c_coeff_examples() {
        assert_eq!(c_coeff(1, 1, 1).unwrap(), 1);
        assert_eq!(c_coeff(1, 1, 3).unwrap(), 1);
        assert_eq!(c_coeff(2, 2, 3).unwrap(), 0);
        assert_eq!(c_coeff(3, 2, 3).unwrap(), -1);
        assert!(c_coeff(4, 1, 3).is_err());
    }

    #[test]
    fn dab_one_one_is_log() {
        let c = ctx(40);
        let x = c.complex((0.2, 0.5));
        let v = dab(1, 1, &x, &c).unwrap();
        let want = log_abs(&Complex::with_val(c.prec(), 1 - &x)) * -2i32;
        assert!(cdiff(&v, &c.complex(want)) < 1e-45);
    }

    #[test]
    fn j_functions() {
        let c = ctx(30);
        assert!(j_fn(&c.complex((0, 1)), &c).unwrap().abs() < 1e-40);
        assert!(j_fn(&c.complex(2), &c).unwrap().abs() < 1e-40);
        let l2 = Float::with_val(c.prec(), 2).ln();
        let want = -Float::with_val(c.prec(), l2.clone().pow(3u32));
        assert!((j3_fn(&c.complex(0.5), &c).unwrap() - want).abs() < 1e-40);
        assert!(j3_fn(&c.complex(1), &c).is_err());
    }

    #[test]
    fn dab_decaying_matches_definition() {
        let c = ctx(30);
        for &(re, imv) in &[(0.3, 0.4), (-0.7, 0.1), (0.01, -0.02), (0.5, -0.85)] {
            let x = c.complex((re, imv));
            let lis = li_upto(3, &x, &c).unwrap();
            for (a, b) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
                let full = dab(a, b, &x, &c).unwrap();
                let red = dab_decaying(a, b, &x, &lis, &c).unwrap();
                assert!(cdiff(&full, &red) < 1e-29, "({a},{b}) at ({re},{imv})");
            }
        }
    }

    fn random_point(re: f64, imv: f64) -> Complex {
        Complex::with_val(200, (re, imv))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn zagier_inversion(re in -2.5f64..2.5, imv in -2.5f64..2.5, m in 2u32..=4) {
            prop_assume!(re * re + imv * imv > 1e-3);
            let c = ctx(30);
            let z = random_point(re, imv);
            let a = zagier_L(m, &z, &c).unwrap();
            let b = zagier_L(m, &Complex::with_val(c.prec(), z.recip_ref()), &c).unwrap();
            let sign = if m % 2 == 1 { 1 } else { -1 };
            prop_assert!((a - Float::with_val(c.prec(), b * sign)).abs() < 1e-29);
        }

        #[test]
        fn bloch_wigner_is_zagier_two(re in -2.5f64..2.5, imv in -2.5f64..2.5) {
            prop_assume!(re * re + imv * imv > 1e-3);
            let c = ctx(30);
            let z = random_point(re, imv);
            let a = bloch_wigner(&z, &c).unwrap();
            let b = zagier_L(2, &z, &c).unwrap();
            prop_assert!((a.clone() - b).abs() < 1e-29);
            let conj = Complex::with_val(c.prec(), z.conj_ref());
            prop_assert!((a + bloch_wigner(&conj, &c).unwrap()).abs() < 1e-29);
        }

        #[test]
        fn dab_functional_equation_and_inversion(re in -2.0f64..2.0, imv in 0.05f64..2.0, a in 1u32..=4, b in 1u32..=4) {
            prop_assume!(a + b <= 5);
            let c = ctx(30);
            let x = random_point(re, imv);
            let r = a + b - 1;
            let l = log_abs(&x);
            let lhs = dab(a, b, &Complex::with_val(c.prec(), x.recip_ref()), &c).unwrap();
            let sign = if (r - 1) % 2 == 0 { 1 } else { -1 };
            let extra = Float::with_val(c.prec(), Float::with_val(c.prec(), &l * 2u32).pow(r)) / factorial(r, c.prec());
            let rhs = dab(a, b, &x, &c).unwrap() * sign + extra;
            prop_assert!(cdiff(&lhs, &rhs) < 1e-28);
            // D_{b,a} = conj D_{a,b}
            let ba = dab(b, a, &x, &c).unwrap();
            let ab = dab(a, b, &x, &c).unwrap();
            prop_assert!(cdiff(&ba, &Complex::with_val(c.prec(), ab.conj_ref())) < 1e-28);
        }

        #[test]
        fn dab_inversion_formula(re in -1.0f64..1.0, imv in 0.05f64..1.0, m in 1u32..=4, n in 0u32..=3) {
            prop_assume!(m + n <= 4 && m + n >= 1);
            // D*_m(x)(-log|x|)^n/n! = Σ_{a+b=r+1} c^{(r)}_{m,a}(D_{a,b}(x)/2^r - (-log|x|)^r/(2·r!)), r = m+n
            let c = ctx(30);
            let x = random_point(re, imv);
            let r = m + n;
            let ml = -log_abs(&x);
            let lhs = dstar(m, &x, &c).unwrap() * (Float::with_val(c.prec(), ml.clone().pow(n)) / factorial(n, c.prec()));
            let mut rhs = Complex::with_val(c.prec(), 0);
            let corr = Float::with_val(c.prec(), ml.clone().pow(r)) / factorial(r, c.prec()) / 2u32;
            for a in 1..=r {
                let b = r + 1 - a;
                let cf = c_coeff(m as i64, a as i64, r as i64).unwrap();
                let d = dab(a, b, &x, &c).unwrap() / Float::with_val(c.prec(), 2u32).pow(r) - &corr;
                rhs += d * cf;
            }
            prop_assert!(cdiff(&lhs, &rhs) < 1e-28);
        }

        #[test]
        fn dab_diagonal_is_real(re in -2.0f64..2.0, imv in 0.05f64..2.0, a in 1u32..=3) {
            let c = ctx(30);
            let x = random_point(re, imv);
            let v = dab(a, a, &x, &c).unwrap();
            prop_assert!(v.imag().clone().abs() < 1e-29);
        }
    }
}
