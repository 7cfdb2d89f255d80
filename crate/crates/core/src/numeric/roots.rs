//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use crate::error::{Error, Result};
use num_complex::Complex64;
use rug::{Complex, Float};

fn eval_with_derivative(coeffs: &[Complex], z: &Complex, prec: u32) -> (Complex, Complex) {
    // Horner for p and p'; coeffs[0] is the leading coefficient.
    let mut p = Complex::with_val(prec, &coeffs[0]);
    let mut dp = Complex::with_val(prec, 0);
    for c in &coeffs[1..] {
        dp = Complex::with_val(prec, &dp * z) + &p;
        p = Complex::with_val(prec, &p * z) + c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[i] z^{n-i}` (leading coefficient first).
///
/// Iterates until every correction is below `2^-(prec-8)` relative to the
/// root modulus.
pub fn poly_roots(coeffs: &[Complex], prec: u32) -> Result<Vec<Complex>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if coeffs[0].is_zero() {
        return Err(Error::Domain("leading coefficient is zero".into()));
    }
    // Initial guesses on a circle of Cauchy-bound radius, rotated off axes.
    let lead = Float::with_val(prec, coeffs[0].abs_ref());
    let mut radius = 0f64;
    for c in &coeffs[1..] {
        let r = (Float::with_val(prec, c.abs_ref()) / &lead).to_f64();
        radius = radius.max(r);
    }
    let radius = (1.0 + radius).min(1e12);
    let mut z: Vec<Complex> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            let rr = radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64);
            Complex::with_val(prec, (rr * ang.cos(), rr * ang.sin()))
        })
        .collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 8));
    for _ in 0..(20 * prec as usize + 200) {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(coeffs, &z[i], prec);
            if p.is_zero() {
                continue;
            }
            let ratio = Complex::with_val(prec, &p / &dp);
            let mut s = Complex::with_val(prec, 0);
            for j in 0..n {
                if j != i {
                    s += Complex::with_val(prec, 1) / Complex::with_val(prec, &z[i] - &z[j]);
                }
            }
            let denom = Complex::with_val(prec, 1) - Complex::with_val(prec, &ratio * &s);
            let w = ratio / denom;
            let scale = Float::with_val(prec, z[i].abs_ref()).max(&Float::with_val(prec, 1));
            if Float::with_val(prec, w.abs_ref()) > Float::with_val(prec, &tol * &scale) {
                done = false;
            }
            z[i] -= w;
        }
        if done {
            return Ok(z);
        }
    }
    Err(Error::Accuracy("polynomial root iteration did not converge".into()))
}

/// Roots of a polynomial with complex `f64` coefficients (leading
/// first) by Aberth–Ehrlich iteration in double precision.
///
/// Never fails: after 500 sweeps the current estimates are returned.
/// An `m`-fold root is only determined to about `ε^{1/m}` in double
/// precision, since `p` evaluates to rounding noise on a disc of that
/// radius; the returned cluster lies inside that disc.
pub fn poly_roots_c64(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[0] == Complex64::new(0.0, 0.0) {
        return Vec::new();
    }
    let lead = coeffs[0].norm();
    let radius = (1.0 + coeffs[1..].iter().map(|c| c.norm() / lead).fold(0.0, f64::max)).min(1e12);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64), ang)
        })
        .collect();
    for _ in 0..500 {
        let mut done = true;
        for i in 0..n {
            let (mut p, mut dp) = (coeffs[0], Complex64::new(0.0, 0.0));
            for c in &coeffs[1..] {
                dp = dp * z[i] + p;
                p = p * z[i] + c;
            }
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.is_finite() {
                continue;
            }
            if w.norm() > 4.0 * f64::EPSILON * z[i].norm().max(1.0) {
                done = false;
            }
            z[i] -= w;
        }
        if done {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_with_known_roots() {
        // (z-1)(z+2)(z-3i) = z^3 + (1-3i) z^2 + (-2-3i) z + 6i
        let prec = 200;
        let c = vec![
            Complex::with_val(prec, (1, 0)),
            Complex::with_val(prec, (1, -3)),
            Complex::with_val(prec, (-2, -3)),
            Complex::with_val(prec, (0, 6)),
        ];
        let r = poly_roots(&c, prec).unwrap();
        for want in [(1.0, 0.0), (-2.0, 0.0), (0.0, 3.0)] {
            let w = Complex::with_val(prec, want);
            assert!(r.iter().any(|z| Float::with_val(prec, (Complex::with_val(prec, z - &w)).abs_ref()) < 1e-50));
        }
    }

    #[test]
    fn quartic_f64() {
        // z^4 - 1
        let c = |a: f64| Complex64::new(a, 0.0);
        let r = poly_roots_c64(&[c(1.0), c(0.0), c(0.0), c(0.0), c(-1.0)]);
        assert_eq!(r.len(), 4);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-14);
        }
        // (z + 1)³: each root within the ε^{1/3} ≈ 6e-6 noise disc.
        let r = poly_roots_c64(&[c(1.0), c(3.0), c(3.0), c(1.0)]);
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!((z + 1.0).norm() < 2e-5, "{r:?}");
        }
    }
}
