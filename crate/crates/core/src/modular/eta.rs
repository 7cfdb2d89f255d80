//! Dedekind eta, the discriminant `Δ = η^24` and truncated eta-product
//! `q`-expansions.

use crate::error::{Error, Result};
use crate::numeric::PrecisionCtx;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

fn check_upper(tau: &Complex) -> Result<()> {
    if *tau.imag() <= 0 {
        return Err(Error::Domain("τ must lie in the upper half-plane".into()));
    }
    Ok(())
}

/// `e^{2πiτ/24}` on the principal branch `τ ↦ 2πiτ/24`.
fn q24(tau: &Complex, ctx: &PrecisionCtx) -> Complex {
    let prec = ctx.prec();
    let i = Complex::with_val(prec, (0, 1));
    (Complex::with_val(prec, tau * &i) * (ctx.pi() / 12u32)).exp()
}

/// Euler's pentagonal series `η(τ) = q^{1/24} Σ_{k∈ℤ} (-1)^k q^{k(3k-1)/2}`
/// evaluated directly, without any modular reduction.
///
/// The cost grows like `1/Im τ`; [`eta`] reduces `τ` first.
pub fn eta_series(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    check_upper(tau)?;
    let prec = ctx.prec();
    let y = tau.imag().to_f64();
    let two_pi_y = 2.0 * std::f64::consts::PI * y;
    let q = {
        let i = Complex::with_val(prec, (0, 1));
        (Complex::with_val(prec, tau * &i) * (ctx.pi() * 2u32)).exp()
    };
    let mut acc = Complex::with_val(prec, 1);
    let budget = -ctx.ln_eps() + 5.0;
    let mut k: u64 = 1;
    loop {
        let e1 = k * (3 * k - 1) / 2;
        if two_pi_y * e1 as f64 > budget {
            break;
        }
        let e2 = k * (3 * k + 1) / 2;
        let t = q.clone().pow(e1 as u32) + q.clone().pow(e2 as u32);
        if k % 2 == 1 {
            acc -= t;
        } else {
            acc += t;
        }
        k += 1;
        if k > 10_000_000 {
            return Err(Error::Accuracy("pentagonal series budget exceeded".into()));
        }
    }
    Ok(acc * q24(tau, ctx))
}

/// Dedekind eta `η(τ) = q^{1/24} Π_{n≥1} (1 - q^n)`.
///
/// `τ` is moved towards the standard fundamental domain with
/// `η(τ+1) = e^{πi/12} η(τ)` and `η(-1/τ) = √(-iτ) η(τ)`, then the
/// pentagonal series is summed at the reduced point.
pub fn eta(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    check_upper(tau)?;
    let w = ctx.widened(5);
    let prec = w.prec();
    let mut t = Complex::with_val(prec, tau);
    let mut factor = Complex::with_val(prec, 1);
    let i = Complex::with_val(prec, (0, 1));
    for _ in 0..1000 {
        let n = t.real().to_f64().round();
        if n != 0.0 {
            t -= Float::with_val(prec, n);
            // η(t+n) = e^{πin/12} η(t)
            let ph = Complex::with_val(prec, &i * (w.pi() * n / 12u32)).exp();
            factor *= ph;
        }
        let norm = Float::with_val(prec, t.norm_ref());
        if norm >= 0.999_999 {
            let v = eta_series(&t, &w)?;
            return Ok(Complex::with_val(ctx.prec(), v * factor));
        }
        // η(t) = η(-1/t)/√(-it)
        let s = Complex::with_val(prec, -Complex::with_val(prec, &i * &t)).sqrt();
        factor /= s;
        t = Complex::with_val(prec, -Complex::with_val(prec, t.recip_ref()));
    }
    Err(Error::Accuracy("modular reduction of τ did not terminate".into()))
}

/// Discriminant `Δ(τ) = η(τ)^24`.
pub fn delta(tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let e = eta(tau, &ctx.widened(3))?;
    Ok(Complex::with_val(ctx.prec(), e.pow(24u32)))
}

/// Truncated `q`-expansion `q^{prefactor_exponent} Σ_{n<length} c_n q^n`.
///
/// The tail bound is valid for every `|q| ≤ q_radius`: the difference
/// between the full function and the truncated sum (both without the
/// prefactor) has modulus at most `tail_bound` there.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    /// Exponent of the leading power of `q`.
    pub prefactor_exponent: Rational,
    /// Exact integer coefficients `c_0, …, c_{length-1}`.
    pub coeffs: Vec<Integer>,
    /// Number of stored coefficients.
    pub length: usize,
    /// Radius for which [`Self::tail_bound`] holds.
    pub q_radius: f64,
    /// Bound on the truncation error for `|q| ≤ q_radius`.
    pub tail_bound: f64,
}

impl QExpansion {
    /// `Π_{n≥1} (1 - q^{mn})` truncated to `length` terms, with prefactor
    /// `q^{m/24}`. Its nonzero coefficients are `±1` at `m·k(3k±1)/2`.
    pub fn eta_at(m: u32, length: usize, q_radius: f64) -> Result<Self> {
        if m == 0 || !(0.0..1.0).contains(&q_radius) {
            return Err(Error::Domain("eta expansion needs m ≥ 1 and 0 ≤ |q| < 1".into()));
        }
        let mut coeffs = vec![Integer::new(); length];
        coeffs[0] = Integer::from(1);
        let m = m as u64;
        let mut k: u64 = 1;
        loop {
            let e1 = m * k * (3 * k - 1) / 2;
            if e1 as usize >= length {
                break;
            }
            let e2 = (m * k * (3 * k + 1) / 2) as usize;
            let sign = if k % 2 == 1 { -1 } else { 1 };
            coeffs[e1 as usize] += sign;
            if e2 < length {
                coeffs[e2] += sign;
            }
            k += 1;
        }
        // Omitted coefficients are ±1 or 0 and start at index ≥ length.
        let tail_bound = q_radius.powi(length as i32) / (1.0 - q_radius);
        Ok(Self { prefactor_exponent: Rational::from((m, 24u64)), coeffs, length, q_radius, tail_bound })
    }

    /// Product of two expansions truncated to the shorter length, with a
    /// tail bound accounting for both truncations and the dropped part of
    /// the convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.q_radius != other.q_radius {
            return Err(Error::Domain("q-expansions bounded on different radii".into()));
        }
        let len = self.length.min(other.length);
        let r = self.q_radius;
        let mut full = vec![Integer::new(); 2 * len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len).enumerate() {
                if !b.is_zero() {
                    full[i + j] += Integer::from(a * b);
                }
            }
        }
        let abs_sum = |c: &[Integer], from: usize| -> f64 {
            c.iter().enumerate().skip(from).map(|(n, v)| v.to_f64().abs() * r.powi(n as i32)).sum()
        };
        // Truncations of the factors to `len` terms add their own tails.
        let ta = self.tail_bound + abs_sum(&self.coeffs[..self.length], len);
        let tb = other.tail_bound + abs_sum(&other.coeffs[..other.length], len);
        let fa = abs_sum(&self.coeffs[..len], 0);
        let fb = abs_sum(&other.coeffs[..len], 0);
        let dropped = abs_sum(&full, len);
        let tail = (dropped + fa * tb + fb * ta + ta * tb) * (1.0 + 1e-12);
        full.truncate(len);
        Ok(Self {
            prefactor_exponent: Rational::from(&self.prefactor_exponent + &other.prefactor_exponent),
            coeffs: full,
            length: len,
            q_radius: r,
            tail_bound: tail,
        })
    }

    /// Eta product `Π_m η(mτ)^{e_m}` for positive exponents.
    pub fn eta_product(factors: &[(u32, u32)], length: usize, q_radius: f64) -> Result<Self> {
        let mut acc = Self {
            prefactor_exponent: Rational::new(),
            coeffs: {
                let mut v = vec![Integer::new(); length];
                v[0] = Integer::from(1);
                v
            },
            length,
            q_radius,
            tail_bound: 0.0,
        };
        for &(m, e) in factors {
            let base = Self::eta_at(m, length, q_radius)?;
            for _ in 0..e {
                acc = acc.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Value at `τ`, including the prefactor `e^{2πiτ·prefactor_exponent}`.
    pub fn eval(&self, tau: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
        check_upper(tau)?;
        let prec = ctx.prec();
        let i = Complex::with_val(prec, (0, 1));
        let two_pi_i_tau = Complex::with_val(prec, tau * &i) * (ctx.pi() * 2u32);
        let q = Complex::with_val(prec, two_pi_i_tau.exp_ref());
        let mut acc = Complex::with_val(prec, 0);
        for c in self.coeffs.iter().rev() {
            acc *= &q;
            acc += Float::with_val(prec, c);
        }
        let pe = Float::with_val(prec, &self.prefactor_exponent);
        Ok(acc * (two_pi_i_tau * pe).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionCtx {
        PrecisionCtx::new(d).unwrap()
    }

    fn dist(a: &Complex, b: &Complex) -> f64 {
        Float::with_val(a.prec().0, Complex::with_val(a.prec().0, a - b).abs_ref()).to_f64()
    }

    fn random_taus(n: usize) -> Vec<(f64, f64)> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        (0..n).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0))).collect()
    }

    #[test]
    fn eta_at_i() {
        // η(i) = Γ(1/4)/(2π^{3/4})
        let c = ctx(40);
        let v = eta(&c.complex((0, 1)), &c).unwrap();
        let g = crate::numeric::gamma_real(&c.real(0.25), &c).unwrap();
        let p34 = c.pi().pow(Float::with_val(c.prec(), 0.75));
        let want = g / (p34 * 2u32);
        assert!(dist(&v, &c.complex(&want)) < 1e-40);
        // Two truncation levels of the bare series agree.
        let lo = eta_series(&c.complex((0, 1)), &c.with_digits(30)).unwrap();
        assert!(dist(&lo, &v) < 1e-30);
    }

    #[test]
    fn eta_transformations() {
        let c = ctx(40);
        let i = c.complex((0, 1));
        for (x, y) in random_taus(8) {
            let t = c.complex((x, y));
            let e = eta_series(&t, &c).unwrap();
            let t1 = Complex::with_val(c.prec(), &t + 1u32);
            let ph = Complex::with_val(c.prec(), &i * (c.pi() / 12u32)).exp();
            assert!(dist(&eta_series(&t1, &c).unwrap(), &(ph * &e)) < 1e-40);
            let inv = Complex::with_val(c.prec(), -Complex::with_val(c.prec(), t.recip_ref()));
            let s = Complex::with_val(c.prec(), -Complex::with_val(c.prec(), &i * &t)).sqrt();
            assert!(dist(&eta_series(&inv, &c).unwrap(), &(s * &e)) < 1e-40);
            assert!(dist(&eta(&t, &c).unwrap(), &e) < 1e-40);
        }
        // Reduction matters near the real axis.
        let t = c.complex((0.31, 0.01));
        let direct = eta_series(&t, &c).unwrap();
        assert!(dist(&eta(&t, &c).unwrap(), &direct) < 1e-40 * (1.0 + direct.abs().real().to_f64()));
    }

    #[test]
    fn delta_period_one() {
        let c = ctx(30);
        let t = c.complex((0.2, 0.8));
        let t1 = Complex::with_val(c.prec(), &t + 1u32);
        let r = delta(&t, &c).unwrap() / delta(&t1, &c).unwrap();
        assert!(dist(&r, &c.complex(1)) < 1e-30);
    }

    #[test]
    fn pentagonal_coefficients() {
        let e = QExpansion::eta_at(1, 30, 0.5).unwrap();
        let want: [i32; 30] = [
            1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0,
        ];
        for (a, b) in e.coeffs.iter().zip(want) {
            assert_eq!(*a, b);
        }
        assert_eq!(e.prefactor_exponent, Rational::from((1, 24)));
    }

    #[test]
    fn eta_product_within_tail_bound() {
        // η(τ)^3 η(7τ)^3 against the analytic value.
        let c = ctx(30);
        let t = c.complex((0.1, 0.9));
        let r = (-2.0 * std::f64::consts::PI * 0.9f64).exp();
        let f = QExpansion::eta_product(&[(1, 3), (7, 3)], 12, r).unwrap();
        let v = f.eval(&t, &c).unwrap();
        let t7 = Complex::with_val(c.prec(), &t * 7u32);
        let want = eta(&t, &c).unwrap().pow(3u32)
            * eta(&t7, &c).unwrap().pow(3u32);
        // The prefactor has modulus r^{prefactor}; compare without it.
        let pre = r.powf(f.prefactor_exponent.to_f64());
        assert!(dist(&v, &want) / pre <= f.tail_bound);
        assert!(f.tail_bound < 1e-20);
        assert_eq!(f.coeffs[0], 1);
        assert_eq!(f.coeffs[1], -3);
    }
}
