//! Bernoulli numbers (exact, cached) and Bernoulli polynomials.

use rug::{Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

fn table() -> &'static Mutex<Vec<Rational>> {
    static T: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(vec![Rational::from(1)]))
}

/// Exact Bernoulli number `B_k` with the convention `B_1 = -1/2`.
pub fn bernoulli_number(k: u32) -> Rational {
    let k = k as usize;
    if k > 1 && k % 2 == 1 {
        return Rational::new();
    }
    let mut t = table().lock().expect("bernoulli table poisoned");
    while t.len() <= k {
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let m = t.len();
        let mut acc = Rational::new();
        let mut c = Integer::from(1);
        for (j, b) in t.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(&c * b.numer()) / b.denom().clone();
            }
            c = c * (m + 1 - j) / (j + 1);
        }
        t.push(-acc / Integer::from(m + 1));
    }
    t[k].clone()
}

/// `B_k` rounded to precision `prec`.
pub fn bernoulli_number_f(k: u32, prec: u32) -> Float {
    Float::with_val(prec, &bernoulli_number(k))
}

/// Bernoulli polynomial `B_n(X) = Σ_k C(n,k) B_k X^{n-k}`.
pub fn bernoulli_poly(n: u32, x: &Float) -> Float {
    let prec = x.prec();
    // Horner form in X over the coefficients C(n,k) B_k of X^{n-k}.
    let mut acc = Float::with_val(prec, 0);
    let mut c = Integer::from(1);
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        coeffs.push(Rational::from(&c * bernoulli_number(k)));
        c = c * (n - k) / (k + 1);
    }
    for coef in coeffs.iter() {
        acc *= x;
        acc += coef;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rug::ops::Pow;

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(0), 1);
        assert_eq!(bernoulli_number(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli_number(2), Rational::from((1, 6)));
        assert_eq!(bernoulli_number(3), 0);
        assert_eq!(bernoulli_number(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli_number(20), Rational::from((-174611, 330)));
    }

    #[test]
    fn cubic_polynomial_values() {
        let z = Float::with_val(128, 0);
        assert_eq!(bernoulli_poly(3, &z), 0);
        // B_3(X) = X^3 - (3/2)X^2 + (1/2)X vanishes at 1/2.
        let h = Float::with_val(128, 0.5);
        assert_eq!(bernoulli_poly(3, &h), 0);
        let x = Float::with_val(128, 0.3);
        let direct: Float = Float::with_val(128, &x * &x) * &x - Float::with_val(128, &x * &x) * 1.5 + Float::with_val(128, &x * 0.5);
        assert!((bernoulli_poly(3, &x) - direct).abs() < 1e-35);
    }

    proptest! {
        #[test]
        fn difference_equation(n in 1u32..=10, x in -3.0f64..3.0) {
            let x = Float::with_val(200, x);
            let lhs = bernoulli_poly(n, &Float::with_val(200, &x + 1)) - bernoulli_poly(n, &x);
            let rhs = Float::with_val(200, x.clone().pow(n - 1)) * n;
            prop_assert!(Float::with_val(200, lhs - rhs).abs() < 1e-50);
        }
    }

}
