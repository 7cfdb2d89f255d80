//! Integer relation detection by PSLQ (Ferguson–Bailey) over MPFR reals.

use crate::error::{Error, Result};
use crate::numeric::{pow10, PrecisionCtx};
use rug::{Float, Integer};
use serde::Serialize;

/// An integer vector `c` with `Σ cᵢ xᵢ ≈ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerRelation {
    /// Coefficients, not all zero, normalized so the first nonzero entry is
    /// positive.
    pub coefficients: Vec<i64>,
    /// `|Σ cᵢ xᵢ|` rendered as a decimal string.
    pub residual: String,
    /// Bound on `max|cᵢ|` the search was run with.
    pub norm_bound: i64,
}

/// Decimal digits the input values must carry for a search with the given
/// length and coefficient bound: twice `n·log₁₀(bound)`, plus ten digits of
/// margin for the noise-floor test.
pub fn digits_needed(n: usize, norm_bound: i64) -> u32 {
    let per = (norm_bound.max(2) as f64).log10();
    (2.0 * n as f64 * per).ceil() as u32 + 10
}

fn nint(x: &Float) -> Integer {
    x.to_integer().unwrap_or_default()
}

/// PSLQ search for an integer relation among `values` with
/// `max|cᵢ| ≤ norm_bound`.
///
/// A relation is returned only when both hold:
///
/// * the residual `|Σ cᵢ xᵢ|` is below `10^{-digits/2}`;
/// * at the step where the relation appears, the next smallest entry of
///   the reduced vector is at least `10¹⁰` times larger, so the detection
///   is not a roundoff artefact.
///
/// `None` means no relation within the bound exists at this precision:
/// either the lower bound `1/max|H_jj|` on the norm of any relation
/// exceeded `norm_bound`, or the iteration limit was reached.
///
/// Errors with [`Error::Precision`] when the context carries fewer digits
/// than [`digits_needed`], and with [`Error::Domain`] for fewer than two
/// values or a zero vector.
pub fn find_relation(values: &[Float], norm_bound: i64, ctx: &PrecisionCtx) -> Result<Option<IntegerRelation>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::Domain("integer relation search needs at least two values".into()));
    }
    if norm_bound < 1 {
        return Err(Error::Domain("norm bound must be positive".into()));
    }
    let digits = ctx.working_digits();
    let need = digits_needed(n, norm_bound);
    if digits < need {
        return Err(Error::Precision(format!(
            "{n} values with norm bound {norm_bound} need {need} digits, context has {digits}"
        )));
    }
    let prec = ctx.prec();
    let x: Vec<Float> = values.iter().map(|v| Float::with_val(prec, v)).collect();

    // Leading zero entries give trivial relations.
    for (i, v) in x.iter().enumerate() {
        if v.is_zero() {
            let mut c = vec![0i64; n];
            c[i] = 1;
            return Ok(Some(IntegerRelation { coefficients: c, residual: "0".into(), norm_bound }));
        }
    }

    let gamma = Float::with_val(prec, Float::with_val(prec, 4) / 3u32).sqrt();
    let detect = pow10(prec, -((digits as i32) * 3 / 4));
    let accept_residual = pow10(prec, -((digits / 2) as i32));

    // Partial norms s_k = √(Σ_{j≥k} x_j²).
    let mut s = vec![Float::with_val(prec, 0); n];
    let mut acc = Float::with_val(prec, 0);
    for k in (0..n).rev() {
        acc += Float::with_val(prec, x[k].square_ref());
        s[k] = Float::with_val(prec, acc.sqrt_ref());
    }
    let s0 = s[0].clone();
    let mut y: Vec<Float> = x.iter().map(|v| Float::with_val(prec, v / &s0)).collect();
    for sk in s.iter_mut() {
        *sk /= &s0;
    }

    // H is n × (n-1), lower trapezoidal.
    let mut h = vec![vec![Float::with_val(prec, 0); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            if i == j {
                h[i][j] = Float::with_val(prec, &s[j + 1] / &s[j]);
            } else {
                let num = Float::with_val(prec, &y[i] * &y[j]);
                let den = Float::with_val(prec, &s[j] * &s[j + 1]);
                h[i][j] = -(num / den);
            }
        }
    }
    let mut a: Vec<Vec<Integer>> = (0..n)
        .map(|i| (0..n).map(|j| Integer::from((i == j) as i32)).collect())
        .collect();
    let mut b = a.clone();

    let reduce_row = |i: usize,
                      upto: usize,
                      y: &mut Vec<Float>,
                      h: &mut Vec<Vec<Float>>,
                      a: &mut Vec<Vec<Integer>>,
                      b: &mut Vec<Vec<Integer>>| {
        for j in (0..=upto).rev() {
            if h[j][j].is_zero() {
                continue;
            }
            let t = nint(&Float::with_val(prec, &h[i][j] / &h[j][j]));
            if t == 0 {
                continue;
            }
            let yi = Float::with_val(prec, &y[i] * &t);
            y[j] += yi;
            for k in 0..=j {
                let d = Float::with_val(prec, &h[j][k] * &t);
                h[i][k] -= d;
            }
            for k in 0..n {
                let d = Integer::from(&a[j][k] * &t);
                a[i][k] -= d;
                let e = Integer::from(&b[k][i] * &t);
                b[k][j] += e;
            }
        }
    };

    for i in 1..n {
        reduce_row(i, (i - 1).min(n - 2), &mut y, &mut h, &mut a, &mut b);
    }

    let max_iter = 200 * n * (digits as usize);
    for _ in 0..max_iter {
        // Choose the row maximizing γ^i |H_ii|.
        let mut m = 0;
        let mut best = Float::with_val(prec, -1);
        let mut gp = Float::with_val(prec, 1);
        for i in 0..n - 1 {
            gp *= &gamma;
            let v = Float::with_val(prec, &gp * Float::with_val(prec, h[i][i].abs_ref()));
            if v > best {
                best = v;
                m = i;
            }
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m < n - 2 {
            let t0 = (Float::with_val(prec, h[m][m].square_ref()) + Float::with_val(prec, h[m][m + 1].square_ref())).sqrt();
            let t1 = Float::with_val(prec, &h[m][m] / &t0);
            let t2 = Float::with_val(prec, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let t3 = row[m].clone();
                let t4 = row[m + 1].clone();
                row[m] = Float::with_val(prec, &t1 * &t3) + Float::with_val(prec, &t2 * &t4);
                row[m + 1] = Float::with_val(prec, &t1 * &t4) - Float::with_val(prec, &t2 * &t3);
            }
        }
        for i in m + 1..n {
            reduce_row(i, (i - 1).min(m + 1), &mut y, &mut h, &mut a, &mut b);
        }

        // Smallest and second smallest |y_j|.
        let mut order: Vec<(usize, Float)> = y.iter().enumerate().map(|(i, v)| (i, Float::with_val(prec, v.abs_ref()))).collect();
        order.sort_by(|p, q| p.1.partial_cmp(&q.1).unwrap_or(std::cmp::Ordering::Equal));
        let (jmin, ymin) = &order[0];
        if *ymin < detect {
            let second = &order[1].1;
            let col: Vec<Integer> = (0..n).map(|k| b[k][*jmin].clone()).collect();
            return Ok(accept(&x, col, ymin, second, &accept_residual, norm_bound, prec));
        }

        // Any relation has norm at least 1/max|H_jj|.
        let mut hmax = Float::with_val(prec, 0);
        for (i, row) in h.iter().enumerate().take(n - 1) {
            let v = Float::with_val(prec, row[i].abs_ref());
            if v > hmax {
                hmax = v;
            }
        }
        if hmax.is_zero() {
            break;
        }
        let lower = Float::with_val(prec, hmax.recip_ref());
        if lower > norm_bound {
            return Ok(None);
        }
    }
    Ok(None)
}

fn accept(
    x: &[Float],
    col: Vec<Integer>,
    ymin: &Float,
    second: &Float,
    accept_residual: &Float,
    norm_bound: i64,
    prec: u32,
) -> Option<IntegerRelation> {
    let mut coeffs = Vec::with_capacity(col.len());
    for c in &col {
        let v = c.to_i64()?;
        if v.abs() > norm_bound {
            return None;
        }
        coeffs.push(v);
    }
    if coeffs.iter().all(|&c| c == 0) {
        return None;
    }
    // Remove a common factor and fix the sign.
    let g = coeffs.iter().fold(0i64, |g, &c| gcd(g, c.abs()));
    if g > 1 {
        coeffs.iter_mut().for_each(|c| *c /= g);
    }
    if coeffs.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    let mut res = Float::with_val(prec, 0);
    for (c, v) in coeffs.iter().zip(x) {
        res += Float::with_val(prec, v * *c);
    }
    let res = res.abs();
    if res >= *accept_residual {
        return None;
    }
    let margin = Float::with_val(prec, ymin * 1e10);
    if *second < margin {
        return None;
    }
    Some(IntegerRelation {
        coefficients: coeffs,
        residual: crate::numeric::to_decimal(&res, 6),
        norm_bound,
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio() {
        let ctx = PrecisionCtx::new(40).unwrap();
        let phi = (Float::with_val(ctx.prec(), 5).sqrt() + 1u32) / 2u32;
        let v = vec![ctx.real(1), phi.clone(), Float::with_val(ctx.prec(), phi.square_ref())];
        let r = find_relation(&v, 10, &ctx).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![1, 1, -1]);
    }

    #[test]
    fn no_relation_among_one_pi_e() {
        let ctx = PrecisionCtx::new(60).unwrap();
        let e = Float::with_val(ctx.prec(), 1).exp();
        let v = vec![ctx.real(1), ctx.pi(), e];
        assert!(find_relation(&v, 1000, &ctx).unwrap().is_none());
    }

    #[test]
    fn insufficient_precision_is_an_error() {
        let ctx = PrecisionCtx::new(15).unwrap();
        let v = vec![ctx.real(1), ctx.pi(), ctx.real(2), ctx.real(3), ctx.real(5)];
        assert!(matches!(find_relation(&v, 1_000_000, &ctx), Err(Error::Precision(_))));
    }

    #[test]
    fn recovers_planted_relation() {
        let ctx = PrecisionCtx::new(50).unwrap();
        let p = ctx.prec();
        let a = Float::with_val(p, 2).sqrt();
        let b = Float::with_val(p, 3).ln();
        let c = Float::with_val(p, &a * 7) - Float::with_val(p, &b * 12);
        let r = find_relation(&[a, b, c], 32, &ctx).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![7, -12, -1]);
    }
}
