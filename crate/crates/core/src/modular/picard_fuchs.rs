//! Picard–Fuchs operators of the quartic and Hesse-type families, their
//! hypergeometric solutions, and finite-difference residuals.

use super::hyper::{hyp2f1, hyp3f2, CutPolicy};
use crate::error::{Error, Result};
use crate::numeric::PrecisionCtx;
use rug::{Complex, Float};

/// Linear differential operators in `μ = 1/s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PfOperator {
    /// `μ²(256μ-1)w''' + μ(1152μ-3)w'' + (816μ-1)w' + 24w`.
    Quartic,
    /// `μ(256μ-1)w'' + (384μ-1)w' + 12w`, whose symmetric square is
    /// [`PfOperator::Quartic`].
    Clausen,
    /// `μ²(108μ-1)v''' + 3μ(162μ-1)v'' + (348μ-1)v' + 12v`.
    HesseThird,
    /// `μ(108μ-1)v'' + (162μ-1)v' + 6v`.
    HesseSecond,
}

impl PfOperator {
    /// Order of the operator.
    pub fn order(self) -> usize {
        match self {
            PfOperator::Quartic | PfOperator::HesseThird => 3,
            PfOperator::Clausen | PfOperator::HesseSecond => 2,
        }
    }

    /// Coefficients `p_0(μ), …, p_order(μ)` of `Σ p_k(μ) d^k/dμ^k`.
    pub fn coefficients(self, mu: &Float) -> Vec<Float> {
        let p = mu.prec();
        let lin = |a: i32, b: i32| Float::with_val(p, mu * a) + b;
        let m2 = Float::with_val(p, mu.square_ref());
        match self {
            PfOperator::Quartic => vec![
                Float::with_val(p, 24),
                lin(816, -1),
                Float::with_val(p, mu * lin(1152, -3)),
                Float::with_val(p, &m2 * lin(256, -1)),
            ],
            PfOperator::Clausen => vec![Float::with_val(p, 12), lin(384, -1), Float::with_val(p, mu * lin(256, -1))],
            PfOperator::HesseThird => vec![
                Float::with_val(p, 12),
                lin(348, -1),
                Float::with_val(p, mu * lin(162, -1)) * 3u32,
                Float::with_val(p, &m2 * lin(108, -1)),
            ],
            PfOperator::HesseSecond => vec![Float::with_val(p, 6), lin(162, -1), Float::with_val(p, mu * lin(108, -1))],
        }
    }

    /// `Σ p_k(μ) w^{(k)}` for given derivatives `w, w', …`.
    pub fn apply(self, mu: &Float, derivs: &[Complex]) -> Result<Complex> {
        let cs = self.coefficients(mu);
        if derivs.len() < cs.len() {
            return Err(Error::Domain("not enough derivatives for the operator order".into()));
        }
        let mut acc = Complex::with_val(mu.prec(), 0);
        for (c, d) in cs.iter().zip(derivs) {
            acc += Complex::with_val(mu.prec(), d * c);
        }
        Ok(acc)
    }
}

/// Fornberg weights: `weights[k][j]` approximates `f^{(k)}(x0)` by
/// `Σ_j weights[k][j] f(nodes[j])`, for `k ≤ max_order`.
pub fn fornberg_weights(x0: &Float, nodes: &[Float], max_order: usize) -> Vec<Vec<Float>> {
    let p = x0.prec();
    let n = nodes.len();
    let m = max_order;
    let mut c = vec![vec![Float::with_val(p, 0); n]; m + 1];
    c[0][0] = Float::with_val(p, 1);
    let mut c1 = Float::with_val(p, 1);
    let mut c4 = Float::with_val(p, &nodes[0] - x0);
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = Float::with_val(p, 1);
        let c5 = c4.clone();
        c4 = Float::with_val(p, &nodes[i] - x0);
        for j in 0..i {
            let c3 = Float::with_val(p, &nodes[i] - &nodes[j]);
            c2 *= &c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let t = Float::with_val(p, &c[k - 1][i - 1] * k as u32) - Float::with_val(p, &c5 * &c[k][i - 1]);
                    c[k][i] = Float::with_val(p, &c1 * t) / &c2;
                }
                c[0][i] = -Float::with_val(p, &c1 * &c5) * &c[0][i - 1] / &c2;
            }
            for k in (1..=mn).rev() {
                let t = Float::with_val(p, &c4 * &c[k][j]) - Float::with_val(p, &c[k - 1][j] * k as u32);
                c[k][j] = t / &c3;
            }
            c[0][j] = Float::with_val(p, &c4 * &c[0][j]) / &c3;
        }
        c1 = c2;
    }
    c
}

/// Derivatives `f(μ), f'(μ), …, f^{(max_order)}(μ)` from a centred stencil
/// of `2·half_width + 1` nodes spaced `h` apart.
pub fn fd_derivatives<F>(f: F, mu: &Float, h: &Float, half_width: usize, max_order: usize) -> Result<Vec<Complex>>
where
    F: Fn(&Float) -> Result<Complex>,
{
    let p = mu.prec();
    let nodes: Vec<Float> = (-(half_width as i64)..=half_width as i64)
        .map(|k| Float::with_val(p, mu + Float::with_val(p, h * k)))
        .collect();
    let vals = nodes.iter().map(&f).collect::<Result<Vec<_>>>()?;
    let w = fornberg_weights(mu, &nodes, max_order);
    Ok(w.iter()
        .map(|row| {
            let mut acc = Complex::with_val(p, 0);
            for (wj, v) in row.iter().zip(&vals) {
                acc += Complex::with_val(p, v * wj);
            }
            acc
        })
        .collect())
}

/// Modulus of `L f` at `μ` with derivatives from a 21-point stencil of
/// step `10^{-5}`.
pub fn pf_residual<F>(op: PfOperator, f: F, mu: &Float, ctx: &PrecisionCtx) -> Result<Float>
where
    F: Fn(&Float) -> Result<Complex>,
{
    let h = crate::numeric::pow10(ctx.prec(), -5);
    let mu = Float::with_val(ctx.prec(), mu);
    let d = fd_derivatives(f, &mu, &h, 10, op.order())?;
    Ok(Float::with_val(ctx.prec(), op.apply(&mu, &d)?.abs_ref()))
}

fn frac(p: u32, a: u32, b: u32) -> Float {
    Float::with_val(p, a) / b
}

/// Quartic period `w_0(μ) = ₃F₂(1/4, 1/2, 3/4; 1, 1; 256μ)`.
pub fn w0_quartic(mu: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let p = ctx.prec();
    let one = Float::with_val(p, 1);
    let z = Complex::with_val(p, Float::with_val(p, mu * 256u32));
    hyp3f2([&frac(p, 1, 4), &frac(p, 1, 2), &frac(p, 3, 4)], [&one, &one], &z, ctx)
}

/// Holomorphic solution `₂F₁(1/8, 3/8; 1; 256μ)` of the Clausen operator;
/// its square is [`w0_quartic`].
pub fn clausen_holomorphic(mu: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let p = ctx.prec();
    let z = Complex::with_val(p, Float::with_val(p, mu * 256u32));
    hyp2f1(&frac(p, 1, 8), &frac(p, 3, 8), &Float::with_val(p, 1), &z, CutPolicy::Reject, ctx)
}

/// Non-holomorphic solution `₂F₁(1/4, 3/4; 1; (1 + √(1-256μ))/2)` of the
/// Clausen operator, for `0 < μ < 1/256`.
pub fn clausen_nonholomorphic(mu: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let p = ctx.prec();
    let d = Float::with_val(p, 1 - Float::with_val(p, mu * 256u32));
    if *mu <= 0 || d <= 0 {
        return Err(Error::Domain("non-holomorphic Clausen solution needs 0 < μ < 1/256".into()));
    }
    let z = Complex::with_val(p, (d.sqrt() + 1u32) / 2u32);
    hyp2f1(&frac(p, 1, 4), &frac(p, 3, 4), &Float::with_val(p, 1), &z, CutPolicy::Reject, ctx)
}

/// Hesse-side period `v_0(μ) = ₃F₂(1/3, 1/2, 2/3; 1, 1; 108μ)`.
pub fn v0_hesse(mu: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let p = ctx.prec();
    let one = Float::with_val(p, 1);
    let z = Complex::with_val(p, Float::with_val(p, mu * 108u32));
    hyp3f2([&frac(p, 1, 3), &frac(p, 1, 2), &frac(p, 2, 3)], [&one, &one], &z, ctx)
}

/// Holomorphic solution `₂F₁(1/6, 1/3; 1; 108μ)` of the second-order Hesse
/// operator; its square is [`v0_hesse`].
pub fn hesse_holomorphic(mu: &Float, ctx: &PrecisionCtx) -> Result<Complex> {
    let p = ctx.prec();
    let z = Complex::with_val(p, Float::with_val(p, mu * 108u32));
    hyp2f1(&frac(p, 1, 6), &frac(p, 1, 3), &Float::with_val(p, 1), &z, CutPolicy::Reject, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn fornberg_exact_on_polynomials() {
        let p = 200;
        let x0 = Float::with_val(p, 0.3);
        let nodes: Vec<Float> = (-3..=3).map(|k| Float::with_val(p, 0.3 + 0.01 * k as f64)).collect();
        let w = fornberg_weights(&x0, &nodes, 3);
        // f = x^4: f''' = 24x
        let vals: Vec<Float> = nodes.iter().map(|x| Float::with_val(p, x.clone().pow(4u32))).collect();
        let d3: Float = w[3].iter().zip(&vals).map(|(a, b)| Float::with_val(p, a * b)).fold(Float::with_val(p, 0), |s, t| s + t);
        assert!((d3 - Float::with_val(p, &x0 * 24u32)).abs() < 1e-40);
    }

    #[test]
    fn residuals_small() {
        let c = PrecisionCtx::new(40).unwrap();
        let tol = 1e-20;
        for mu in [1.0f64 / 1000.0, 1.0 / 500.0] {
            let m = Float::with_val(c.prec(), 1) / (1.0f64 / mu).round() as u32;
            let r = pf_residual(PfOperator::Quartic, |x| w0_quartic(x, &c), &m, &c).unwrap();
            assert!(r < tol, "quartic {r}");
            let sq = |x: &Float| clausen_holomorphic(x, &c).map(|v| Complex::with_val(c.prec(), v.square_ref()));
            assert!(pf_residual(PfOperator::Quartic, sq, &m, &c).unwrap() < tol);
            assert!(pf_residual(PfOperator::Clausen, |x| clausen_holomorphic(x, &c), &m, &c).unwrap() < tol);
            assert!(pf_residual(PfOperator::Clausen, |x| clausen_nonholomorphic(x, &c), &m, &c).unwrap() < tol);
            assert!(pf_residual(PfOperator::HesseThird, |x| v0_hesse(x, &c), &m, &c).unwrap() < tol);
            assert!(pf_residual(PfOperator::HesseSecond, |x| hesse_holomorphic(x, &c), &m, &c).unwrap() < tol);
        }
        // Negative control: a non-solution leaves a visible residual.
        let m = Float::with_val(c.prec(), 1) / 1000u32;
        let bad = pf_residual(PfOperator::Clausen, |x| w0_quartic(x, &c), &m, &c).unwrap();
        assert!(bad > 1e-6);
    }
}
