//! Double-exponential quadrature (tanh-sinh on finite intervals,
//! exp-sinh on half-lines) at arbitrary precision.
//!
//! Both rules converge exponentially for integrands analytic in the open
//! interval, including algebraic or logarithmic endpoint singularities.
//! Node tables are cached per (level, precision).

use super::PrecisionCtx;
use crate::error::{Error, Result};
use rug::float::Constant;
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Outcome of a quadrature.
#[derive(Clone, Debug)]
pub struct QuadResult {
    /// Integral estimate.
    pub value: Float,
    /// Difference between the last two levels.
    pub error_estimate: Float,
    /// Integrand evaluations used.
    pub evaluations: usize,
}

/// One tanh-sinh node for `k ≥ 1` on the reference interval: relative
/// distance `delta` from either endpoint and half-weight `w`.
#[derive(Clone, Debug)]
struct Node {
    delta: Float,
    w: Float,
}

/// Nodes of a given level that are new with respect to coarser levels.
type Level = Arc<Vec<Node>>;

fn tanh_sinh_level(level: u32, prec: u32) -> Level {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Level>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(l) = cache.lock().expect("quad cache poisoned").get(&(level, prec)) {
        return l.clone();
    }
    let h = Float::with_val(prec, Float::i_exp(1, -(level as i32)));
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 20));
    let mut nodes = Vec::new();
    // Level 0 holds k = 1, 2, ...; level L ≥ 1 holds odd k only.
    let step = if level == 0 { 1 } else { 2 };
    let mut k: u64 = 1;
    loop {
        let t = Float::with_val(prec, &h * k);
        let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
        let e2u = Float::with_val(prec, &u * 2u32).exp();
        let delta = Float::with_val(prec, 1) / (Float::with_val(prec, &e2u + 1u32));
        let cu = u.cosh();
        let w = Float::with_val(prec, t.cosh_ref()) * &half_pi * &h / (Float::with_val(prec, cu.square_ref()) * 2u32);
        if delta < tiny {
            break;
        }
        nodes.push(Node { delta, w });
        k += step;
    }
    let l = Arc::new(nodes);
    cache.lock().expect("quad cache poisoned").insert((level, prec), l.clone());
    l
}

/// Tanh-sinh quadrature of `f` over `[a, b]`.
///
/// `f` receives the node `x` and its distances to `a` and `b`, computed
/// without cancellation, so integrands singular at an endpoint can use
/// them directly. Refinement stops when two successive levels agree to
/// `10^-(digits+guard)` relative to the integral, or at `max_level`.
pub fn tanh_sinh<F>(f: F, a: &Float, b: &Float, ctx: &PrecisionCtx, max_level: u32) -> Result<QuadResult>
where
    F: FnMut(&Float, &Float, &Float) -> Result<Float>,
{
    tanh_sinh_tol(f, a, b, ctx, max_level, &ctx.eps())
}

/// [`tanh_sinh`] with an explicit relative stopping tolerance, for
/// integrands known only to a limited accuracy.
pub fn tanh_sinh_tol<F>(mut f: F, a: &Float, b: &Float, ctx: &PrecisionCtx, max_level: u32, tol: &Float) -> Result<QuadResult>
where
    F: FnMut(&Float, &Float, &Float) -> Result<Float>,
{
    let prec = ctx.prec();
    let len = Float::with_val(prec, b - a);
    let mid = Float::with_val(prec, a + b) / 2u32;
    let half_len = Float::with_val(prec, &len / 2u32);
    let eps = Float::with_val(prec, tol);
    let mut evals = 0usize;
    // Raw sum Σ w_k f(x_k) without the step factor h (already in w).
    let centre_w = Float::with_val(prec, Constant::Pi) / 4u32;
    let fc = f(&mid, &half_len, &half_len)?;
    evals += 1;
    // Sum at level L equals h_L Σ_all; store level sums scaled by h.
    let mut total = Float::with_val(prec, &fc * &centre_w); // k = 0 term at h = 1
    let mut node_sum = Float::with_val(prec, 0);
    let mut prev: Option<Float> = None;
    let mut last_err = Float::with_val(prec, f64::INFINITY);
    for level in 0..=max_level {
        let nodes = tanh_sinh_level(level, prec);
        let mut s = Float::with_val(prec, 0);
        for n in nodes.iter() {
            let d = Float::with_val(prec, &len * &n.delta);
            let xl = Float::with_val(prec, a + &d);
            let xr = Float::with_val(prec, b - &d);
            let dl_other = Float::with_val(prec, &len - &d);
            let fl = f(&xl, &d, &dl_other)?;
            let fr = f(&xr, &dl_other, &d)?;
            evals += 2;
            s += Float::with_val(prec, &fl + &fr) * &n.w;
        }
        // Weights carry h_L; halving h rescales previous contributions.
        if level == 0 {
            node_sum = s;
        } else {
            node_sum = node_sum / 2u32 + s;
            total = Float::with_val(prec, &total / 2u32);
        }
        let est = Float::with_val(prec, &total + &node_sum) * &len;
        if let Some(p) = &prev {
            let err = Float::with_val(prec, &est - p).abs();
            let scale = Float::with_val(prec, est.abs_ref()).max(&Float::with_val(prec, 1));
            if level >= 3 && err <= Float::with_val(prec, &eps * &scale) {
                return Ok(QuadResult { value: est, error_estimate: err, evaluations: evals });
            }
            last_err = err;
        }
        prev = Some(est);
    }
    let value = prev.expect("at least one level");
    Err(Error::Accuracy(format!(
        "tanh-sinh did not converge by level {max_level} (last difference {:.3e}, value {:.12e})",
        last_err.to_f64(),
        value.to_f64()
    )))
}

/// Exp-sinh quadrature of `f` over `[a, ∞)` for integrands decaying at
/// least exponentially. `f` receives `x` and `x - a`.
pub fn exp_sinh<F>(mut f: F, a: &Float, ctx: &PrecisionCtx, max_level: u32) -> Result<QuadResult>
where
    F: FnMut(&Float, &Float) -> Result<Float>,
{
    let prec = ctx.prec();
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let eps = ctx.eps();
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 20));
    let mut evals = 0usize;
    let mut prev: Option<Float> = None;
    let mut last_err = Float::with_val(prec, f64::INFINITY);
    for level in 2..=max_level {
        let h = Float::with_val(prec, Float::i_exp(1, -(level as i32)));
        let mut sum = Float::with_val(prec, 0);
        for dir in [1i64, -1] {
            let mut k: i64 = if dir == 1 { 0 } else { -1 };
            let mut small_run = 0;
            loop {
                let t = Float::with_val(prec, &h * k);
                let e = Float::with_val(prec, t.sinh_ref()) * &half_pi;
                let off = e.exp();
                if dir == -1 && off < tiny {
                    break;
                }
                let x = Float::with_val(prec, a + &off);
                let w = Float::with_val(prec, t.cosh_ref()) * &half_pi * &off * &h;
                let v = f(&x, &off)?;
                evals += 1;
                let contrib = Float::with_val(prec, &v * &w);
                let mag = Float::with_val(prec, contrib.abs_ref());
                sum += contrib;
                if dir == 1 {
                    if mag < Float::with_val(prec, &eps * Float::with_val(prec, sum.abs_ref()).max(&tiny)) {
                        small_run += 1;
                        if small_run >= 3 {
                            break;
                        }
                    } else {
                        small_run = 0;
                    }
                }
                k += dir;
                if k.abs() > 100_000 {
                    return Err(Error::Accuracy("exp-sinh node budget exceeded".into()));
                }
            }
        }
        if let Some(p) = &prev {
            let err = Float::with_val(prec, &sum - p).abs();
            let scale = Float::with_val(prec, sum.abs_ref()).max(&Float::with_val(prec, 1));
            if err <= Float::with_val(prec, &eps * &scale) {
                return Ok(QuadResult { value: sum, error_estimate: err, evaluations: evals });
            }
            last_err = err;
        }
        prev = Some(sum);
    }
    let value = prev.expect("at least one level");
    Err(Error::Accuracy(format!(
        "exp-sinh did not converge by level {max_level} (last difference {:.3e}, value {:.12e})",
        last_err.to_f64(),
        value.to_f64()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_endpoint_singular_integrals() {
        let ctx = PrecisionCtx::new(40).unwrap();
        let zero = ctx.real(0);
        let one = ctx.real(1);
        // ∫_0^1 x^2 dx = 1/3
        let r = tanh_sinh(|x, _, _| Ok(Float::with_val(x.prec(), x.square_ref())), &zero, &one, &ctx, 12).unwrap();
        assert!((r.value - Float::with_val(ctx.prec(), 1) / 3u32).abs() < ctx.tol());
        // ∫_0^1 ln x dx = -1, singular at 0: use the exact distance.
        let r = tanh_sinh(|_, dl, _| Ok(Float::with_val(dl.prec(), dl.ln_ref())), &zero, &one, &ctx, 12).unwrap();
        assert!((r.value + 1u32).abs() < ctx.tol());
        // ∫_0^1 sqrt(1-x) dx = 2/3 with the right-hand distance.
        let r = tanh_sinh(|_, _, dr| Ok(Float::with_val(dr.prec(), dr.sqrt_ref())), &zero, &one, &ctx, 12).unwrap();
        assert!((r.value - Float::with_val(ctx.prec(), 2) / 3u32).abs() < ctx.tol());
    }

    #[test]
    fn half_line() {
        let ctx = PrecisionCtx::new(30).unwrap();
        // ∫_1^∞ e^{-x} dx = e^{-1}
        let r = exp_sinh(|x, _| Ok(Float::with_val(x.prec(), -x).exp()), &ctx.real(1), &ctx, 12).unwrap();
        let want = Float::with_val(ctx.prec(), -1).exp();
        assert!((r.value - want).abs() < ctx.tol());
    }
}
