//! Adaptive Gauss-Legendre quadrature over `theta = arcsin t`.

use std::any::TypeId;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::chebyshev::arcsin;
use crate::error::{Error, Result};
use crate::scalar::{PrecisionContext, Real};

/// Nodes per panel.
const ORDER: usize = 32;
const MAX_DEPTH: u32 = 40;

/// Result of an adaptive integration. `est_error` is the sum over accepted
/// panels of `|whole - (left + right)|`, a convergence estimate rather than
/// a rigorous bound.
#[derive(Clone, Debug)]
pub struct QuadratureReport<R> {
    pub value: R,
    pub intervals_used: u64,
    pub est_error: R,
}

struct Rule<R> {
    nodes: Vec<R>,
    weights: Vec<R>,
}

type RuleCache = Mutex<HashMap<(TypeId, u32, usize), Arc<dyn std::any::Any + Send + Sync>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Legendre `P_m(x)` and `P_m'(x)` by the three-term recurrence.
fn legendre<R: Real>(m: usize, x: &R, prec: u32) -> (R, R) {
    let mut p0 = R::one(prec);
    let mut p1 = x.clone();
    for k in 2..=m {
        let k = k as i64;
        let p2 = (R::from_i64(2 * k - 1, prec) * x * &p1 - R::from_i64(k - 1, prec) * &p0) / R::from_i64(k, prec);
        p0 = p1;
        p1 = p2;
    }
    let one = R::one(prec);
    let d = R::from_i64(m as i64, prec) * (x.clone() * &p1 - &p0) / (x.square() - one);
    (p1, d)
}

fn build_rule<R: Real + 'static>(m: usize, prec: u32) -> Rule<R> {
    let w = prec + 16;
    let tol = R::pow2(-(w as i32) + 4, w);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for i in 1..=m {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (m as f64 + 0.5)).cos();
        let mut x = R::from_f64(guess, w);
        // Newton converges quadratically from the asymptotic guess
        for _ in 0..100 {
            let (p, d) = legendre(m, &x, w);
            let dx = p / &d;
            x = x - &dx;
            if dx.abs() <= tol {
                break;
            }
        }
        let (_, d) = legendre(m, &x, w);
        let wt = R::from_i64(2, w) / ((R::one(w) - x.square()) * d.square());
        nodes.push(x.with_prec(prec));
        weights.push(wt.with_prec(prec));
    }
    Rule { nodes, weights }
}

fn rule<R: Real + 'static>(prec: u32) -> Arc<Rule<R>> {
    let key = (TypeId::of::<R>(), prec, ORDER);
    let mut cache = rule_cache().lock().expect("rule cache poisoned");
    let entry = cache
        .entry(key)
        .or_insert_with(|| Arc::new(build_rule::<R>(ORDER, prec)) as Arc<dyn std::any::Any + Send + Sync>)
        .clone();
    drop(cache);
    entry.downcast::<Rule<R>>().expect("rule type matches its key")
}

fn panel<R: Real, F: Fn(&R) -> R>(f: &F, a: &R, b: &R, rule: &Rule<R>) -> R {
    let half = (b.clone() - a).mul_pow2(-1);
    let mid = (b.clone() + a).mul_pow2(-1);
    let mut acc = R::zero(a.prec());
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc = acc + w.clone() * f(&(mid.clone() + half.clone() * x));
    }
    acc * &half
}

/// Integrates `f` over `[a, b]` by recursive bisection until each panel's
/// two-level difference falls below its share of `tol`.
pub fn integrate<R: Real + 'static, F: Fn(&R) -> R>(f: F, a: &R, b: &R, tol: &R, prec: u32) -> QuadratureReport<R> {
    let rule = rule::<R>(prec);
    let a = a.with_prec(prec);
    let b = b.with_prec(prec);
    let zero = R::zero(prec);
    if a == b {
        return QuadratureReport {
            value: zero.clone(),
            intervals_used: 0,
            est_error: zero,
        };
    }
    let whole = panel(&f, &a, &b, &rule);
    let mut stack = vec![(a, b, whole, tol.clone(), 0u32)];
    let mut value = zero.clone();
    let mut err = zero;
    let mut used = 0u64;
    while let Some((lo, hi, whole, t, depth)) = stack.pop() {
        let mid = (lo.clone() + &hi).mul_pow2(-1);
        let left = panel(&f, &lo, &mid, &rule);
        let right = panel(&f, &mid, &hi, &rule);
        let both = left.clone() + &right;
        let diff = (both.clone() - &whole).abs();
        if diff <= t || depth >= MAX_DEPTH {
            value = value + both;
            err = err + diff;
            used += 2;
        } else {
            let half_t = t.mul_pow2(-1);
            stack.push((mid.clone(), hi, right, half_t.clone(), depth + 1));
            stack.push((lo, mid, left, half_t, depth + 1));
        }
    }
    QuadratureReport {
        value,
        intervals_used: used,
        est_error: err,
    }
}

fn upper_limit<R: Real>(x: &R, prec: u32) -> Result<R> {
    if *x < R::zero(x.prec()) || *x > R::one(x.prec()) {
        return Err(Error::Domain(format!("x = {} outside [0, 1]", x.to_f64())));
    }
    arcsin(x, prec)
}

/// `int_0^x t^n arcsin(t)^q dt`, integrated as
/// `int_0^(arcsin x) sin^n(theta) cos(theta) theta^q dtheta` to tolerance
/// `2^-(P-10)`.
pub fn quadrature_i<R: Real + 'static>(n: u32, q: u32, x: &R, ctx: &PrecisionContext) -> Result<QuadratureReport<R>> {
    let prec = ctx.working();
    let top = upper_limit(x, prec)?;
    let tol = ctx.tolerance::<R>(10);
    Ok(integrate(
        |th: &R| th.sin().powu(n) * th.cos() * th.powu(q),
        &R::zero(prec),
        &top,
        &tol,
        prec,
    ))
}

/// `J^(n)(x, w) = int_0^(arcsin x) sin^(n+1)(theta) e^(w theta) dtheta`.
pub fn quadrature_j<R: Real + 'static>(n: u32, x: &R, w: &R, ctx: &PrecisionContext) -> Result<QuadratureReport<R>> {
    let prec = ctx.working();
    let top = upper_limit(x, prec)?;
    let tol = ctx.tolerance::<R>(10);
    let w = w.with_prec(prec);
    Ok(integrate(
        |th: &R| th.sin().powu(n + 1) * (w.clone() * th).exp(),
        &R::zero(prec),
        &top,
        &tol,
        prec,
    ))
}

/// `int_0^(arcsin x) sin^(n+1)(theta) theta^m dtheta / m!`, the exact
/// `w^m` Taylor coefficient of `J^(n)(x, w)`.
pub fn quadrature_j_coefficient<R: Real + 'static>(
    n: u32,
    m: u32,
    x: &R,
    ctx: &PrecisionContext,
) -> Result<QuadratureReport<R>> {
    let prec = ctx.working();
    let top = upper_limit(x, prec)?;
    let tol = ctx.tolerance::<R>(10);
    let r = integrate(|th: &R| th.sin().powu(n + 1) * th.powu(m), &R::zero(prec), &top, &tol, prec);
    let f = R::from_bigint(&crate::exact::factorial(m as u64), prec);
    Ok(QuadratureReport {
        value: r.value / &f,
        intervals_used: r.intervals_used,
        est_error: r.est_error / &f,
    })
}
