//! Summation of the central-binomial series families, their closed
//! right-hand sides, the finite binomial sums with zeta/beta limits, and
//! the pi-limit sequences.
//!
//! Every infinite family is an instance of one term model,
//!
//! ```text
//! prefactor * sum_k W(k) M_p(k) y^k / prod_i (2k + c_i)
//! ```
//!
//! with either the odd weight `W = b_k = C(2k,k)/4^k`, `M = G_p` (from
//! `k = 0`) or the even weight `W = 1/(2k b_k)`, `M = H_p` (from `k = 1`).
//!
//! Tail bounds use `M_p(k) <= M_p(inf)` together with:
//!
//! * `y < 1`: the factors `W(k)/prod(2k+c_i)` are nonincreasing, so the
//!   tail after `K` terms is at most the bound for term `K` times `1/(1-y)`.
//! * `y = 1` (needs at least one denominator): `b_k <= 1/sqrt(pi k)` and
//!   `1/(2k b_k) <= (sqrt(pi)/2) sqrt(1+1/k) k^(-1/2)` bound the term by a
//!   multiple of `k^(-1/2-d)`, whose tail is at most
//!   `K^(-alpha) + K^(1-alpha)/(alpha-1)`.

mod catalogue;
mod limits;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::harmonic::{harmonic_limit, HarmonicKind, HarmonicStream};
use crate::scalar::{PrecisionContext, Real};

pub use catalogue::{
    catalogue, cor23_rhs, corollary_rhs, shifted_rhs, identity_lhs, lupu_rhs, partial_fraction_rhs, Cor23,
    IdentityInfo, IdentityParams, LupuFamily, RhsValue, XArg,
};
pub use limits::{
    alternating_sum, dirichlet_beta, lemma42_target, pi_limit_exact, pi_limit_prefactor, pi_limit_target,
    pi_limit_value, riemann_zeta, zeta_beta_finite, FiniteSum, PiFamily,
};

/// `b_{k+1}/b_k = (2k+1)/(2k+2)` for `b_k = C(2k,k)/4^k`.
pub fn central_binomial_ratio_step(k: u64) -> num_rational::BigRational {
    crate::exact::rat(2 * k as i64 + 1, 2 * k as i64 + 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// `C(2k,k)/4^k * G_p(k)`, `k >= 0`.
    Odd { p: u32 },
    /// `4^k/(C(2k,k) 2k) * H_p(k)`, `k >= 1`, `p >= 1`.
    Even { p: u32 },
}

impl Weight {
    fn first_k(self) -> u64 {
        match self {
            Weight::Odd { .. } => 0,
            Weight::Even { .. } => 1,
        }
    }
}

/// One instance of the shared term model.
#[derive(Clone, Debug)]
pub struct TermModel<R> {
    pub weight: Weight,
    pub prefactor: R,
    /// Ratio variable, `0 <= y <= 1` (usually `x^2`).
    pub y: R,
    /// Offsets `c_i` of the linear denominators `2k + c_i`.
    pub denominators: Vec<u64>,
}

impl<R: Real> TermModel<R> {
    fn validate(&self) -> Result<()> {
        let prec = self.y.prec();
        if self.y < R::zero(prec) || self.y > R::one(prec) {
            return invalid(format!("ratio y = {} outside [0, 1]", self.y.to_f64()));
        }
        if let Weight::Even { p: 0 } = self.weight {
            return invalid("even-weight series need p >= 1");
        }
        if matches!(self.weight, Weight::Odd { .. }) && self.denominators.contains(&0) {
            return invalid("odd-weight series start at k = 0; denominator offset 0 is singular");
        }
        if self.y == R::one(prec) && self.denominators.is_empty() {
            return invalid("series diverges at y = 1 without a linear denominator");
        }
        Ok(())
    }
}

/// Which side of `4 sum 1/(2k+1)^2 = sum 4^j/(C(2j,j) j^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A series to be summed numerically.
#[derive(Clone, Debug)]
pub enum SeriesSpec<R> {
    /// `sum_k b_k G_p(k) x^(2k+n+2)/(2k+n+2)`, `n >= -1`.
    G { p: u32, n: i64, x: R },
    /// `sum_k 4^k H_p(k)/(C(2k,k) 2k) x^(2k+n+1)/(2k+n+1)`, `n >= -1`, `p >= 1`.
    H { p: u32, n: i64, x: R },
    /// `sum_k b_k G_p(k) x^(2k+2)/((2k+2+n)(2k+2+m))`, `n != m`.
    PartialFraction { p: u32, n: u32, m: u32, x: R },
    /// One of the four normalized finite binomial sums (exact, no tail).
    Finite { kind: FiniteSum, s: u32, ell: u64 },
    /// The `n`-th element of a pi-limit sequence, inner series summed
    /// numerically.
    PiLimit { family: PiFamily, p: u32, n: u64 },
    /// `sum_k b_k x^(2k+1)/(2k+n+1)`.
    Shifted { n: u32, x: R },
    /// Either side of `4 sum 1/(2k+1)^2 = sum 4^j/(C(2j,j) j^2)`.
    PiSquaredHalf { side: Side },
    /// Arbitrary instance of the term model.
    Model(TermModel<R>),
}

/// Partial sum with an upper bound on the truncation error.
#[derive(Clone, Debug)]
pub struct SeriesResult<R> {
    pub partial_sum: R,
    pub terms_used: u64,
    pub tail_estimate: R,
    pub converged: bool,
    pub precision: u32,
}

/// JSON shape of [`SeriesResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRecord {
    pub partial_sum: String,
    pub terms_used: u64,
    pub tail_estimate: String,
    pub converged: bool,
}

impl<R: Real> SeriesResult<R> {
    /// `[partial - tail, partial + tail]`.
    pub fn bracket(&self) -> (R, R) {
        (
            self.partial_sum.clone() - &self.tail_estimate,
            self.partial_sum.clone() + &self.tail_estimate,
        )
    }

    pub fn record(&self, digits: usize) -> SeriesRecord {
        SeriesRecord {
            partial_sum: self.partial_sum.to_decimal(digits),
            terms_used: self.terms_used,
            tail_estimate: self.tail_estimate.to_decimal(6),
            converged: self.converged,
        }
    }

    fn scaled(self, f: &R) -> Self {
        Self {
            partial_sum: self.partial_sum * f,
            tail_estimate: self.tail_estimate * &f.abs(),
            ..self
        }
    }
}

/// Compensated (Neumaier) accumulator.
#[derive(Clone, Debug)]
pub(crate) struct Neumaier<R> {
    sum: R,
    comp: R,
}

impl<R: Real> Neumaier<R> {
    pub(crate) fn new(prec: u32) -> Self {
        Self {
            sum: R::zero(prec),
            comp: R::zero(prec),
        }
    }

    pub(crate) fn add(&mut self, v: R) {
        let t = self.sum.clone() + &v;
        if self.sum.abs() >= v.abs() {
            self.comp = self.comp.clone() + (self.sum.clone() - &t) + &v;
        } else {
            self.comp = self.comp.clone() + (v - &t) + &self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> R {
        self.sum.clone() + &self.comp
    }
}

fn power_sum_tail<R: Real>(k: u64, alpha: &R, prec: u32) -> R {
    let kr = R::from_i64(k as i64, prec);
    let lk = kr.ln();
    let a = (-(alpha.clone() * &lk)).exp();
    let one = R::one(prec);
    let b = (-((alpha.clone() - &one) * &lk)).exp() / (alpha.clone() - &one);
    a + b
}

/// Upper bound on `sum_{k >= K} |term_k|` under the documented decay model.
/// `w_k` is the weight factor at `K` (`b_K` or `1/(2K b_K)`), `y_k = y^K`.
fn tail_bound<R: Real>(model: &TermModel<R>, mmax: &R, k: u64, w_k: &R, y_k: &R, prec: u32) -> R {
    let one = R::one(prec);
    let pref = model.prefactor.abs();
    if model.y < one {
        let den = model
            .denominators
            .iter()
            .fold(one.clone(), |acc, c| acc * R::from_i64((2 * k + c) as i64, prec));
        return pref * mmax * w_k * y_k / den / (one - &model.y);
    }
    let d = model.denominators.len() as i32;
    let alpha = R::from_i64(2 * d as i64 + 1, prec).mul_pow2(-1);
    let pi = R::pi(prec);
    let (k, head) = if k == 0 {
        // term 0 of an odd-weight series: b_0 = 1
        let den = model
            .denominators
            .iter()
            .fold(one.clone(), |acc, c| acc * R::from_i64(*c as i64, prec));
        (1, pref.clone() * mmax / den)
    } else {
        (k, R::zero(prec))
    };
    let shape = match model.weight {
        Weight::Odd { .. } => one / pi.sqrt(),
        Weight::Even { .. } => {
            let kk = R::from_i64(k as i64, prec);
            pi.sqrt().mul_pow2(-1) * ((kk.clone() + R::one(prec)) / kk).sqrt()
        }
    };
    head + pref * mmax * shape.mul_pow2(-d) * power_sum_tail(k, &alpha, prec)
}

fn sum_model<R: Real>(
    model: &TermModel<R>,
    tolerance: &R,
    max_terms: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult<R>> {
    model.validate()?;
    let prec = ctx.working();
    let one = R::one(prec);
    let (kind, p) = match model.weight {
        Weight::Odd { p } => (HarmonicKind::G, p),
        Weight::Even { p } => (HarmonicKind::H, p),
    };
    // limits rounded upward by a relative margin well above working precision
    let mmax = harmonic_limit::<R>(kind, p, prec) * (one.clone() + R::pow2(-(prec as i32) + 8, prec));
    let y = model.y.with_prec(prec);
    let at_one = y == one;
    let mut k = model.weight.first_k();
    let mut b = if k == 0 { one.clone() } else { one.clone().mul_pow2(-1) };
    let mut ypow = if k == 0 { one.clone() } else { y.clone() };
    let mut stream = HarmonicStream::<R>::new(kind, p as usize, prec);
    let mut acc = Neumaier::new(prec);
    let weight = |b: &R, k: u64| match model.weight {
        Weight::Odd { .. } => b.clone(),
        Weight::Even { .. } => one.clone() / (b.clone() * R::from_i64(2 * k as i64, prec)),
    };
    let pref = model.prefactor.with_prec(prec);
    let mut used = 0u64;
    let mut tail = tail_bound(model, &mmax, k, &weight(&b, k), &ypow, prec);
    while used < max_terms && !(tail <= *tolerance) {
        let den = model
            .denominators
            .iter()
            .fold(one.clone(), |acc, c| acc * R::from_i64((2 * k + c) as i64, prec));
        let term = weight(&b, k) * stream.top() * &ypow / den;
        acc.add(term);
        b = b * R::from_i64(2 * k as i64 + 1, prec) / R::from_i64(2 * k as i64 + 2, prec);
        ypow = ypow * &y;
        stream.advance();
        k += 1;
        used += 1;
        if !at_one || used.is_multiple_of(256) || used == max_terms {
            tail = tail_bound(model, &mmax, k, &weight(&b, k), &ypow, prec);
        }
    }
    let tail_estimate = tail;
    Ok(SeriesResult {
        partial_sum: acc.value() * &pref,
        terms_used: used,
        converged: tail_estimate <= *tolerance,
        tail_estimate,
        precision: ctx.precision(),
    })
}

fn x_power<R: Real>(x: &R, e: i64, prec: u32) -> R {
    x.with_prec(prec).powu(e as u32)
}

fn check_x<R: Real>(x: &R) -> Result<()> {
    if x.abs() > R::one(x.prec()) {
        return Err(crate::Error::Domain(format!("x = {} outside [-1, 1]", x.to_f64())));
    }
    Ok(())
}

impl<R: Real> SeriesSpec<R> {
    /// Expresses the family as a term model where one applies.
    pub fn model(&self, prec: u32) -> Result<Option<TermModel<R>>> {
        Ok(Some(match self {
            SeriesSpec::G { p, n, x } => {
                check_x(x)?;
                if *n < -1 {
                    return invalid("G-series needs n >= -1");
                }
                TermModel {
                    weight: Weight::Odd { p: *p },
                    prefactor: x_power(x, n + 2, prec),
                    y: x.with_prec(prec).square(),
                    denominators: vec![(n + 2) as u64],
                }
            }
            SeriesSpec::H { p, n, x } => {
                check_x(x)?;
                if *n < -1 {
                    return invalid("H-series needs n >= -1");
                }
                TermModel {
                    weight: Weight::Even { p: *p },
                    prefactor: x_power(x, n + 1, prec),
                    y: x.with_prec(prec).square(),
                    denominators: vec![(n + 1) as u64],
                }
            }
            SeriesSpec::PartialFraction { p, n, m, x } => {
                check_x(x)?;
                if n == m {
                    return invalid("partial-fraction series needs n != m");
                }
                TermModel {
                    weight: Weight::Odd { p: *p },
                    prefactor: x_power(x, 2, prec),
                    y: x.with_prec(prec).square(),
                    denominators: vec![*n as u64 + 2, *m as u64 + 2],
                }
            }
            SeriesSpec::Shifted { n, x } => {
                check_x(x)?;
                TermModel {
                    weight: Weight::Odd { p: 0 },
                    prefactor: x.with_prec(prec),
                    y: x.with_prec(prec).square(),
                    denominators: vec![*n as u64 + 1],
                }
            }
            SeriesSpec::PiLimit { family, p, n } => {
                if *n == 0 {
                    return invalid("pi-limit sequences start at n = 1");
                }
                match family {
                    PiFamily::Odd => TermModel {
                        weight: Weight::Odd { p: *p },
                        prefactor: R::one(prec),
                        y: R::one(prec),
                        denominators: vec![n + 1],
                    },
                    PiFamily::Even => TermModel {
                        weight: Weight::Even { p: *p },
                        prefactor: R::from_i64(2, prec),
                        y: R::one(prec),
                        denominators: vec![*n],
                    },
                }
            }
            SeriesSpec::PiSquaredHalf { side: Side::Right } => TermModel {
                weight: Weight::Even { p: 1 },
                prefactor: R::from_i64(4, prec),
                y: R::one(prec),
                denominators: vec![0],
            },
            SeriesSpec::Model(m) => m.clone(),
            SeriesSpec::Finite { .. } | SeriesSpec::PiSquaredHalf { side: Side::Left } => return Ok(None),
        }))
    }
}

/// `4 sum_{k<K} 1/(2k+1)^2`, tail at most `4/(2(2K-1))` by comparison
/// with the integral from `K-1`.
fn sum_odd_squares<R: Real>(tolerance: &R, max_terms: u64, ctx: &PrecisionContext) -> SeriesResult<R> {
    let prec = ctx.working();
    let four = R::from_i64(4, prec);
    let tail_at = |k: u64| {
        if k == 0 {
            R::pi(prec).square().mul_pow2(-1) * (R::one(prec) + R::pow2(-(prec as i32) + 8, prec))
        } else {
            R::from_i64(2, prec) / R::from_i64(2 * k as i64 - 1, prec)
        }
    };
    let mut acc = Neumaier::new(prec);
    let mut k = 0u64;
    let mut tail = tail_at(0);
    while k < max_terms && !(tail <= *tolerance) {
        let d = R::from_i64(2 * k as i64 + 1, prec);
        acc.add(four.clone() / d.square());
        k += 1;
        tail = tail_at(k);
    }
    SeriesResult {
        partial_sum: acc.value(),
        terms_used: k,
        converged: tail <= *tolerance,
        tail_estimate: tail,
        precision: ctx.precision(),
    }
}

/// Sums `spec` until the tail bound drops to `tolerance` or `max_terms`
/// terms have been added. Non-convergence is reported, not raised.
pub fn sum_series<R: Real>(
    spec: &SeriesSpec<R>,
    tolerance: &R,
    max_terms: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult<R>> {
    let prec = ctx.working();
    if !(*tolerance > R::zero(prec)) {
        return invalid("tolerance must be positive");
    }
    match spec {
        SeriesSpec::Finite { kind, s, ell } => {
            let v = zeta_beta_finite(*kind, *s, *ell)?;
            let terms = match kind {
                FiniteSum::Zeta | FiniteSum::AltZeta => *ell,
                FiniteSum::OddZeta | FiniteSum::Beta => ell + 1,
            };
            Ok(SeriesResult {
                partial_sum: R::from_rational(&v, prec),
                terms_used: terms,
                tail_estimate: R::zero(prec),
                converged: true,
                precision: ctx.precision(),
            })
        }
        SeriesSpec::PiSquaredHalf { side: Side::Left } => Ok(sum_odd_squares(tolerance, max_terms, ctx)),
        SeriesSpec::PiLimit { family, p, n } => {
            let f = pi_limit_prefactor::<R>(*family, *p, *n, prec)?;
            let model = spec.model(prec)?.expect("pi-limit has a term model");
            // the inner tolerance absorbs the prefactor
            let inner_tol = tolerance.clone() / &f.abs();
            Ok(sum_model(&model, &inner_tol, max_terms, ctx)?.scaled(&f))
        }
        _ => {
            let model = spec.model(prec)?.expect("family has a term model");
            sum_model(&model, tolerance, max_terms, ctx)
        }
    }
}

/// `sum_k C(2k,k) G_p(k) x^(2k+2) / (4^k (2k+2+n)(2k+2+m))`.
pub fn partial_fraction_series<R: Real>(
    p: u32,
    n: u32,
    m: u32,
    x: &R,
    tolerance: &R,
    max_terms: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult<R>> {
    sum_series(
        &SeriesSpec::PartialFraction { p, n, m, x: x.clone() },
        tolerance,
        max_terms,
        ctx,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use rug::Float;

    fn ctx() -> PrecisionContext {
        PrecisionContext::bits(128).unwrap()
    }

    fn f(v: f64) -> Float {
        Float::with_val(ctx().working(), v)
    }

    #[test]
    fn ratio_steps() {
        assert_eq!(central_binomial_ratio_step(0), rat(1, 2));
        assert_eq!(central_binomial_ratio_step(1), rat(3, 4));
        assert_eq!(central_binomial_ratio_step(9), rat(19, 20));
    }

    #[test]
    fn arcsine_series_at_one() {
        // sum b_k/(2k+1) = pi/2
        let c = ctx();
        let r = sum_series(&SeriesSpec::G { p: 0, n: -1, x: f(1.0) }, &f(1e-6), 20_000, &c).unwrap();
        assert!(!r.converged && r.terms_used == 20_000);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let (lo, hi) = r.bracket();
        assert!(lo.to_f64() <= half_pi && half_pi <= hi.to_f64(), "{r:?}");
        // sum b_k/(2k+2) = 1
        let r = sum_series(&SeriesSpec::G { p: 0, n: 0, x: f(1.0) }, &f(1e-2), 1_000_000, &c).unwrap();
        assert!(r.partial_sum.to_f64() <= 1.0 && 1.0 <= r.bracket().1.to_f64());
        assert!(r.converged);
    }

    #[test]
    fn zero_argument_and_zero_terms() {
        let c = ctx();
        let r = sum_series(&SeriesSpec::H { p: 1, n: 0, x: f(0.0) }, &f(1e-30), 100, &c).unwrap();
        assert_eq!(r.partial_sum, 0);
        let r = sum_series(&SeriesSpec::H { p: 1, n: 0, x: f(1.0) }, &f(1e-30), 0, &c).unwrap();
        assert_eq!(r.terms_used, 0);
        assert!(!r.converged);
        assert!(r.tail_estimate > 0);
    }

    #[test]
    fn geometric_tail_is_tight_enough() {
        // sum C(2k,k)/8^k = sqrt(2)
        let c = ctx();
        let model = TermModel {
            weight: Weight::Odd { p: 0 },
            prefactor: f(1.0),
            y: f(0.5),
            denominators: vec![],
        };
        let tol = Float::with_val(160, 1) >> 125;
        let r = sum_series(&SeriesSpec::Model(model), &tol, 10_000, &c).unwrap();
        assert!(r.converged && r.terms_used < 200);
        let err = Float::with_val(160, &r.partial_sum - Float::with_val(160, 2).sqrt()).abs();
        assert!(err <= r.tail_estimate.clone() + (Float::with_val(160, 1) >> 126));
    }

    #[test]
    fn rejects_bad_specs() {
        let c = ctx();
        let t = f(1e-10);
        assert!(sum_series(&SeriesSpec::PartialFraction { p: 0, n: 1, m: 1, x: f(0.5) }, &t, 10, &c).is_err());
        assert!(sum_series(&SeriesSpec::G { p: 0, n: 0, x: f(1.5) }, &t, 10, &c).is_err());
        assert!(sum_series(&SeriesSpec::H { p: 0, n: 0, x: f(0.5) }, &t, 10, &c).is_err());
        assert!(sum_series(&SeriesSpec::G { p: 0, n: 0, x: f(0.5) }, &f(0.0), 10, &c).is_err());
    }

    #[test]
    fn f64_scalar_works() {
        let c = PrecisionContext::bits(53).unwrap();
        let r = sum_series(&SeriesSpec::G { p: 1, n: 0, x: 0.5f64 }, &1e-14, 1000, &c).unwrap();
        assert!(r.converged);
    }
}
