//! Named grids of checks with a serializable pass/fail report.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::exact_checks::{check_cor54, check_lemma43};
use super::generating::{check_lemma32, j_closed_form, w_expand_j};
use super::quadrature::{quadrature_i, quadrature_j, quadrature_j_coefficient};
use crate::chebyshev::lemma33_residuals;
use crate::closed_form::{arcsine_power_integral, eval_closed_form, specialize_pi, PiPoly, SpecialPoint};
use crate::error::{Error, Result};
use crate::exact::{factorial, int};
use crate::scalar::{PrecisionContext, Real};
use crate::series::{
    corollary_rhs, cor23_rhs, identity_lhs, pi_limit_target, pi_limit_value, sum_series, Cor23, IdentityParams,
    PiFamily, XArg,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Thm21,
    Lemma32,
    Lemma33,
    Lemma34,
    Cor23Bridge,
    Lemma43,
    Cor54,
    PiLimits,
    SeriesAll,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Thm21,
        Suite::Lemma32,
        Suite::Lemma33,
        Suite::Lemma34,
        Suite::Cor23Bridge,
        Suite::Lemma43,
        Suite::Cor54,
        Suite::PiLimits,
        Suite::SeriesAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm21 => "thm21",
            Suite::Lemma32 => "lemma32",
            Suite::Lemma33 => "lemma33",
            Suite::Lemma34 => "lemma34",
            Suite::Cor23Bridge => "cor23-bridge",
            Suite::Lemma43 => "lemma43",
            Suite::Cor54 => "cor54",
            Suite::PiLimits => "pi-limits",
            Suite::SeriesAll => "series-all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Error model used to extrapolate the pi-limit sequences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateModel {
    /// `v(n) = L + c/n`, fitted through the last two schedule points.
    InverseN,
    /// `v(n) = L + c_1/sqrt(n) + c_2/n + ...`, fitted through every
    /// schedule point. This is the observed rate.
    #[default]
    InverseSqrt,
}

impl FromStr for RateModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse-n" | "1/n" => Ok(RateModel::InverseN),
            "inverse-sqrt" | "1/sqrt(n)" => Ok(RateModel::InverseSqrt),
            _ => Err(Error::InvalidParameter(format!("unknown rate model `{s}`"))),
        }
    }
}

/// Grid overrides; `None` selects the suite default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub pmax: Option<u32>,
    pub lmax: Option<u32>,
    pub nmax: Option<u32>,
    pub qmax: Option<u32>,
    pub kmax: Option<u32>,
    /// Term budget for series sums.
    pub terms: Option<u64>,
    pub rate: RateModel,
    /// `n` schedule for the pi-limit sequences.
    pub schedule: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: String,
    /// Decimal residual, or `0`/`mismatch` for exact checks.
    pub residual: String,
    /// Decimal tolerance, or `exact`.
    pub tolerance: String,
    pub exact: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub precision: u32,
    pub cases: Vec<CaseResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// Fixed-width table, one case per line, with a summary line.
    pub fn to_table(&self) -> String {
        let w = self.cases.iter().map(|c| c.case.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let _ = writeln!(out, "{:<w$}  {:>14}  {:>14}  result", "case", "residual", "tolerance");
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{:<w$}  {:>14}  {:>14}  {}",
                c.case,
                c.residual,
                c.tolerance,
                if c.pass { "PASS" } else { "FAIL" }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} cases, {} failed at {} bits: {}",
            self.suite,
            self.cases.len(),
            failed,
            self.precision,
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn sci(v: &Float) -> String {
    v.to_decimal(6)
}

fn numeric(case: String, residual: &Float, tol: &Float) -> CaseResult {
    CaseResult {
        case,
        residual: sci(residual),
        tolerance: sci(tol),
        exact: false,
        pass: residual <= tol,
    }
}

fn exact_case(case: String, ok: bool) -> CaseResult {
    CaseResult {
        case,
        residual: if ok { "0".into() } else { "mismatch".into() },
        tolerance: "exact".into(),
        exact: true,
        pass: ok,
    }
}

fn failed_case(case: String, err: Error) -> CaseResult {
    CaseResult {
        case,
        residual: format!("error: {err}"),
        tolerance: "-".into(),
        exact: false,
        pass: false,
    }
}

fn collect(case: String, r: Result<CaseResult>) -> CaseResult {
    r.unwrap_or_else(|e| failed_case(case, e))
}

/// The named `x` grid points as `(label, value)`.
fn x_points(labels: &[&str], prec: u32) -> Vec<(String, Float)> {
    labels
        .iter()
        .map(|l| {
            let v = match *l {
                "1/sqrt2" => SpecialPoint::Sqrt2Over2.value::<Float>(prec),
                "-1/sqrt2" => -SpecialPoint::Sqrt2Over2.value::<Float>(prec),
                s => Float::parse_decimal(s, prec).expect("grid literal"),
            };
            (l.to_string(), v)
        })
        .collect()
}

/// `(pi/2)^q/q! - (n+1)/q! I_q^(n)(1)`: the `x = 1` series value obtained
/// from the moment closed form; `n = -1` drops the moment term.
pub fn bridge_value(which: Cor23, p: u32, ell: u32) -> Result<PiPoly> {
    let q = if which.is_odd_power() { 2 * p + 1 } else { 2 * p };
    if q == 0 {
        return Err(Error::InvalidParameter("even families need p >= 1".into()));
    }
    let qf = num_rational::BigRational::from_integer(factorial(q as u64));
    let lead = PiPoly::rat_term(crate::exact::pow2(-(q as i64)) / &qf, q as usize);
    let n = which.moment_n(ell);
    if n < 0 {
        return Ok(lead);
    }
    let moment = specialize_pi(&arcsine_power_integral(n as u32, q)?, SpecialPoint::One);
    Ok(&lead - &moment.scale(&(int(n + 1) / qf)))
}

/// Two-point extrapolation of `v(n1)`, `v(n2)` under `model`.
pub fn extrapolate<R: Real>(model: RateModel, n1: u64, v1: &R, n2: u64, v2: &R, prec: u32) -> R {
    let (w1, w2) = match model {
        RateModel::InverseN => (R::from_i64(n1 as i64, prec), R::from_i64(n2 as i64, prec)),
        RateModel::InverseSqrt => (
            R::from_i64(n1 as i64, prec).sqrt(),
            R::from_i64(n2 as i64, prec).sqrt(),
        ),
    };
    (w2.clone() * v2 - w1.clone() * v1) / (w2 - w1)
}

/// Value at `t = 0` of the polynomial through `(t(n_i), v_i)`, where `t`
/// is `1/n` or `1/sqrt(n)` per `model` (Neville's scheme).
pub fn extrapolate_limit<R: Real>(model: RateModel, ns: &[u64], vs: &[R], prec: u32) -> Result<R> {
    if ns.is_empty() || ns.len() != vs.len() || ns.contains(&0) {
        return Err(Error::InvalidParameter("extrapolation needs matching, nonzero indices".into()));
    }
    let t: Vec<R> = ns
        .iter()
        .map(|&n| {
            let n = R::from_i64(n as i64, prec);
            match model {
                RateModel::InverseN => R::one(prec) / n,
                RateModel::InverseSqrt => R::one(prec) / n.sqrt(),
            }
        })
        .collect();
    let mut p: Vec<R> = vs.iter().map(|v| v.with_prec(prec)).collect();
    for k in 1..p.len() {
        for i in (k..p.len()).rev() {
            // P_i <- (t_i P_(i-1) - t_(i-k) P_i)/(t_i - t_(i-k)) evaluated at 0
            let num = t[i].clone() * &p[i - 1] - t[i - k].clone() * &p[i];
            p[i] = num / (t[i].clone() - &t[i - k]);
        }
    }
    Ok(p.pop().expect("nonempty"))
}

/// Default pi-limit schedule.
pub const PI_SCHEDULE: [u64; 5] = [16, 64, 256, 1024, 4096];

/// Relative tolerance for the extrapolated pi limits.
pub const PI_EXTRAPOLATION_TOL: f64 = 1e-4;

fn pi_limit_case(family: PiFamily, p: u32, schedule: &[u64], rate: RateModel, prec: u32) -> Result<CaseResult> {
    let target = pi_limit_target::<Float>(family, p, prec);
    let values = schedule
        .iter()
        .map(|&n| pi_limit_value::<Float>(family, p, n, prec))
        .collect::<Result<Vec<_>>>()?;
    let errors: Vec<Float> = values.iter().map(|v| Float::with_val(prec, v - &target).abs()).collect();
    let monotone = errors.windows(2).all(|w| w[1] < w[0] || w[0].is_zero());
    let k = schedule.len();
    if k < 2 {
        return Err(Error::InvalidParameter("pi-limit schedule needs at least two points".into()));
    }
    let l = match rate {
        RateModel::InverseN => extrapolate(rate, schedule[k - 2], &values[k - 2], schedule[k - 1], &values[k - 1], prec),
        RateModel::InverseSqrt => extrapolate_limit(rate, schedule, &values, prec)?,
    };
    let rel = Float::with_val(prec, (l - &target) / &target).abs();
    let tol = Float::with_val(prec, PI_EXTRAPOLATION_TOL);
    let fam = match family {
        PiFamily::Odd => "odd",
        PiFamily::Even => "even",
    };
    Ok(CaseResult {
        case: format!("{fam} p={p} monotone={monotone}"),
        residual: sci(&rel),
        tolerance: sci(&tol),
        exact: false,
        pass: monotone && rel <= tol,
    })
}

/// Parameter grid per catalogue identity for the `series-all` suite.
fn series_grid() -> Vec<(&'static str, IdentityParams)> {
    let mut out = Vec::new();
    let pt = |s: &str| XArg::parse(s).expect("grid literal");
    let with = |p: u32, ell: u32, n: u32, m: u32, x: &str| IdentityParams { p, ell, n, m, x: pt(x) };
    for n in [0, 2, 4] {
        for x in ["0.5", "sqrt2/2", "0.9"] {
            out.push(("1.2", with(0, 0, n, 0, x)));
        }
    }
    for n in [0, 2, 4, 8] {
        out.push(("1.3", with(0, 0, n, 0, "1")));
    }
    for p in 0..=2 {
        for ell in 0..=2 {
            out.push(("2.9", with(p, ell, 0, 0, "1")));
            out.push(("2.10", with(p, ell, 0, 0, "1")));
            if p >= 1 {
                out.push(("2.11", with(p, ell, 0, 0, "1")));
                out.push(("2.12", with(p, ell, 0, 0, "1")));
            }
        }
    }
    for id in ["2.13", "2.14", "2.15", "2.16"] {
        let p0 = if id == "2.15" || id == "2.16" { 1 } else { 0 };
        for p in p0..=4 {
            for x in ["0.2", "0.5", "sqrt2/2", "0.9"] {
                out.push((id, with(p, 0, 0, 0, x)));
            }
        }
    }
    for id in ["2.17", "2.18", "2.19", "2.20", "2.23", "2.24", "lupu-odd", "lupu-even"] {
        let p0 = if matches!(id, "2.18" | "2.20" | "2.24" | "lupu-even") { 1 } else { 0 };
        for p in p0..=3 {
            out.push((id, with(p, 0, 0, 0, "1")));
        }
    }
    for (p, n, m) in [(0, 1, 2), (1, 1, 2), (2, 0, 3)] {
        for x in ["1", "0.5", "sqrt2/2"] {
            out.push(("5.2", with(p, 0, n, m, x)));
        }
    }
    out.push(("5.8", IdentityParams::default()));
    out
}

fn series_case(id: &str, params: &IdentityParams, terms: u64, ctx: &PrecisionContext) -> Result<CaseResult> {
    let prec = ctx.working();
    let spec = identity_lhs::<Float>(id, params, prec)?;
    let tol = ctx.tolerance::<Float>(16);
    let lhs = sum_series(&spec, &tol, terms, ctx)?;
    let rhs = corollary_rhs::<Float>(id, params, ctx)?.value(prec);
    let diff = Float::with_val(prec, &lhs.partial_sum - &rhs).abs();
    let scale = Float::with_val(prec, rhs.clone().abs()).max(&Float::with_val(prec, 1));
    let allowed = Float::with_val(prec, &lhs.tail_estimate + &tol * scale);
    let x = match &params.x {
        XArg::Special(SpecialPoint::One) => "1".to_string(),
        XArg::Special(SpecialPoint::Sqrt2Over2) => "sqrt2/2".to_string(),
        XArg::Decimal(s) => s.clone(),
    };
    let label = format!(
        "{id} p={} l={} n={} m={} x={x} terms={}",
        params.p, params.ell, params.n, params.m, lhs.terms_used
    );
    Ok(numeric(label, &diff, &allowed))
}

/// Runs suite `name` at the context precision.
pub fn run_suite(name: &str, params: &SuiteParams, ctx: &PrecisionContext) -> Result<SuiteReport> {
    let suite: Suite = name.parse()?;
    let prec = ctx.working();
    let p_bits = ctx.precision();
    let cases: Vec<CaseResult> = match suite {
        Suite::Thm21 => {
            let qmax = params.qmax.unwrap_or(8);
            let nmax = params.nmax.unwrap_or(8);
            let xs = x_points(&["0.1", "0.3", "0.5", "1/sqrt2", "0.9", "0.99", "1"], prec);
            let tol = ctx.tolerance::<Float>(16);
            let nx = xs.len();
            let grid: Vec<(u32, u32, usize)> = (1..=qmax)
                .flat_map(|q| (0..=nmax).flat_map(move |n| (0..nx).map(move |i| (q, n, i))))
                .collect();
            grid.par_iter()
                .map(|&(q, n, i)| {
                    let (xl, x) = &xs[i];
                    let case = format!("q={q} n={n} x={xl}");
                    collect(
                        case.clone(),
                        (|| {
                            let cf = arcsine_power_integral(n, q)?;
                            let v = eval_closed_form(&cf, x, ctx)?;
                            let quad = quadrature_i(n, q, x, ctx)?;
                            Ok(numeric(case, &Float::with_val(prec, v - &quad.value).abs(), &tol))
                        })(),
                    )
                })
                .collect()
        }
        Suite::Lemma32 => {
            let nmax = params.nmax.unwrap_or(4);
            let qmax = params.qmax.unwrap_or(6);
            let xs = x_points(&["0.3", "0.7", "1"], prec);
            let tol = ctx.tolerance::<Float>(28);
            let nx = xs.len();
            let grid: Vec<(u32, u32, usize)> = (0..=nmax)
                .flat_map(|n| (1..=qmax).flat_map(move |q| (0..nx).map(move |i| (n, q, i))))
                .collect();
            grid.par_iter()
                .map(|&(n, q, i)| {
                    let (xl, x) = &xs[i];
                    let case = format!("n={n} q={q} x={xl}");
                    collect(case.clone(), check_lemma32(n, q, x, ctx).map(|r| numeric(case, &r, &tol)))
                })
                .collect()
        }
        Suite::Lemma33 => {
            let kmax = params.kmax.unwrap_or(20);
            let xs = x_points(
                &["0", "0.25", "-0.25", "1/sqrt2", "-1/sqrt2", "0.99", "-0.99", "1", "-1"],
                prec,
            );
            let tol = ctx.tolerance::<Float>(8);
            let grid: Vec<(u64, usize)> = (0..=kmax as u64).flat_map(|k| (0..xs.len()).map(move |i| (k, i))).collect();
            grid.par_iter()
                .map(|&(k, i)| {
                    let (xl, x) = &xs[i];
                    let case = format!("k={k} x={xl}");
                    collect(
                        case.clone(),
                        lemma33_residuals(k, x, ctx).map(|r| {
                            let worst = r.iter().fold(Float::with_val(prec, 0), |m, v| m.max(v));
                            numeric(case, &worst, &tol)
                        }),
                    )
                })
                .collect()
        }
        Suite::Lemma34 => {
            let nmax = params.nmax.unwrap_or(6);
            let xs = x_points(&["0.3", "0.7", "1"], prec);
            let floor = ctx.tolerance::<Float>(10);
            let ws: Vec<(String, Float)> = ["-2", "-0.5", "0+", "1", "3"]
                .iter()
                .map(|s| {
                    let v = if *s == "0+" {
                        Float::with_val(prec, 1) >> p_bits
                    } else {
                        Float::parse_decimal(s, prec).expect("grid literal")
                    };
                    (s.to_string(), v)
                })
                .collect();
            let mut grid = Vec::new();
            for n in 0..=nmax {
                for i in 0..xs.len() {
                    for j in 0..ws.len() {
                        grid.push((n, i, Some(j)));
                    }
                    grid.push((n, i, None));
                }
            }
            grid.par_iter()
                .flat_map(|&(n, i, j)| {
                    let (xl, x) = &xs[i];
                    match j {
                        Some(j) => {
                            let (wl, w) = &ws[j];
                            let case = format!("J n={n} x={xl} w={wl}");
                            vec![collect(
                                case.clone(),
                                (|| {
                                    let c = j_closed_form(n, x, w, ctx)?;
                                    let q = quadrature_j(n, x, w, ctx)?;
                                    let tol = Float::with_val(prec, q.est_error.clone().max(&floor));
                                    Ok(numeric(case, &Float::with_val(prec, c - &q.value).abs(), &tol))
                                })(),
                            )]
                        }
                        None => {
                            let order = 8;
                            match w_expand_j(n, x, order, ctx) {
                                Ok(series) => (0..order)
                                    .map(|m| {
                                        let case = format!("[w^{m}]J n={n} x={xl}");
                                        collect(
                                            case.clone(),
                                            quadrature_j_coefficient(n, m as u32, x, ctx).map(|q| {
                                                let tol = Float::with_val(prec, q.est_error.clone().max(&floor));
                                                let d = Float::with_val(prec, &series.coefficients[m] - &q.value);
                                                numeric(case, &d.abs(), &tol)
                                            }),
                                        )
                                    })
                                    .collect(),
                                Err(e) => vec![failed_case(format!("[w]J n={n} x={xl}"), e)],
                            }
                        }
                    }
                })
                .collect()
        }
        Suite::Cor23Bridge => {
            let pmax = params.pmax.unwrap_or(6);
            let lmax = params.lmax.unwrap_or(6);
            let mut grid = Vec::new();
            for which in Cor23::ALL {
                let p0 = if which.is_odd_power() { 0 } else { 1 };
                for p in p0..=pmax {
                    for ell in 0..=lmax {
                        grid.push((which, p, ell));
                    }
                }
            }
            grid.par_iter()
                .map(|&(which, p, ell)| {
                    let case = format!("{} p={p} l={ell}", which.id());
                    collect(
                        case.clone(),
                        (|| Ok(exact_case(case, bridge_value(which, p, ell)? == cor23_rhs(which, p, ell)?)))(),
                    )
                })
                .collect()
        }
        Suite::Lemma43 => {
            let pmax = params.pmax.unwrap_or(50);
            let grid: Vec<(u8, u32)> = (1..=4u8).flat_map(|w| (1..=pmax).map(move |p| (w, p))).collect();
            grid.par_iter()
                .map(|&(w, p)| {
                    let case = format!("S{w} p={p}");
                    collect(case.clone(), check_lemma43(w, p).map(|ok| exact_case(case, ok)))
                })
                .collect()
        }
        Suite::Cor54 => {
            let lmax = params.lmax.unwrap_or(200) as u64;
            (1..=lmax)
                .into_par_iter()
                .flat_map(|l| {
                    let (a, b) = check_cor54(l);
                    vec![
                        exact_case(format!("binomial-square l={l}"), a),
                        exact_case(format!("odd-square l={l}"), b),
                    ]
                })
                .collect()
        }
        Suite::PiLimits => {
            let pmax = params.pmax.unwrap_or(3);
            let schedule = params.schedule.clone().unwrap_or_else(|| PI_SCHEDULE.to_vec());
            let mut grid = Vec::new();
            for p in 0..=pmax {
                grid.push((PiFamily::Odd, p));
                if p >= 1 {
                    grid.push((PiFamily::Even, p));
                }
            }
            grid.par_iter()
                .map(|&(f, p)| {
                    let case = format!("{f:?} p={p}").to_lowercase();
                    collect(case, pi_limit_case(f, p, &schedule, params.rate, prec))
                })
                .collect()
        }
        Suite::SeriesAll => {
            let terms = params.terms.unwrap_or(20_000);
            series_grid()
                .par_iter()
                .map(|(id, ps)| collect(format!("{id} {ps:?}"), series_case(id, ps, terms, ctx)))
                .collect()
        }
    };
    let passed = cases.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        precision: p_bits,
        cases,
        passed,
    })
}
