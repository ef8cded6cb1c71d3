//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line
//! to the (uncaptured) standard error stream.

use std::io::Write as _;
use std::time::{Duration, Instant};

use arcsin_moments::exact::{binomial, int, rat};
use arcsin_moments::series::{
    corollary_rhs, identity_lhs, lemma42_target, pi_limit_target, FiniteSum, IdentityParams, Side, XArg,
};
use arcsin_moments::verify::{extrapolate, extrapolate_limit, run_suite, RateModel, SuiteParams, PI_SCHEDULE};
use arcsin_moments::{
    pi_limit_value, sum_series, zeta_beta_finite, BigFloat, BigRational, PiFamily, PiPoly, PrecisionContext, QSqrt2,
    Real, SeriesSpec,
};
use rug::float::Constant;
use rug::Float;

const P: u32 = 128;

/// Criteria that cannot pass as literally stated; see the README.
const UNATTAINABLE: [u32; 2] = [3, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn ctx() -> PrecisionContext {
    PrecisionContext::bits(P).unwrap()
}

fn report(id: u32, name: &str, o: &Outcome) {
    let line = format!(
        "criterion {id} [{name}]: {} ({})\n",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn suite(name: &str, params: SuiteParams) -> (bool, usize, usize) {
    let r = run_suite(name, &params, &ctx()).unwrap();
    (r.passed, r.cases.len(), r.failures().count())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (pass, n, failed) = suite("thm21", SuiteParams::default());
    let elapsed = start.elapsed();
    Outcome {
        pass: pass && elapsed < Duration::from_secs(60),
        detail: format!("{n} cases, {failed} failed, {:.1}s", elapsed.as_secs_f64()),
    }
}

fn criterion_2() -> Outcome {
    let params = SuiteParams {
        pmax: Some(6),
        lmax: Some(6),
        ..Default::default()
    };
    let (pass, n, failed) = suite("cor23-bridge", params);
    Outcome {
        pass,
        detail: format!("{n} exact cases, {failed} mismatched"),
    }
}

fn q(u: BigRational, v: BigRational) -> QSqrt2 {
    QSqrt2::new(u, v)
}

fn zero() -> BigRational {
    int(0)
}

/// One printed constant: catalogue entry, its parameters, the printed
/// value as an exact polynomial in pi and as an independent float.
struct Printed {
    id: &'static str,
    params: IdentityParams,
    exact: PiPoly,
    float: fn(u32) -> Float,
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn sqrt2(prec: u32) -> Float {
    Float::with_val(prec, 2).sqrt()
}

fn printed_constants() -> Vec<Printed> {
    let at = |p: u32| IdentityParams {
        p,
        ..Default::default()
    };
    let pf = |p: u32, n: u32, m: u32| IdentityParams {
        p,
        n,
        m,
        x: XArg::parse("1").unwrap(),
        ..Default::default()
    };
    vec![
        Printed {
            id: "2.17",
            params: at(0),
            exact: PiPoly::new(vec![q(int(2), int(-1))]),
            float: |w| 2 - sqrt2(w),
        },
        Printed {
            id: "2.17",
            params: at(1),
            exact: PiPoly::new(vec![q(int(-2), int(1)), q(zero(), rat(1, 4)), q(zero(), rat(-1, 32))]),
            float: |w| {
                let (s, p) = (sqrt2(w), pi(w));
                -2 + s.clone() + p.clone() / (2 * s.clone()) - p.square() / (16 * s)
            },
        },
        Printed {
            id: "2.18",
            params: at(1),
            exact: PiPoly::new(vec![q(int(1), zero()), q(rat(-1, 4), zero())]),
            float: |w| 1 - pi(w) / 4,
        },
        Printed {
            id: "2.18",
            params: at(2),
            exact: PiPoly::new(vec![
                q(int(-1), zero()),
                q(rat(1, 4), zero()),
                q(rat(1, 32), zero()),
                q(rat(-1, 384), zero()),
            ]),
            float: |w| {
                let p = pi(w);
                -1 + p.clone() / 4 + p.clone().square() / 32 - p.powu(3) / 384
            },
        },
        Printed {
            id: "2.19",
            params: at(0),
            exact: PiPoly::new(vec![q(zero(), rat(-1, 2)), q(zero(), rat(1, 4))]),
            float: |w| sqrt2(w) * (pi(w) - 2) / 4,
        },
        Printed {
            id: "2.19",
            params: at(1),
            exact: PiPoly::new(vec![
                q(zero(), rat(1, 8)),
                q(zero(), zero()),
                q(zero(), rat(-1, 64)),
                q(zero(), rat(1, 384)),
            ]),
            float: |w| {
                let p = pi(w);
                sqrt2(w) * (p.clone().powu(3) - 6 * p.square() + 48) / 384
            },
        },
        Printed {
            id: "2.20",
            params: at(1),
            exact: PiPoly::new(vec![q(rat(1, 4), zero()), q(rat(-1, 8), zero()), q(rat(1, 32), zero())]),
            float: |w| {
                let p = pi(w);
                (p.clone().square() - 4 * p + 8) / 32
            },
        },
        Printed {
            id: "2.20",
            params: at(2),
            exact: PiPoly::new(vec![
                q(rat(1, 16), zero()),
                q(rat(1, 32), zero()),
                q(zero(), zero()),
                q(rat(-1, 768), zero()),
                q(rat(1, 6144), zero()),
            ]),
            float: |w| {
                let p = pi(w);
                (p.clone().powu(4) - 8 * p.clone().powu(3) + 192 * p + 384) / 6144
            },
        },
        Printed {
            id: "5.2",
            params: pf(0, 1, 2),
            exact: PiPoly::new(vec![q(rat(-2, 3), zero()), q(rat(1, 4), zero())]),
            float: |w| pi(w) / 4 - Float::with_val(w, 2) / 3,
        },
        Printed {
            id: "5.2",
            params: pf(1, 1, 2),
            exact: PiPoly::new(vec![
                q(rat(20, 27), zero()),
                q(rat(-47, 144), zero()),
                q(zero(), zero()),
                q(rat(1, 96), zero()),
            ]),
            float: |w| {
                let p = pi(w);
                p.clone().powu(3) / 96 - 47 * p / 144 + Float::with_val(w, 20) / 27
            },
        },
    ]
}

fn criterion_3() -> Outcome {
    let ctx = ctx();
    let w = ctx.working();
    let digits30 = Float::with_val(w, Float::parse("1e-30").unwrap());
    let mut bad = Vec::new();
    let all = printed_constants();
    for c in &all {
        let label = format!("{} p={}", c.id, c.params.p);
        let rhs = corollary_rhs::<BigFloat>(c.id, &c.params, &ctx).unwrap();
        let exact = rhs.exact().expect("exact right-hand side").clone();
        if exact != c.exact {
            bad.push(format!("{label}: PiPoly {exact} differs from printed"));
        }
        let spec = identity_lhs::<BigFloat>(c.id, &c.params, w).unwrap();
        let lhs = sum_series(&spec, &ctx.tolerance(16), 100_000, &ctx).unwrap();
        let value: Float = exact.eval(w);
        let gap = Float::with_val(w, &lhs.partial_sum - &value).abs();
        if gap > Float::with_val(w, &lhs.tail_estimate + ctx.tolerance::<Float>(16)) {
            bad.push(format!("{label}: series outside its tail bound"));
        }
        let printed = (c.float)(w);
        let scale = Float::with_val(w, printed.clone().abs()).max(&Float::with_val(w, 1));
        if Float::with_val(w, &value - &printed).abs() > Float::with_val(w, &digits30 * scale) {
            bad.push(format!("{label}: decimal differs from printed at 30 digits"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} constants, two routes each", all.len())
        } else {
            bad.join("; ")
        },
    }
}

fn criterion_4() -> Outcome {
    let (l43, _, f43) = suite(
        "lemma43",
        SuiteParams {
            pmax: Some(50),
            ..Default::default()
        },
    );
    let (c54, _, f54) = suite(
        "cor54",
        SuiteParams {
            lmax: Some(200),
            ..Default::default()
        },
    );
    let ctx = ctx();
    let w = ctx.working();
    let mut eq13_bad = Vec::new();
    for n in (0..=20u32).step_by(2) {
        let params = IdentityParams {
            n,
            ..Default::default()
        };
        let spec = identity_lhs::<BigFloat>("1.3", &params, w).unwrap();
        let lhs = sum_series(&spec, &ctx.tolerance(16), 100_000, &ctx).unwrap();
        let c = Float::with_val(w, rug::Integer::from_str_radix(&binomial(n as u64, n as i64 / 2).to_string(), 10).unwrap());
        let rhs = (c * pi(w)) >> (n + 1);
        let gap = Float::with_val(w, &lhs.partial_sum - &rhs).abs();
        if gap > lhs.tail_estimate {
            eq13_bad.push(n);
        }
    }
    Outcome {
        pass: l43 && c54 && eq13_bad.is_empty(),
        detail: format!(
            "lemma43 p<=50: {f43} failed; cor54 l<=200: {f54} failed; eq 1.3 even n<=20 outside tail: {eq13_bad:?}"
        ),
    }
}

/// The pi-limit property exactly as stated: strictly decreasing errors and
/// two-point `c/n` extrapolation from the last two points within `1e-4`.
fn criterion_5() -> Outcome {
    let w = ctx().working();
    let mut notes = Vec::new();
    let mut pass = true;
    let mut worst_sqrt = 0f64;
    for (family, p0) in [(PiFamily::Odd, 0), (PiFamily::Even, 1)] {
        for p in p0..=3 {
            let target: Float = pi_limit_target(family, p, w);
            let values: Vec<Float> = PI_SCHEDULE
                .iter()
                .map(|&n| pi_limit_value(family, p, n, w).unwrap())
                .collect();
            let errs: Vec<Float> = values.iter().map(|v| Float::with_val(w, v - &target).abs()).collect();
            let strict = errs.windows(2).all(|e| e[1] < e[0]);
            let k = PI_SCHEDULE.len();
            let l = extrapolate(RateModel::InverseN, PI_SCHEDULE[k - 2], &values[k - 2], PI_SCHEDULE[k - 1], &values[k - 1], w);
            let rel = Float::with_val(w, (l - &target) / &target).abs().to_f64();
            let l = extrapolate_limit(RateModel::InverseSqrt, &PI_SCHEDULE, &values, w).unwrap();
            worst_sqrt = worst_sqrt.max(Float::with_val(w, (l - &target) / &target).abs().to_f64());
            if !strict || rel > 1e-4 {
                pass = false;
                notes.push(format!("{family:?} p={p}: strict={strict} c/n rel={rel:.2e}"));
            }
        }
    }
    notes.push(format!("n^-1/2 fit worst rel={worst_sqrt:.2e}"));
    Outcome {
        pass,
        detail: notes.join("; "),
    }
}

fn criterion_6() -> Outcome {
    let w = ctx().working();
    let ells: Vec<u64> = (4..=11).map(|e| 1u64 << e).collect();
    let mut bad = Vec::new();
    for kind in FiniteSum::ALL {
        for s in 2..=4 {
            let target: Float = lemma42_target(kind, s, w);
            let errs: Vec<Float> = ells
                .iter()
                .map(|&l| {
                    let v = BigFloat::from_rational(&zeta_beta_finite(kind, s, l).unwrap(), w);
                    Float::with_val(w, v - &target).abs()
                })
                .collect();
            if !errs.windows(2).all(|e| e[1] <= e[0]) {
                bad.push(format!("{} s={s}", kind.label()));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("12 sequences over l=16..2048, non-monotone: {bad:?}"),
    }
}

fn criterion_7() -> Outcome {
    let (l32, n32, f32_) = suite(
        "lemma32",
        SuiteParams {
            nmax: Some(4),
            qmax: Some(6),
            ..Default::default()
        },
    );
    let (l34, n34, f34) = suite("lemma34", SuiteParams::default());
    Outcome {
        pass: l32 && l34,
        detail: format!("lemma32 {n32} cases, {f32_} failed; generating function {n34} cases, {f34} failed"),
    }
}

fn criterion_8() -> Outcome {
    let ctx = ctx();
    let w = ctx.working();
    let tiny = Float::with_val(w, 1) >> 1000u32;
    let left = sum_series(&SeriesSpec::<BigFloat>::PiSquaredHalf { side: Side::Left }, &tiny, 100_000, &ctx).unwrap();
    let right = sum_series(&SeriesSpec::<BigFloat>::PiSquaredHalf { side: Side::Right }, &tiny, 100_000, &ctx).unwrap();
    let target = pi(w).square() / 2;
    let gap = Float::with_val(w, &left.partial_sum - &right.partial_sum).abs();
    let close = gap < Float::with_val(w, &left.tail_estimate + &right.tail_estimate);
    let brackets = |r: &arcsin_moments::SeriesResult<BigFloat>| {
        let (lo, hi) = r.bracket();
        lo <= target && target <= hi
    };
    let (bl, br) = (brackets(&left), brackets(&right));
    Outcome {
        pass: close && bl && br && left.terms_used == 100_000 && right.terms_used == 100_000,
        detail: format!(
            "|L-R|={} tails {}+{}, brackets {bl}/{br}",
            gap.to_decimal(3),
            left.tail_estimate.to_decimal(3),
            right.tail_estimate.to_decimal(3)
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "closed form vs quadrature grid", criterion_1),
        (2, "pi-polynomial bridge", criterion_2),
        (3, "printed constants", criterion_3),
        (4, "exact identity suites", criterion_4),
        (5, "pi-limit sequences", criterion_5),
        (6, "finite zeta/beta sums", criterion_6),
        (7, "generating-function machinery", criterion_7),
        (8, "double series for pi^2/2", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (id, name, f) in criteria {
        let o = f();
        report(id, name, &o);
        if !o.pass && !UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}

/// Literal forms of the two criteria that cannot pass; run with `--ignored`.
#[test]
#[ignore = "fails as stated: one printed constant has a sign error"]
fn printed_constants_verbatim() {
    let o = criterion_3();
    assert!(o.pass, "{}", o.detail);
}

#[test]
#[ignore = "fails as stated: the sequences converge like n^-1/2"]
fn pi_limits_under_inverse_n_model() {
    let o = criterion_5();
    assert!(o.pass, "{}", o.detail);
}
