//! Frozen reference values. Decimal references were computed independently
//! (direct summation or quadrature at 40 digits).

use arcsin_moments::exact::rat;
use arcsin_moments::series::{
    corollary_rhs, cor23_rhs, identity_lhs, pi_limit_exact, Cor23, IdentityParams, XArg,
};
use arcsin_moments::verify::bridge_value;
use arcsin_moments::{
    arcsine_power_integral, eval_closed_form, pi_limit_value, specialize_pi, sum_series, zeta_beta_finite,
    BigFloat, PiFamily, PrecisionContext, Real, SeriesSpec, SpecialPoint,
};
use arcsin_moments::series::FiniteSum;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::bits(128).unwrap()
}

fn close(a: &Float, reference: &str, tol: &str) {
    let w = a.prec();
    let r = Float::with_val(w, Float::parse(reference).unwrap());
    let t = Float::with_val(w, Float::parse(tol).unwrap());
    let d = Float::with_val(w, a - &r).abs();
    assert!(d <= t, "{} vs {reference}: |diff| = {}", a.to_decimal(30), d.to_decimal(4));
}

fn params(id_p: u32, x: &str) -> IdentityParams {
    IdentityParams {
        p: id_p,
        x: XArg::parse(x).unwrap(),
        ..Default::default()
    }
}

fn rhs(id: &str, ps: &IdentityParams) -> Float {
    let c = ctx();
    corollary_rhs::<BigFloat>(id, ps, &c).unwrap().value(c.working())
}

fn lhs(id: &str, ps: &IdentityParams) -> Float {
    let c = ctx();
    let spec = identity_lhs::<BigFloat>(id, ps, c.working()).unwrap();
    let r = sum_series(&spec, &c.tolerance(16), 100_000, &c).unwrap();
    assert!(r.converged, "{id} did not converge");
    r.partial_sum
}

#[test]
fn closed_form_strings() {
    let f = arcsine_power_integral(0, 1).unwrap();
    assert_eq!(f.to_string(), "x*a + s - 1");
    assert_eq!(specialize_pi(&f, SpecialPoint::One).to_string(), "pi/2 - 1");
    assert_eq!(
        specialize_pi(&f, SpecialPoint::Sqrt2Over2).to_string(),
        "sqrt(2)*pi/8 + (-1 + sqrt(2)/2)"
    );
    assert!(arcsine_power_integral(2, 0).is_err());
}

#[test]
fn moments_against_quadrature_references() {
    let c = ctx();
    let w = c.working();
    let x = Float::with_val(w, Float::parse("0.7").unwrap());
    let v = eval_closed_form(&arcsine_power_integral(2, 3).unwrap(), &x, &c).unwrap();
    close(&v, "0.02444569513070853402985550837046183931847", "1e-35");
    let v = eval_closed_form(&arcsine_power_integral(1, 5).unwrap(), &Float::with_val(w, 1), &c).unwrap();
    close(&v, "0.4912911688285956122557204273042816292145", "1e-35");
}

#[test]
fn general_x_families_against_direct_sums() {
    for (id, p, reference) in [
        ("2.13", 1, "0.009111900796836908894339474558010401003627"),
        ("2.15", 2, "0.001269452422671400859121443094125643377714"),
    ] {
        let ps = params(p, "0.5");
        close(&rhs(id, &ps), reference, "1e-33");
        close(&lhs(id, &ps), reference, "1e-33");
    }
}

#[test]
fn nested_radical_points() {
    for (id, p, reference) in [
        ("2.23", 1, "0.01606188466752749451162596359484056598091"),
        ("2.24", 1, "0.03922759740211875329809303816694953271854"),
        ("2.24", 2, "0.0006692471524765391968708821990491916602811"),
    ] {
        let ps = params(p, "1");
        close(&rhs(id, &ps), reference, "1e-33");
        close(&lhs(id, &ps), reference, "1e-33");
    }
}

#[test]
fn exact_right_hand_sides() {
    let c = ctx();
    let exact = |id: &str, p: u32| {
        corollary_rhs::<BigFloat>(id, &params(p, "1"), &c)
            .unwrap()
            .exact()
            .unwrap()
            .to_string()
    };
    assert_eq!(exact("2.17", 0), "(2 - sqrt(2))");
    assert_eq!(exact("2.18", 1), "-pi/4 + 1");
    assert_eq!(exact("2.19", 0), "sqrt(2)*pi/4 - sqrt(2)/2");
    assert_eq!(exact("2.20", 1), "pi^2/32 - pi/8 + 1/4");
    assert_eq!(exact("2.20", 2), "pi^4/6144 - pi^3/768 + pi/32 - 1/16");
    assert_eq!(exact("5.8", 0), "pi^2/2");
    assert_eq!(exact("lupu-odd", 0), "sqrt(2)");
    assert_eq!(exact("lupu-even", 1), "pi/2");
    let pf = IdentityParams {
        p: 1,
        n: 1,
        m: 2,
        ..Default::default()
    };
    let v = corollary_rhs::<BigFloat>("5.2", &pf, &c).unwrap();
    assert_eq!(v.exact().unwrap().to_string(), "pi^3/96 - 47*pi/144 + 20/27");
}

#[test]
fn bridge_matches_corollary_families() {
    for which in Cor23::ALL {
        let p0 = if which.is_odd_power() { 0 } else { 1 };
        for p in p0..=3 {
            for ell in 0..=3 {
                assert_eq!(bridge_value(which, p, ell).unwrap(), cor23_rhs(which, p, ell).unwrap());
            }
        }
    }
}

#[test]
fn finite_sums_small_cases() {
    assert_eq!(zeta_beta_finite(FiniteSum::Zeta, 2, 1).unwrap(), rat(1, 2));
    assert_eq!(zeta_beta_finite(FiniteSum::Beta, 3, 1).unwrap(), rat(80, 81));
    assert!(zeta_beta_finite(FiniteSum::Zeta, 1, 4).is_err());
}

#[test]
fn pi_limit_exact_and_summed_agree() {
    let c = ctx();
    let w = c.working();
    assert_eq!(pi_limit_exact(PiFamily::Odd, 0, 6).unwrap().to_string(), "pi");
    let v: Float = pi_limit_value(PiFamily::Even, 1, 64, w).unwrap();
    // a direct two-million-term sum plus its n^-1/2 tail gives 9.2470
    close(&v, "9.24700685662922610382331335940", "1e-28");
    for (family, p, n) in [(PiFamily::Odd, 1, 5), (PiFamily::Odd, 2, 8), (PiFamily::Even, 1, 3), (PiFamily::Even, 2, 6)] {
        let exact: Float = pi_limit_value(family, p, n, w).unwrap();
        let spec = SeriesSpec::<BigFloat>::PiLimit { family, p, n };
        let summed = sum_series(&spec, &c.tolerance(16), 40_000, &c).unwrap();
        let (lo, hi) = summed.bracket();
        assert!(lo <= exact && exact <= hi, "{family:?} p={p} n={n}");
    }
}
