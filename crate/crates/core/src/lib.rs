//! Moments of powers of the arcsine and the series they generate.
//!
//! The crate has an exact layer (big rationals, integer-coefficient
//! polynomials, symbolic closed forms in `x`, `sqrt(1-x^2)` and `arcsin x`)
//! and a numeric layer generic over [`Real`], implemented for `f64` and for
//! MPFR floats ([`BigFloat`]). Independent oracles (adaptive quadrature,
//! generating-function coefficient extraction, brute-force sums) live in
//! [`verify`].
//!
//! ```
//! use arcsin_moments::{arcsine_power_integral, specialize_pi, SpecialPoint};
//!
//! let form = arcsine_power_integral(0, 1).unwrap();
//! assert_eq!(form.to_string(), "x*a + s - 1");
//! let at_one = specialize_pi(&form, SpecialPoint::One);
//! assert_eq!(at_one.to_string(), "pi/2 - 1");
//! ```

pub mod chebyshev;
pub mod closed_form;
pub mod error;
pub mod exact;
pub mod harmonic;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod verify;

pub use num_rational::BigRational;

pub use chebyshev::{arcsin, chebyshev_t, chebyshev_u, eval_poly, lemma33_residuals};
pub use closed_form::{
    arcsine_power_integral, eval_closed_form, specialize_pi, trig_partial, ClosedForm, PiPoly,
    QSqrt2, SpecialPoint, TrigKind, TrigPartialPoly,
};
pub use error::{Error, Result};
pub use exact::{
    bernoulli, binomial, euler_number, half_integer_central_binomial, lemma43_sum,
    poly_value_half, PolyKind, RationalOverPi,
};
pub use harmonic::{g_table, h_table, HarmonicKind, HarmonicTable};
pub use scalar::{PrecisionContext, Real};
pub use series::{
    central_binomial_ratio_step, corollary_rhs, lupu_rhs, partial_fraction_series,
    pi_limit_value, sum_series, zeta_beta_finite, PiFamily, SeriesResult, SeriesSpec,
};
pub use verify::{
    check_lemma32, j_closed_form, quadrature_i, quadrature_j, run_suite, w_expand_j, RateModel,
    SuiteParams, SuiteReport,
};

/// Arbitrary-precision binary float (MPFR).
pub type BigFloat = rug::Float;
/// Polynomial with arbitrary-size integer coefficients.
pub type IntPoly = poly::Poly<num_bigint::BigInt>;
/// Polynomial with exact rational coefficients.
pub type RatPoly = poly::Poly<BigRational>;
