//! Independent numerical and exact checks of the closed forms.

mod exact_checks;
mod generating;
mod quadrature;
mod suite;

pub use exact_checks::{check_cor54, check_lemma43, cor54_sides, lemma43_closed};
pub use generating::{check_lemma32, j_closed_form, w_expand_j, WSeries};
pub use quadrature::{integrate, quadrature_i, quadrature_j, quadrature_j_coefficient, QuadratureReport};
pub use suite::{
    bridge_value, extrapolate, extrapolate_limit, run_suite, CaseResult, RateModel, Suite, SuiteParams, SuiteReport,
    PI_EXTRAPOLATION_TOL, PI_SCHEDULE,
};
