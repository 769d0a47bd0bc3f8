//! Checks and derived quantities built on top of [`crate::measure`].

use serde::{Deserialize, Serialize};

mod classify;
mod combo;
mod extend;
mod integral;
mod residual;

pub use classify::{
    classify_similitude, identity_criterion, regularity_check, ClassificationResult,
    RegularityReport, Verdict,
};
pub use combo::{
    combo_eval, combo_monotone_check, combo_residual, independence_probe, ComboSpec, ComboTerm,
    MonotoneReport, Monotonicity,
};
pub use extend::{extend_phi, extension_residual, ExtendedValue};
pub use integral::{integral_equalwidth, integral_equalwidth_weights, integral_quadrature};
pub use residual::{equation_residual, nominal_residual_bound};

/// A residual of a functional equation together with the accumulated
/// truncation bound of the evaluations that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub value: f64,
    pub bound: f64,
}

impl Residual {
    pub fn within_bound(&self) -> bool {
        self.value.abs() <= self.bound
    }
}

/// Round-off allowance for a sum of `terms` values of size at most
/// `magnitude`.
pub(crate) fn rounding_slack(terms: usize, magnitude: f64) -> f64 {
    4.0 * terms as f64 * f64::EPSILON * magnitude.max(1.0)
}
