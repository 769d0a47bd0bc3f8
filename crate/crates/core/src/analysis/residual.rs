use crate::error::Result;
use crate::ifs::IfsSystem;
use crate::measure::{phi_enclosure, phi_eval};

use super::{rounding_slack, Residual};

/// `r(x) = φ(x) - Σ_n φ(f_n(x)) + Σ_{n≥1} φ(f_n(0))`.
///
/// The returned bound is the sum of the truncation bounds of the `2N + 2`
/// evaluations plus a round-off allowance of `4ε` per term. The images
/// `f_n(x)` are rounded, so their terms are enclosed over the rounding
/// error of the map.
pub fn equation_residual(system: &IfsSystem, x: f64, tol: f64) -> Result<Residual> {
    let center = phi_eval(system, x, tol)?;
    let mut value = center.value;
    let mut bound = center.error_bound;
    for (n, map) in system.maps().iter().enumerate() {
        let image = phi_enclosure(system, map.eval(x), map.eval_error(), tol)?;
        value -= image.value;
        bound += image.error_bound;
        if n > 0 {
            let anchor = phi_eval(system, map.low(), tol)?;
            value += anchor.value;
            bound += anchor.error_bound;
        }
    }
    bound += rounding_slack(2 * system.maps().len(), 1.0);
    Ok(Residual { value, bound })
}

/// `(2N + 2)·tol`.
pub fn nominal_residual_bound(system: &IfsSystem, tol: f64) -> f64 {
    (2 * system.max_digit() + 2) as f64 * tol
}
