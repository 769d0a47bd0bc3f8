use rayon::prelude::*;

use crate::error::{IfsError, Result};
use crate::ifs::{check_weights, IfsSystem};
use crate::measure::{phi_eval, BoundedValue};

/// `∫_0^1 φ = (1/N) Σ_{n=1}^{N} n·p_{N-n}` for equal-width similitudes.
pub fn integral_equalwidth(system: &IfsSystem) -> Result<f64> {
    if !system.is_equal_width() {
        return Err(IfsError::Applicability(
            "the closed-form integral needs equal-width similitudes".into(),
        ));
    }
    integral_equalwidth_weights(system.weights())
}

/// Closed-form integral from the weights alone.
pub fn integral_equalwidth_weights(weights: &[f64]) -> Result<f64> {
    check_weights(weights)?;
    let n = weights.len() - 1;
    let sum: f64 = (1..=n).map(|k| k as f64 * weights[n - k]).sum();
    Ok(sum / n as f64)
}

/// Composite midpoint rule on `grid_size` cells.
///
/// `φ` is nondecreasing with total variation 1, so the rule is off by at most
/// `1/grid_size`; the mean truncation bound of the evaluations is added on
/// top.
pub fn integral_quadrature(system: &IfsSystem, grid_size: usize, tol: f64) -> Result<BoundedValue> {
    let grid_size = grid_size.max(1);
    let h = 1.0 / grid_size as f64;
    let values = (0..grid_size)
        .into_par_iter()
        .map(|i| phi_eval(system, (i as f64 + 0.5) * h, tol))
        .collect::<Result<Vec<_>>>()?;
    let value = values.iter().map(|v| v.value).sum::<f64>() * h;
    let truncation = values.iter().map(|v| v.error_bound).sum::<f64>() * h;
    Ok(BoundedValue {
        value,
        error_bound: h + truncation,
    })
}
