use serde::{Deserialize, Serialize};

use crate::error::{IfsError, Result};
use crate::ifs::IfsSystem;
use crate::measure::{enclose, phi_equalwidth, BoundedValue, CdfValue};

use super::{rounding_slack, Residual};

/// `φ̂(x) = [x] + φ(x - [x])`, kept as its two parts so that integer shifts
/// are exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtendedValue {
    pub integer_part: f64,
    pub fraction: CdfValue,
}

impl ExtendedValue {
    pub fn value(&self) -> f64 {
        self.integer_part + self.fraction.value
    }

    pub fn error_bound(&self) -> f64 {
        self.fraction.error_bound
    }
}

const MAX_EXTEND_ARG: f64 = 4_503_599_627_370_496.0; // 2^52

/// Extension of `φ` to the real line for equal-width similitudes.
pub fn extend_phi(system: &IfsSystem, x: f64, tol: f64) -> Result<ExtendedValue> {
    if !system.is_equal_width() {
        return Err(IfsError::Applicability(
            "the extension to the real line needs equal-width similitudes".into(),
        ));
    }
    if x.is_nan() || x.abs() > MAX_EXTEND_ARG {
        return Err(IfsError::Domain(format!("|x| = {} exceeds 2^52", x.abs())));
    }
    let integer_part = x.floor();
    let fraction = phi_equalwidth(system.weights(), x - integer_part, tol)?;
    Ok(ExtendedValue {
        integer_part,
        fraction,
    })
}

/// `φ̂` at a rounded argument, enclosed over `ulps` units of its last place.
fn extend_rounded(system: &IfsSystem, y: f64, ulps: f64, tol: f64) -> Result<BoundedValue> {
    let radius = ulps * f64::EPSILON * y.abs().max(1.0);
    enclose(y, radius, |t| {
        extend_phi(system, t, tol).map(|v| (v.value(), v.error_bound()))
    })
}

/// `φ̂(x) - Σ_n φ̂((x+n)/(N+1)) + Σ_{n≥1} φ̂(n/(N+1))` for any real `x`.
///
/// The arguments `(x+n)/(N+1)` and `n/(N+1)` are rounded, so those terms are
/// enclosed over their rounding error.
pub fn extension_residual(system: &IfsSystem, x: f64, tol: f64) -> Result<Residual> {
    let count = system.weights().len();
    let base = count as f64;
    let center = extend_phi(system, x, tol)?;
    let mut value = center.value();
    let mut bound = center.error_bound();
    for n in 0..count {
        let shifted = x + n as f64;
        // one rounding in the sum, one in the quotient
        let ulps = 2.0 * shifted.abs().max(1.0) / (shifted / base).abs().max(1.0);
        let image = extend_rounded(system, shifted / base, ulps, tol)?;
        value -= image.value;
        bound += image.error_bound;
        if n > 0 {
            let anchor = extend_rounded(system, n as f64 / base, 1.0, tol)?;
            value += anchor.value;
            bound += anchor.error_bound;
        }
    }
    bound += rounding_slack(2 * count, x.abs() + count as f64);
    Ok(Residual { value, bound })
}
