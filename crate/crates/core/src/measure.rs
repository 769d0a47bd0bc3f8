//! Cylinder masses of the invariant measure `μ` and certified evaluation of
//! its distribution function `φ(x) = μ([0, x])`.
//!
//! Along the digit expansion `(x_k)` of `x`, the gap between consecutive
//! left endpoints has mass
//!
//! ```text
//! μ([f_{x_1…x_{k-1}}(0), f_{x_1…x_k}(0)]) = Π_{i<k} p_{x_i} · Σ_{n<x_k} p_n
//! ```
//!
//! so the partial sum `S_K` of these gaps is exactly `μ([0, f_{x_1…x_K}(0)])`
//! and `φ(x)` lies in `[S_K, S_K + Π_{i≤K} p_{x_i}]`. Evaluation stops as soon
//! as that cell mass drops below the requested tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{IfsError, Result};
use crate::ifs::{
    check_unit, check_weights, cumulative_weights, DigitString, GreedyWalk, IfsSystem, RadixWalk,
};

/// Default truncation tolerance on the containing cell's mass.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default cap on the expansion depth.
///
/// A cell of mass `(max p)^K` needs `K ≈ 263` to fall below `1e-12` when
/// `max p = 0.9`.
pub const DEFAULT_MAX_DEPTH: usize = 1024;

/// A bracketed value of `φ(x)`: the true value lies in
/// `[value, value + error_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdfValue {
    pub value: f64,
    pub error_bound: f64,
    /// Number of digits consumed.
    pub depth: usize,
    /// False when the depth cap bound before the tolerance was met.
    pub tolerance_reached: bool,
}

impl CdfValue {
    fn exact(value: f64, depth: usize) -> Self {
        Self {
            value,
            error_bound: 0.0,
            depth,
            tolerance_reached: true,
        }
    }

    /// Upper end of the bracket.
    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    /// Midpoint of the bracket.
    pub fn midpoint(&self) -> f64 {
        self.value + 0.5 * self.error_bound
    }
}

/// A mass or difference of CDF values with a symmetric error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundedValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Neumaier compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums the gap masses along a digit stream.
///
/// A remainder of exactly 0 means `x` is the left endpoint of the current
/// cell, so the partial sum is already exact; a remainder of exactly 1 means
/// `x` is its right endpoint.
fn cdf_series<I>(
    weights: &[f64],
    cumulative: &[f64],
    x: f64,
    digits: I,
    tol: f64,
    max_depth: usize,
) -> CdfValue
where
    I: Iterator<Item = (usize, f64)>,
{
    if x == 0.0 {
        return CdfValue::exact(0.0, 0);
    }
    if x == 1.0 {
        return CdfValue::exact(1.0, 0);
    }
    let mut sum = CompensatedSum::default();
    let mut mass = 1.0;
    let mut depth = 0;
    for (digit, rest) in digits.take(max_depth) {
        depth += 1;
        sum.add(mass * cumulative[digit]);
        mass *= weights[digit];
        if rest == 0.0 {
            return CdfValue::exact(sum.total().clamp(0.0, 1.0), depth);
        }
        if rest == 1.0 {
            sum.add(mass);
            return CdfValue::exact(sum.total().clamp(0.0, 1.0), depth);
        }
        if mass <= tol {
            break;
        }
    }
    let value = sum.total().clamp(0.0, 1.0);
    CdfValue {
        value,
        error_bound: mass,
        depth,
        tolerance_reached: mass <= tol,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(IfsError::Domain(format!(
            "tolerance {tol} must be positive"
        )))
    }
}

/// `μ([f_{x_1…x_k}(0), f_{x_1…x_k}(1)]) = Π_i p_{x_i}`; 1 for the empty string.
pub fn cell_mass(system: &IfsSystem, digits: &DigitString) -> Result<f64> {
    let w = system.weights();
    digits.digits().iter().try_fold(1.0, |acc, &d| {
        w.get(d).map(|p| acc * p).ok_or_else(|| {
            IfsError::Domain(format!("digit {d} exceeds N = {}", system.max_digit()))
        })
    })
}

/// `μ([f_{x_1…x_{k-1}}(0), f_{x_1…x_k}(0)])`; zero when the last digit is 0.
pub fn gap_mass(system: &IfsSystem, digits: &DigitString) -> Result<f64> {
    let (&last, head) = digits
        .digits()
        .split_last()
        .ok_or_else(|| IfsError::Domain("gap mass needs at least one digit".into()))?;
    if last > system.max_digit() {
        return Err(IfsError::Domain(format!(
            "digit {last} exceeds N = {}",
            system.max_digit()
        )));
    }
    let prefix = cell_mass(system, &DigitString::new(head.to_vec()))?;
    Ok(prefix * system.cumulative_weights()[last])
}

/// `φ(x)` via greedy digit expansion, truncated once the containing cell's
/// mass is at most `tol`.
pub fn phi_eval(system: &IfsSystem, x: f64, tol: f64) -> Result<CdfValue> {
    phi_eval_capped(system, x, tol, DEFAULT_MAX_DEPTH)
}

/// [`phi_eval`] with an explicit depth cap.
pub fn phi_eval_capped(system: &IfsSystem, x: f64, tol: f64, max_depth: usize) -> Result<CdfValue> {
    check_unit(x)?;
    check_tol(tol)?;
    Ok(cdf_series(
        system.weights(),
        system.cumulative_weights(),
        x,
        GreedyWalk::new(system, x),
        tol,
        max_depth,
    ))
}

/// `φ_p` for the halving system with weights `(p, 1-p)`, read off the binary
/// digits of `x`.
pub fn phi_p(p: f64, x: f64, tol: f64) -> Result<CdfValue> {
    if !(p > 0.0 && p < 1.0) {
        return Err(IfsError::Domain(format!("p = {p} must lie in (0,1)")));
    }
    check_unit(x)?;
    check_tol(tol)?;
    let weights = [p, 1.0 - p];
    let cumulative = [0.0, p, 1.0];
    Ok(cdf_series(
        &weights,
        &cumulative,
        x,
        RadixWalk::new(2, x),
        tol,
        DEFAULT_MAX_DEPTH,
    ))
}

/// `φ` for the equal-width similitudes `(x + n)/(N+1)`, read off the
/// base-`(N+1)` digits of `x`.
pub fn phi_equalwidth(weights: &[f64], x: f64, tol: f64) -> Result<CdfValue> {
    check_weights(weights)?;
    check_unit(x)?;
    check_tol(tol)?;
    let cumulative = cumulative_weights(weights);
    Ok(cdf_series(
        weights,
        &cumulative,
        x,
        RadixWalk::new(weights.len(), x),
        tol,
        DEFAULT_MAX_DEPTH,
    ))
}

/// Encloses `φ(t)` for every `t` within `radius` of `y`.
///
/// Use this when `y` is a rounded value of the intended argument. `φ` is
/// only Hölder continuous, so a one-ulp error in the argument can move the
/// value far more than the truncation bound; since `φ` is nondecreasing,
/// evaluations at `y ± radius` bracket it. The value is the estimate at
/// `y` and the bound covers the whole bracket.
pub fn phi_enclosure(system: &IfsSystem, y: f64, radius: f64, tol: f64) -> Result<BoundedValue> {
    check_unit(y)?;
    enclose(y, radius, |t| {
        phi_eval(system, t.clamp(0.0, 1.0), tol).map(|v| (v.value, v.error_bound))
    })
}

/// Monotone enclosure of `f` on `[y - radius, y + radius]`, where
/// `f` returns a lower estimate and a one-sided bound.
pub(crate) fn enclose<F>(y: f64, radius: f64, f: F) -> Result<BoundedValue>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    let (value, bound) = f(y)?;
    if radius <= 0.0 {
        return Ok(BoundedValue {
            value,
            error_bound: bound,
        });
    }
    let (low, _) = f(y - radius)?;
    let (high, high_bound) = f(y + radius)?;
    Ok(BoundedValue {
        value,
        error_bound: (value - low).max(high + high_bound - value).max(bound),
    })
}

/// `μ([a, b]) = φ(b) - φ(a)`, with the two truncation bounds summed.
pub fn interval_mass(system: &IfsSystem, a: f64, b: f64, tol: f64) -> Result<BoundedValue> {
    check_unit(a)?;
    check_unit(b)?;
    if a > b {
        return Err(IfsError::Domain(format!(
            "interval endpoints out of order: {a} > {b}"
        )));
    }
    let lo = phi_eval(system, a, tol)?;
    let hi = phi_eval(system, b, tol)?;
    Ok(BoundedValue {
        value: (hi.value - lo.value).max(0.0),
        error_bound: lo.error_bound + hi.error_bound,
    })
}
