//! The span of `{φ_p : p ∈ (0,1)} ∪ {1}`.
//!
//! Every element `Σ α_i φ_{p_i} + β` solves the halving equation
//! `φ(x) = φ(x/2) + φ((x+1)/2) - φ(1/2)`, and is monotone when all
//! coefficients share a sign.

use serde::{Deserialize, Serialize};

use crate::error::{IfsError, Result};
use crate::measure::{enclose, phi_p, BoundedValue};

use super::{rounding_slack, Residual};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComboTerm {
    pub coefficient: f64,
    pub parameter: f64,
}

/// A finite linear combination `Σ α_i φ_{p_i} + β`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComboSpec {
    terms: Vec<ComboTerm>,
    constant: f64,
}

impl ComboSpec {
    /// Terms as `(α_i, p_i)` pairs; the `p_i` must be distinct points of `(0,1)`.
    pub fn new(terms: &[(f64, f64)], constant: f64) -> Result<Self> {
        for (i, &(a, p)) in terms.iter().enumerate() {
            if !(p > 0.0 && p < 1.0) {
                return Err(IfsError::Parameter(format!(
                    "p_{i} = {p} must lie in (0,1)"
                )));
            }
            if !a.is_finite() {
                return Err(IfsError::Parameter(format!(
                    "coefficient {a} is not finite"
                )));
            }
            if terms[..i].iter().any(|&(_, q)| q == p) {
                return Err(IfsError::Parameter(format!("parameter {p} appears twice")));
            }
        }
        if !constant.is_finite() {
            return Err(IfsError::Parameter(format!(
                "constant {constant} is not finite"
            )));
        }
        if terms.is_empty() && constant == 0.0 {
            return Err(IfsError::Parameter(
                "a combination needs a term or a nonzero constant".into(),
            ));
        }
        Ok(Self {
            terms: terms
                .iter()
                .map(|&(coefficient, parameter)| ComboTerm {
                    coefficient,
                    parameter,
                })
                .collect(),
            constant,
        })
    }

    pub fn terms(&self) -> &[ComboTerm] {
        &self.terms
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// `Σ |α_i|`.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }
}

/// `Σ α_i φ_{p_i}(x) + β` with bound `Σ |α_i|·bound_i`.
pub fn combo_eval(combo: &ComboSpec, x: f64, tol: f64) -> Result<BoundedValue> {
    let mut value = combo.constant;
    let mut error_bound = 0.0;
    for t in &combo.terms {
        let v = phi_p(t.parameter, x, tol)?;
        value += t.coefficient * v.value;
        error_bound += t.coefficient.abs() * v.error_bound;
    }
    Ok(BoundedValue { value, error_bound })
}

/// [`combo_eval`] with each term enclosed over `[y - radius, y + radius]`.
fn combo_eval_rounded(combo: &ComboSpec, y: f64, radius: f64, tol: f64) -> Result<BoundedValue> {
    let mut value = combo.constant;
    let mut error_bound = 0.0;
    for t in &combo.terms {
        let v = enclose(y, radius, |s| {
            phi_p(t.parameter, s.clamp(0.0, 1.0), tol).map(|v| (v.value, v.error_bound))
        })?;
        value += t.coefficient * v.value;
        error_bound += t.coefficient.abs() * v.error_bound;
    }
    Ok(BoundedValue { value, error_bound })
}

/// `v(x) - v(x/2) - v((x+1)/2) + v(1/2)`.
///
/// Only `(x+1)/2` is rounded; that term is enclosed over one ulp.
pub fn combo_residual(combo: &ComboSpec, x: f64, tol: f64) -> Result<Residual> {
    let parts = [
        (1.0, x, 0.0),
        (-1.0, x / 2.0, 0.0),
        (-1.0, (x + 1.0) / 2.0, f64::EPSILON),
        (1.0, 0.5, 0.0),
    ];
    let mut value = 0.0;
    let mut bound = 0.0;
    for (sign, at, radius) in parts {
        let v = combo_eval_rounded(combo, at, radius, tol)?;
        value += sign * v.value;
        bound += v.error_bound;
    }
    let terms = 4 * (combo.terms.len() + 1);
    bound += rounding_slack(terms, combo.coefficient_norm() + combo.constant.abs());
    Ok(Residual { value, bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    NonDecreasing,
    NonIncreasing,
    Constant,
    NotMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    /// Direction implied by the coefficient signs; `None` for mixed signs.
    pub predicted: Option<Monotonicity>,
    /// Direction observed on the grid, up to the evaluation bounds.
    pub empirical: Monotonicity,
}

/// Compares the sign-condition prediction with values on a uniform grid.
pub fn combo_monotone_check(
    combo: &ComboSpec,
    grid_size: usize,
    tol: f64,
) -> Result<MonotoneReport> {
    let grid_size = grid_size.max(2);
    let predicted = if combo.terms.is_empty() {
        Some(Monotonicity::Constant)
    } else if combo.terms.iter().all(|t| t.coefficient > 0.0) {
        Some(Monotonicity::NonDecreasing)
    } else if combo.terms.iter().all(|t| t.coefficient < 0.0) {
        Some(Monotonicity::NonIncreasing)
    } else {
        None
    };
    let values = (0..grid_size)
        .map(|i| combo_eval(combo, i as f64 / (grid_size - 1) as f64, tol))
        .collect::<Result<Vec<_>>>()?;
    let (mut up, mut down) = (true, true);
    for w in values.windows(2) {
        let slack = w[0].error_bound + w[1].error_bound;
        up &= w[1].value >= w[0].value - slack;
        down &= w[1].value <= w[0].value + slack;
    }
    let empirical = match (up, down) {
        (true, true) => Monotonicity::Constant,
        (true, false) => Monotonicity::NonDecreasing,
        (false, true) => Monotonicity::NonIncreasing,
        (false, false) => Monotonicity::NotMonotone,
    };
    Ok(MonotoneReport {
        predicted,
        empirical,
    })
}

/// Determinant of `M[i][k] = φ_{p_i}(2^{-k})`, `k = 1..=n`.
///
/// Since `φ_p(2^{-k}) = p^k`, this is a generalized Vandermonde determinant
/// `Π p_i · Π_{i<j} (p_j - p_i)`; a nonzero value certifies that the
/// functions are linearly independent.
pub fn independence_probe(params: &[f64]) -> Result<f64> {
    let n = params.len();
    if !(2..=8).contains(&n) {
        return Err(IfsError::Parameter(format!(
            "between 2 and 8 parameters are required, got {n}"
        )));
    }
    for (i, &p) in params.iter().enumerate() {
        if !(p > 0.0 && p < 1.0) {
            return Err(IfsError::Parameter(format!(
                "p_{i} = {p} must lie in (0,1)"
            )));
        }
        if params[..i].contains(&p) {
            return Err(IfsError::Parameter(format!("parameter {p} appears twice")));
        }
    }
    let mut rows = params
        .iter()
        .map(|&p| {
            (1..=n)
                .map(|k| phi_p(p, 0.5f64.powi(k as i32), f64::MIN_POSITIVE).map(|v| v.value))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(&mut rows))
}

/// Gaussian elimination with partial pivoting; consumes the matrix.
fn determinant(m: &mut [Vec<f64>]) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let (top, bottom) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom {
            let factor = row[col] / pivot_row[col];
            for (a, b) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *a -= factor * b;
            }
        }
    }
    det
}
