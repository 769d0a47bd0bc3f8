use serde::{Deserialize, Serialize};

use crate::ifs::{ContractionMap, IfsSystem};

/// Which class the distribution function of `μ` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `φ` is absolutely continuous and equals the identity.
    AbsolutelyContinuousIdentity,
    /// `φ` is continuous, increasing and singular.
    Singular,
    /// No criterion applies to this system.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    /// First index with `p_n ≠ ρ_n` when singular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    /// The criterion only covers similitude systems.
    pub similitudes_only: bool,
}

const CLASSIFY_ULPS: f64 = 8.0;

/// For similitudes, `φ` is absolutely continuous exactly when every weight
/// equals its ratio, and then `φ` is the identity; otherwise it is singular.
/// Systems with warped maps get [`Verdict::Unknown`].
pub fn classify_similitude(system: &IfsSystem) -> ClassificationResult {
    if !system.is_similitude() {
        return ClassificationResult {
            verdict: Verdict::Unknown,
            witness: None,
            similitudes_only: true,
        };
    }
    let witness = system
        .maps()
        .iter()
        .zip(system.weights())
        .position(|(m, &p)| {
            let rho = m.width();
            (p - rho).abs() > CLASSIFY_ULPS * f64::EPSILON * p.max(rho)
        });
    ClassificationResult {
        verdict: match witness {
            None => Verdict::AbsolutelyContinuousIdentity,
            Some(_) => Verdict::Singular,
        },
        witness,
        similitudes_only: true,
    }
}

/// Whether the identity solves the equation: `Σ_n f_n(x) - x = Σ_{n≥1} f_n(0)`
/// on a uniform grid of `grid_size` points, to 8 ulp of the summands.
///
/// Takes bare maps so that families rejected by system validation can still
/// be tested.
pub fn identity_criterion(maps: &[ContractionMap], grid_size: usize) -> bool {
    let grid_size = grid_size.max(2);
    let anchors: f64 = maps.iter().skip(1).map(ContractionMap::low).sum();
    (0..grid_size).all(|i| {
        let x = i as f64 / (grid_size - 1) as f64;
        let images: f64 = maps.iter().map(|m| m.eval(x)).sum();
        let scale = images + x + anchors;
        (images - x - anchors).abs() <= CLASSIFY_ULPS * f64::EPSILON * scale.max(1.0)
    })
}

/// Slope and curvature bounds of a family: `λ = max f_n'` and the smallest
/// `c ≥ 0` with `f_n'' ≤ c·f_n'` on the grid. The uniqueness criterion for
/// absolutely continuous solutions needs `0 < f_n' ≤ λ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub lambda: f64,
    pub c: f64,
    pub pass: bool,
}

/// Evaluates the closed-form derivatives of each map on `grid_size` points
/// (at least 16).
pub fn regularity_check(maps: &[ContractionMap], grid_size: usize) -> RegularityReport {
    let grid_size = grid_size.max(16);
    let mut lambda = 0.0f64;
    let mut min_slope = f64::INFINITY;
    let mut c = 0.0f64;
    for m in maps {
        for i in 0..grid_size {
            let x = i as f64 / (grid_size - 1) as f64;
            let d1 = m.derivative(x);
            let d2 = m.second_derivative(x);
            lambda = lambda.max(d1);
            min_slope = min_slope.min(d1);
            if d1 > 0.0 {
                c = c.max(d2 / d1);
            }
        }
    }
    RegularityReport {
        lambda,
        c,
        pass: !maps.is_empty() && min_slope > 0.0 && lambda < 1.0,
    }
}
