//! Contraction families on `[0,1]`, the partition condition, cylinder cells
//! and symbolic digit expansions.
//!
//! A system is an ordered family `f_0, …, f_N` of strictly increasing
//! contractions whose images tile the unit interval,
//!
//! ```text
//! 0 = f_0(0) < f_0(1) = f_1(0) < … < f_{N-1}(1) = f_N(0) < f_N(1) = 1,
//! ```
//!
//! together with a probability vector `p_0, …, p_N`. Each map stores its
//! image endpoints explicitly, so the adjacency equalities above hold
//! bit-for-bit and `f_n(0)`, `f_n(1)` evaluate exactly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{IfsError, Result};

/// Shape of a single map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    /// Affine map `f(x) = a + ρx`.
    Similitude,
    /// `f(x) = a + (b - a)·g_β(x)` with the Möbius warp
    /// `g_β(x) = (1 + β)x / (1 + βx)`, `β > -1`.
    Warped { beta: f64 },
}

/// One strictly increasing contraction of `[0,1]` onto `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionMap {
    low: f64,
    high: f64,
    kind: MapKind,
}

/// `g_β(x) = (1 + β)x / (1 + βx)`; fixes 0 and 1 exactly.
#[inline]
pub(crate) fn warp(beta: f64, x: f64) -> f64 {
    (1.0 + beta) * x / (1.0 + beta * x)
}

/// `g_β⁻¹(y) = y / ((1 + β) - βy)`.
#[inline]
pub(crate) fn unwarp(beta: f64, y: f64) -> f64 {
    y / ((1.0 + beta) - beta * y)
}

impl ContractionMap {
    /// `f(x) = offset + ratio·x`.
    pub fn similitude(ratio: f64, offset: f64) -> Self {
        Self {
            low: offset,
            high: offset + ratio,
            kind: MapKind::Similitude,
        }
    }

    /// Similitude given directly by its image `[low, high]`.
    pub fn similitude_on(low: f64, high: f64) -> Self {
        Self {
            low,
            high,
            kind: MapKind::Similitude,
        }
    }

    /// Warped map onto the anchor interval `[low, high]`.
    pub fn warped(low: f64, high: f64, beta: f64) -> Self {
        Self {
            low,
            high,
            kind: MapKind::Warped { beta },
        }
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_similitude(&self) -> bool {
        matches!(self.kind, MapKind::Similitude)
    }

    /// `f(0)`.
    pub fn low(&self) -> f64 {
        self.low
    }

    /// `f(1)`.
    pub fn high(&self) -> f64 {
        self.high
    }

    /// Length of the image interval; the ratio `ρ` for a similitude.
    pub fn width(&self) -> f64 {
        self.high - self.low
    }

    /// Warp parameter, zero for similitudes.
    pub fn beta(&self) -> f64 {
        match self.kind {
            MapKind::Similitude => 0.0,
            MapKind::Warped { beta } => beta,
        }
    }

    /// Best Lipschitz constant on `[0,1]`.
    ///
    /// For the warp, `g_β'` is monotone, so the maximum slope sits at an
    /// endpoint: `g_β'(0) = 1 + β` and `g_β'(1) = 1 / (1 + β)`.
    pub fn lipschitz(&self) -> f64 {
        match self.kind {
            MapKind::Similitude => self.width(),
            MapKind::Warped { beta } => self.width() * (1.0 + beta).max(1.0 / (1.0 + beta)),
        }
    }

    /// Evaluates `f(x)` for `x ∈ [0,1]`; arguments outside are clamped.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.low;
        }
        if x >= 1.0 {
            return self.high;
        }
        let t = match self.kind {
            MapKind::Similitude => x,
            MapKind::Warped { beta } => warp(beta, x),
        };
        (self.low + self.width() * t).clamp(self.low, self.high)
    }

    /// Bound on `|eval(x) - f(x)|` from rounding, for `x ∈ [0,1]`.
    pub fn eval_error(&self) -> f64 {
        let k = match self.kind {
            MapKind::Similitude => 4.0,
            MapKind::Warped { beta } => 8.0 + beta.abs() / (1.0 + beta).min(1.0),
        };
        2.0 * k * f64::EPSILON
    }

    /// Evaluates `f⁻¹(y)`; fails unless `y ∈ [f(0), f(1)]`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(self.low..=self.high).contains(&y) {
            return Err(IfsError::Domain(format!(
                "inverse argument {y} outside the image [{}, {}]",
                self.low, self.high
            )));
        }
        Ok(self.inverse_clamped(y))
    }

    /// `f⁻¹` extended by the constants 0 and 1 outside the image.
    pub(crate) fn inverse_clamped(&self, y: f64) -> f64 {
        if y <= self.low {
            return 0.0;
        }
        if y >= self.high {
            return 1.0;
        }
        let t = ((y - self.low) / self.width()).clamp(0.0, 1.0);
        match self.kind {
            MapKind::Similitude => t,
            MapKind::Warped { beta } => unwarp(beta, t).clamp(0.0, 1.0),
        }
    }

    /// Closed-form `f'(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        match self.kind {
            MapKind::Similitude => self.width(),
            MapKind::Warped { beta } => {
                let d = 1.0 + beta * x;
                self.width() * (1.0 + beta) / (d * d)
            }
        }
    }

    /// Closed-form `f''(x)`.
    pub fn second_derivative(&self, x: f64) -> f64 {
        match self.kind {
            MapKind::Similitude => 0.0,
            MapKind::Warped { beta } => {
                let d = 1.0 + beta * x;
                -2.0 * beta * self.width() * (1.0 + beta) / (d * d * d)
            }
        }
    }
}

/// A finite prefix `(x_1, …, x_k)` of a symbolic expansion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitString(Vec<usize>);

impl DigitString {
    pub fn new(digits: Vec<usize>) -> Self {
        Self(digits)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn digits(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: usize) {
        self.0.push(digit);
    }

    /// The first `k` digits.
    pub fn prefix(&self, k: usize) -> DigitString {
        Self(self.0[..k.min(self.0.len())].to_vec())
    }

    /// This string followed by one more digit.
    pub fn extended(&self, digit: usize) -> DigitString {
        let mut out = self.clone();
        out.push(digit);
        out
    }
}

impl From<Vec<usize>> for DigitString {
    fn from(digits: Vec<usize>) -> Self {
        Self(digits)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// A validated probabilistic iterated function system on `[0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSystem {
    maps: Vec<ContractionMap>,
    weights: Vec<f64>,
    // cumulative[n] = p_0 + … + p_{n-1}
    cumulative: Vec<f64>,
    lipschitz_max: f64,
    equal_width: bool,
}

/// Tolerance on `Σ p_n = 1`, in units of `f64::EPSILON`.
const WEIGHT_SUM_ULPS: f64 = 4.0;

/// Validates the partition chain, the contraction property and the weights.
pub fn validate_system(maps: Vec<ContractionMap>, weights: Vec<f64>) -> Result<IfsSystem> {
    if maps.len() < 2 {
        return Err(IfsError::Partition(format!(
            "at least two maps are required, got {}",
            maps.len()
        )));
    }
    if weights.len() != maps.len() {
        return Err(IfsError::Weight(format!(
            "{} weights given for {} maps",
            weights.len(),
            maps.len()
        )));
    }
    for (n, m) in maps.iter().enumerate() {
        if !(m.low.is_finite() && m.high.is_finite() && m.low < m.high) {
            return Err(IfsError::Contraction(format!(
                "f_{n} is not strictly increasing: f_{n}(0) = {}, f_{n}(1) = {}",
                m.low, m.high
            )));
        }
        if let MapKind::Warped { beta } = m.kind {
            if !(beta.is_finite() && beta > -1.0) {
                return Err(IfsError::Contraction(format!(
                    "f_{n} has warp parameter {beta}, must be finite and > -1"
                )));
            }
        }
    }
    let last = maps.len() - 1;
    if maps[0].low != 0.0 {
        return Err(IfsError::Partition(format!(
            "f_0(0) = {} but must equal 0",
            maps[0].low
        )));
    }
    for n in 0..last {
        if maps[n].high != maps[n + 1].low {
            return Err(IfsError::Partition(format!(
                "f_{n}(1) = {} differs from f_{}(0) = {}",
                maps[n].high,
                n + 1,
                maps[n + 1].low
            )));
        }
    }
    if maps[last].high != 1.0 {
        return Err(IfsError::Partition(format!(
            "f_{last}(1) = {} but must equal 1",
            maps[last].high
        )));
    }
    for (n, m) in maps.iter().enumerate() {
        let l = m.lipschitz();
        if l.is_nan() || l >= 1.0 {
            return Err(IfsError::Contraction(format!(
                "f_{n} has Lipschitz constant {l}, must be < 1"
            )));
        }
    }
    check_weights(&weights)?;

    let lipschitz_max = maps
        .iter()
        .map(ContractionMap::lipschitz)
        .fold(0.0, f64::max);
    let cumulative = cumulative_weights(&weights);
    let base = maps.len() as f64;
    let equal_width = maps.iter().enumerate().all(|(n, m)| {
        m.is_similitude() && m.low == n as f64 / base && m.high == (n + 1) as f64 / base
    });
    Ok(IfsSystem {
        maps,
        weights,
        cumulative,
        lipschitz_max,
        equal_width,
    })
}

/// Positivity and normalisation of a probability vector.
pub(crate) fn check_weights(weights: &[f64]) -> Result<()> {
    if weights.len() < 2 {
        return Err(IfsError::Weight(format!(
            "at least two weights are required, got {}",
            weights.len()
        )));
    }
    for (n, &p) in weights.iter().enumerate() {
        if !(p.is_finite() && p > 0.0) {
            return Err(IfsError::Weight(format!("p_{n} = {p} must be positive")));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_ULPS * f64::EPSILON {
        return Err(IfsError::Weight(format!("weights sum to {sum}, not 1")));
    }
    Ok(())
}

pub(crate) fn cumulative_weights(weights: &[f64]) -> Vec<f64> {
    let mut cumulative = Vec::with_capacity(weights.len() + 1);
    let mut acc = 0.0;
    cumulative.push(0.0);
    for &p in weights {
        acc += p;
        cumulative.push(acc);
    }
    cumulative
}

impl IfsSystem {
    /// Similitudes `f_n(x) = ρ_n x + Σ_{k<n} ρ_k`.
    ///
    /// Ratios within a few ulp of `1/(N+1)` are snapped to the equal-width
    /// partition `n/(N+1)`; otherwise breakpoints are cumulative sums with
    /// the last pinned to 1.
    pub fn similitudes(rho: &[f64], weights: Vec<f64>) -> Result<Self> {
        if rho.len() < 2 {
            return Err(IfsError::Partition(format!(
                "at least two maps are required, got {}",
                rho.len()
            )));
        }
        for (n, &r) in rho.iter().enumerate() {
            if !(r > 0.0 && r < 1.0) {
                return Err(IfsError::Contraction(format!(
                    "ratio rho_{n} = {r} must lie in (0,1)"
                )));
            }
        }
        if weights.len() != rho.len() {
            return Err(IfsError::Weight(format!(
                "{} weights given for {} maps",
                weights.len(),
                rho.len()
            )));
        }
        let base = rho.len() as f64;
        let snap = 4.0 * f64::EPSILON;
        if rho.iter().all(|r| (r - 1.0 / base).abs() <= snap) {
            return Self::equal_width(weights);
        }
        let sum: f64 = rho.iter().sum();
        if (sum - 1.0).abs() > 4.0 * base * f64::EPSILON {
            return Err(IfsError::Partition(format!(
                "ratios sum to {sum}, so f_N(1) != 1"
            )));
        }
        let mut maps = Vec::with_capacity(rho.len());
        let mut low = 0.0;
        for (n, &r) in rho.iter().enumerate() {
            let high = if n + 1 == rho.len() { 1.0 } else { low + r };
            maps.push(ContractionMap::similitude_on(low, high));
            low = high;
        }
        validate_system(maps, weights)
    }

    /// Equal-width similitudes `f_n(x) = (x + n)/(N+1)`.
    pub fn equal_width(weights: Vec<f64>) -> Result<Self> {
        let count = weights.len();
        let base = count as f64;
        let maps = (0..count)
            .map(|n| ContractionMap::similitude_on(n as f64 / base, (n + 1) as f64 / base))
            .collect();
        validate_system(maps, weights)
    }

    /// Warped maps on the anchor intervals `[t_n, t_{n+1}]` of `partition`.
    pub fn warped(partition: &[f64], betas: &[f64], weights: Vec<f64>) -> Result<Self> {
        if partition.len() != betas.len() + 1 {
            return Err(IfsError::Partition(format!(
                "{} breakpoints given for {} warp parameters; need one more breakpoint than maps",
                partition.len(),
                betas.len()
            )));
        }
        let maps = partition
            .windows(2)
            .zip(betas)
            .map(|(w, &beta)| ContractionMap::warped(w[0], w[1], beta))
            .collect();
        validate_system(maps, weights)
    }

    pub fn maps(&self) -> &[ContractionMap] {
        &self.maps
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ_{k<n} p_k` for `n = 0..=N+1`.
    pub fn cumulative_weights(&self) -> &[f64] {
        &self.cumulative
    }

    /// The largest digit `N`.
    pub fn max_digit(&self) -> usize {
        self.maps.len() - 1
    }

    /// `c = max_n L(f_n)`.
    pub fn lipschitz_max(&self) -> f64 {
        self.lipschitz_max
    }

    /// True when every map is `x ↦ (x + n)/(N+1)`.
    pub fn is_equal_width(&self) -> bool {
        self.equal_width
    }

    pub fn is_similitude(&self) -> bool {
        self.maps.iter().all(ContractionMap::is_similitude)
    }

    fn map(&self, n: usize) -> Result<&ContractionMap> {
        self.maps.get(n).ok_or_else(|| {
            IfsError::Domain(format!("map index {n} exceeds N = {}", self.max_digit()))
        })
    }

    /// `f_n(x)`.
    pub fn map_eval(&self, n: usize, x: f64) -> Result<f64> {
        check_unit(x)?;
        Ok(self.map(n)?.eval(x))
    }

    /// `f_n⁻¹(y)` for `y ∈ [f_n(0), f_n(1)]`.
    pub fn map_inverse(&self, n: usize, y: f64) -> Result<f64> {
        self.map(n)?.inverse(y)
    }

    /// The half-open cell rule: the `n` with `f_n(0) ≤ y < f_n(1)`, and `N`
    /// for `y = 1`.
    pub(crate) fn select_cell(&self, y: f64) -> usize {
        self.maps
            .partition_point(|m| m.high <= y)
            .min(self.max_digit())
    }

    fn check_digits(&self, digits: &DigitString) -> Result<()> {
        match digits.digits().iter().find(|&&d| d > self.max_digit()) {
            Some(d) => Err(IfsError::Domain(format!(
                "digit {d} exceeds N = {}",
                self.max_digit()
            ))),
            None => Ok(()),
        }
    }

    /// `(f_{x_1…x_k}(0), f_{x_1…x_k}(1))`; the empty string gives `(0, 1)`.
    pub fn compose_cell(&self, digits: &DigitString) -> Result<(f64, f64)> {
        self.check_digits(digits)?;
        Ok(digits
            .digits()
            .iter()
            .rev()
            .fold((0.0, 1.0), |(lo, hi), &d| {
                let m = &self.maps[d];
                (m.eval(lo), m.eval(hi))
            }))
    }

    /// Symbolic expansion of `x` to the given depth.
    ///
    /// Equal-width systems use the integer-part recurrence
    /// `x_{k+1} = [(N+1)·y_k]`; everything else uses greedy cell selection
    /// followed by `y ← f_n⁻¹(y)`. Both follow the half-open rule, and
    /// `x = 1` expands to `(N, N, …)`.
    pub fn digit_expand(&self, x: f64, depth: usize) -> Result<DigitString> {
        check_unit(x)?;
        let digits = if self.equal_width {
            RadixWalk::new(self.maps.len(), x)
                .take(depth)
                .map(|(d, _)| d)
                .collect()
        } else {
            GreedyWalk::new(self, x)
                .take(depth)
                .map(|(d, _)| d)
                .collect()
        };
        Ok(DigitString(digits))
    }

    /// Greedy expansion regardless of the equal-width fast path.
    pub fn digit_expand_greedy(&self, x: f64, depth: usize) -> Result<DigitString> {
        check_unit(x)?;
        Ok(DigitString(
            GreedyWalk::new(self, x)
                .take(depth)
                .map(|(d, _)| d)
                .collect(),
        ))
    }
}

pub(crate) fn check_unit(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(IfsError::Domain(format!("x = {x} is outside [0,1]")))
    }
}

/// Greedy digit stream: yields `(digit, remainder)` where the remainder is
/// the point pulled back through the selected map.
#[derive(Debug, Clone)]
pub(crate) struct GreedyWalk<'a> {
    system: &'a IfsSystem,
    y: f64,
}

impl<'a> GreedyWalk<'a> {
    pub(crate) fn new(system: &'a IfsSystem, x: f64) -> Self {
        Self { system, y: x }
    }
}

impl Iterator for GreedyWalk<'_> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.system.select_cell(self.y);
        self.y = self.system.maps[n].inverse_clamped(self.y);
        Some((n, self.y))
    }
}

/// Base-`b` digit stream `d = [b·y]`, `y ← b·y - d`, with `y = 1` mapping to
/// the digit `b - 1` forever.
#[derive(Debug, Clone)]
pub(crate) struct RadixWalk {
    base: usize,
    y: f64,
}

impl RadixWalk {
    pub(crate) fn new(base: usize, x: f64) -> Self {
        Self { base, y: x }
    }
}

impl Iterator for RadixWalk {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.base as f64 * self.y;
        let d = (t.floor() as usize).min(self.base - 1);
        self.y = (t - d as f64).clamp(0.0, 1.0);
        Some((d, self.y))
    }
}
