//! Chaos-game sampling of the invariant measure and Kolmogorov–Smirnov
//! comparison against the analytic distribution function.
//!
//! The orbit `x_{k+1} = f_{n_k}(x_k)`, with `n_k` drawn independently from
//! the weights, has `μ` as its stationary law. Runs use `ChaCha8Rng` seeded
//! through `SeedableRng::seed_from_u64`, so a `(seed, stream)` pair fixes the
//! sample list bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{IfsError, Result};
use crate::ifs::IfsSystem;
use crate::measure::phi_eval;

/// Name of the generator recorded with every run.
pub const GENERATOR: &str = "ChaCha8Rng";

/// Default number of discarded orbit points. From `x_0 = 0` the orbit is
/// within `c^k` of the attractor after `k` steps.
pub const DEFAULT_BURN_IN: usize = 128;

const MIN_BURN_IN: usize = 64;

/// A sorted chaos-game sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRun {
    pub generator: String,
    pub seed: u64,
    pub stream: u64,
    pub burn_in: usize,
    pub count: usize,
    pub samples: Vec<f64>,
}

/// Runs the chaos game on stream 0.
pub fn chaos_game(
    system: &IfsSystem,
    seed: u64,
    burn_in: usize,
    count: usize,
) -> Result<SampleRun> {
    chaos_game_stream(system, seed, 0, burn_in, count)
}

/// Runs the chaos game on an independent ChaCha stream, for parallel runs
/// sharing one seed.
pub fn chaos_game_stream(
    system: &IfsSystem,
    seed: u64,
    stream: u64,
    burn_in: usize,
    count: usize,
) -> Result<SampleRun> {
    if burn_in < MIN_BURN_IN {
        return Err(IfsError::Parameter(format!(
            "burn-in {burn_in} is below the minimum of {MIN_BURN_IN}"
        )));
    }
    if count == 0 {
        return Err(IfsError::Parameter("sample count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let cumulative = &system.cumulative_weights()[1..];
    let last = system.max_digit();
    let maps = system.maps();
    let mut x = 0.0;
    let step = |rng: &mut ChaCha8Rng, x: f64| {
        let u: f64 = rng.random();
        let n = cumulative.partition_point(|&c| c <= u).min(last);
        maps[n].eval(x)
    };
    for _ in 0..burn_in {
        x = step(&mut rng, x);
    }
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        x = step(&mut rng, x);
        samples.push(x);
    }
    samples.sort_by(f64::total_cmp);
    Ok(SampleRun {
        generator: GENERATOR.to_string(),
        seed,
        stream,
        burn_in,
        count,
        samples,
    })
}

impl SampleRun {
    /// Fraction of samples in `[a, b)`.
    pub fn empirical_mass(&self, a: f64, b: f64) -> f64 {
        let lo = self.samples.partition_point(|&s| s < a);
        let hi = self.samples.partition_point(|&s| s < b);
        (hi - lo) as f64 / self.count as f64
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.count as f64
    }
}

/// Kolmogorov–Smirnov distance with the truncation slack of the analytic
/// side kept separate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsDistance {
    /// `sup |F_M - φ|` using the lower ends of the `φ` brackets.
    pub distance: f64,
    /// Largest `φ` truncation bound over the sample points.
    pub phi_bound: f64,
}

impl KsDistance {
    /// `distance + phi_bound`, an upper bound on the true KS distance.
    pub fn statistic(&self) -> f64 {
        self.distance + self.phi_bound
    }
}

/// Sup over the sample points of `|F_M - φ|`, taking both one-sided limits of
/// the empirical CDF at each point.
pub fn ks_distance(run: &SampleRun, system: &IfsSystem, tol: f64) -> Result<KsDistance> {
    let m = run.samples.len() as f64;
    let (distance, phi_bound) = run
        .samples
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let phi = phi_eval(system, s, tol)?;
            let below = (i as f64 / m - phi.value).abs();
            let above = ((i + 1) as f64 / m - phi.value).abs();
            Ok((below.max(above), phi.error_bound))
        })
        .try_reduce(|| (0.0, 0.0), |a, b| Ok((a.0.max(b.0), a.1.max(b.1))))?;
    Ok(KsDistance {
        distance,
        phi_bound,
    })
}

/// Two-sample distance `sup |F_a - F_b|` between sorted samples.
pub fn two_sample_distance(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut sup = 0.0f64;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}
