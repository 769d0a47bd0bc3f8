#![allow(dead_code)]

use ifs_cdf::IfsSystem;
use proptest::prelude::*;
use rand::Rng;

/// Positive entries summing to 1, each at least `floor`, from raw draws in
/// `[0,1)`. The last entry is `1 - Σ others` so the sum is exact up to one
/// rounding. With `raw + 0.2` as the shape no entry exceeds
/// `floor + (1 - m·floor)·6/7`.
pub fn spread(raw: &[f64], floor: f64) -> Vec<f64> {
    let m = raw.len();
    let shape: Vec<f64> = raw.iter().map(|u| u + 0.2).collect();
    let total: f64 = shape.iter().sum();
    let free = 1.0 - floor * m as f64;
    let mut out: Vec<f64> = shape[..m - 1]
        .iter()
        .map(|a| floor + free * a / total)
        .collect();
    let rest = 1.0 - out.iter().sum::<f64>();
    out.push(rest);
    out
}

/// Raw draws for one system; every field is in `[0,1)`.
#[derive(Debug, Clone)]
pub struct RawSystem {
    pub warped: bool,
    pub ratios: Vec<f64>,
    pub betas: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Warp parameter with Lipschitz constant at most 0.95 on an interval of
/// width `w`, log-uniform in `1 + β`.
pub fn beta_for(w: f64, u: f64) -> f64 {
    let lo = (w / 0.95).max(0.3);
    let hi = (0.95 / w).min(3.0);
    lo * (hi / lo).powf(u) - 1.0
}

impl RawSystem {
    /// Map widths ≥ 0.1; weights ≥ 0.05 with max ≤ 0.9.
    pub fn build(&self) -> IfsSystem {
        let ratios = spread(&self.ratios, 0.1);
        let weights = spread(&self.weights, 0.05);
        if !self.warped {
            return IfsSystem::similitudes(&ratios, weights)
                .expect("fixture similitudes are valid");
        }
        let mut partition = vec![0.0];
        for r in &ratios[..ratios.len() - 1] {
            partition.push(partition.last().unwrap() + r);
        }
        partition.push(1.0);
        let betas: Vec<f64> = partition
            .windows(2)
            .zip(&self.betas)
            .map(|(w, &u)| beta_for(w[1] - w[0], u))
            .collect();
        IfsSystem::warped(&partition, &betas, weights).expect("fixture warped system is valid")
    }

    pub fn random<R: Rng>(rng: &mut R, max_n: usize) -> Self {
        let count = rng.random_range(2..=max_n + 1);
        let mut draw = |k: usize| (0..k).map(|_| rng.random::<f64>()).collect::<Vec<_>>();
        let ratios = draw(count);
        let betas = draw(count);
        let weights = draw(count);
        RawSystem {
            warped: rng.random_bool(0.5),
            ratios,
            betas,
            weights,
        }
    }
}

pub fn raw_system(max_n: usize) -> impl Strategy<Value = RawSystem> {
    (2..=max_n + 1).prop_flat_map(|count| {
        (
            any::<bool>(),
            prop::collection::vec(0.0..1.0f64, count),
            prop::collection::vec(0.0..1.0f64, count),
            prop::collection::vec(0.0..1.0f64, count),
        )
            .prop_map(|(warped, ratios, betas, weights)| RawSystem {
                warped,
                ratios,
                betas,
                weights,
            })
    })
}

pub fn system(max_n: usize) -> impl Strategy<Value = IfsSystem> {
    raw_system(max_n).prop_map(|raw| raw.build())
}

/// Weights for equal-width systems with `count` maps.
pub fn weights(count: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, count).prop_map(|raw| spread(&raw, 0.05))
}

/// `φ` for the two halves maps with weights `(p, 1-p)`, by direct recursion
/// on the binary digits of `x`.
pub fn binary_phi_oracle(p: f64, x: f64, depth: usize) -> f64 {
    if depth == 0 || x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    if x < 0.5 {
        p * binary_phi_oracle(p, 2.0 * x, depth - 1)
    } else {
        p + (1.0 - p) * binary_phi_oracle(p, 2.0 * x - 1.0, depth - 1)
    }
}

/// Leibniz expansion of a small determinant.
pub fn leibniz_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0.0;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, k: usize, m: &[Vec<f64>], total: &mut f64) {
    let n = perm.len();
    if k == n {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<f64>();
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, m, total);
        perm.swap(k, i);
    }
}
