//! Samples the invariant measure with the chaos game and compares the
//! empirical distribution with the analytic φ.

use ifs_cdf::mc::{chaos_game, ks_distance, DEFAULT_BURN_IN};
use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    let s = IfsSystem::similitudes(&[0.5, 0.5], vec![0.3, 0.7])?;
    for m in [1_000, 10_000, 100_000, 1_000_000] {
        let run = chaos_game(&s, 42, DEFAULT_BURN_IN, m)?;
        let ks = ks_distance(&run, &s, 1e-12)?;
        println!(
            "{} with {m:>7} samples: KS {:.5} (1.95/sqrt(M) = {:.5})",
            run.generator,
            ks.statistic(),
            1.95 / (m as f64).sqrt()
        );
    }
    let run = chaos_game(&s, 7, DEFAULT_BURN_IN, 100_000)?;
    println!(
        "mass of [0, 0.5): empirical {:.4}, exact 0.3",
        run.empirical_mass(0.0, 0.5)
    );
    Ok(())
}
