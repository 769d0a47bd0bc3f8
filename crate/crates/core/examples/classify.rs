//! Absolutely continuous or singular: for similitudes the answer is decided
//! by comparing each weight with its ratio.

use ifs_cdf::analysis::{classify_similitude, identity_criterion, regularity_check};
use ifs_cdf::{ContractionMap, IfsSystem};

fn main() -> ifs_cdf::Result<()> {
    let cases = [
        (
            "rho = p = (0.3, 0.7)",
            IfsSystem::similitudes(&[0.3, 0.7], vec![0.3, 0.7])?,
        ),
        (
            "rho = (0.5, 0.5), p = (0.3, 0.7)",
            IfsSystem::similitudes(&[0.5, 0.5], vec![0.3, 0.7])?,
        ),
        (
            "warped",
            IfsSystem::warped(&[0.0, 0.5, 1.0], &[0.5, -0.2], vec![0.5, 0.5])?,
        ),
    ];
    for (name, s) in &cases {
        let r = classify_similitude(s);
        println!("{name}: {}", serde_json::to_string(&r).unwrap());
    }

    // does the identity solve the equation? this needs no validated system
    let maps = [
        ContractionMap::warped(0.0, 0.5, 1.0),
        ContractionMap::warped(0.5, 1.0, -0.5),
    ];
    println!(
        "identity solves the warped family: {}",
        identity_criterion(&maps, 101)
    );
    let report = regularity_check(&maps, 64);
    println!(
        "slope bound {:.3}, curvature bound {:.3}, pass {}",
        report.lambda, report.c, report.pass
    );
    Ok(())
}
