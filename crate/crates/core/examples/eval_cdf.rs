//! Evaluates the distribution function of the invariant measure with its
//! truncation bound, for a similitude system and a warped one.

use ifs_cdf::measure::phi_eval;
use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    // two halves, weights 0.3 and 0.7
    let halves = IfsSystem::similitudes(&[0.5, 0.5], vec![0.3, 0.7])?;
    println!("halves, p = (0.3, 0.7)");
    for x in [0.25, 0.5, 0.625, 0.8, 1.0 / 3.0] {
        let v = phi_eval(&halves, x, 1e-12)?;
        println!(
            "  phi({x:.6}) = {:.15}  bound {:.1e}  depth {}",
            v.value, v.error_bound, v.depth
        );
    }

    let warped = IfsSystem::warped(&[0.0, 0.4, 1.0], &[0.3, -0.2], vec![0.6, 0.4])?;
    println!("warped on [0, 0.4] and [0.4, 1], beta = (0.3, -0.2), p = (0.6, 0.4)");
    for x in [0.1, 0.4, 0.5, 0.9] {
        let v = phi_eval(&warped, x, 1e-12)?;
        println!("  phi({x}) in [{:.15}, {:.15}]", v.value, v.upper());
    }
    Ok(())
}
