//! Checks the functional equation
//! `φ(x) = Σ φ(f_n(x)) - Σ_{n≥1} φ(f_n(0))` on a grid.
//!
//! The grid hits the breakpoints 0.2 and 0.7 of the second system. There the
//! images `f_n(x)` are rounded in a region where φ is steep, so the residual
//! exceeds the nominal `(2N+2)·tol`; it stays inside the certified bound,
//! which encloses that rounding.

use ifs_cdf::analysis::{equation_residual, nominal_residual_bound};
use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    let tol = 1e-10;
    let systems = [
        (
            "halves",
            IfsSystem::similitudes(&[0.5, 0.5], vec![0.3, 0.7])?,
        ),
        (
            "uneven",
            IfsSystem::similitudes(&[0.2, 0.5, 0.3], vec![0.5, 0.2, 0.3])?,
        ),
        (
            "warped",
            IfsSystem::warped(
                &[0.0, 0.3, 0.55, 1.0],
                &[0.5, 0.0, -0.3],
                vec![0.2, 0.5, 0.3],
            )?,
        ),
    ];
    for (name, s) in &systems {
        let mut max = 0.0f64;
        let mut certified = true;
        for i in 0..=1000 {
            let r = equation_residual(s, i as f64 / 1000.0, tol)?;
            max = max.max(r.value.abs());
            certified &= r.within_bound();
        }
        println!(
            "{name:>7}: max |residual| {max:.2e}, nominal bound {:.2e}, within certified bounds: {certified}",
            nominal_residual_bound(s, tol)
        );
    }
    Ok(())
}
