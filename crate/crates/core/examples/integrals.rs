//! The integral of φ over [0,1]: closed form for equal-width systems and a
//! midpoint rule for everything else.

use ifs_cdf::analysis::{integral_equalwidth, integral_quadrature};
use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    for w in [
        vec![0.3, 0.7],
        vec![0.2, 0.3, 0.5],
        vec![0.1, 0.2, 0.3, 0.4],
    ] {
        let s = IfsSystem::equal_width(w.clone())?;
        let closed = integral_equalwidth(&s)?;
        let quad = integral_quadrature(&s, 100_000, 1e-12)?;
        println!(
            "p = {w:?}: closed {closed:.10}, quadrature {:.10} ± {:.1e}",
            quad.value, quad.error_bound
        );
    }
    let warped = IfsSystem::warped(&[0.0, 0.4, 1.0], &[0.3, -0.2], vec![0.6, 0.4])?;
    let quad = integral_quadrature(&warped, 100_000, 1e-12)?;
    println!(
        "warped: quadrature {:.10} ± {:.1e}",
        quad.value, quad.error_bound
    );
    Ok(())
}
