//! Extends φ of an equal-width system to the whole real line by
//! `φ̂(x) = [x] + φ(x - [x])`.

use ifs_cdf::analysis::{extend_phi, extension_residual};
use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    let s = IfsSystem::equal_width(vec![0.3, 0.7])?;
    for i in -8..=8 {
        let x = i as f64 / 4.0;
        let v = extend_phi(&s, x, 1e-12)?;
        let r = extension_residual(&s, x, 1e-12)?;
        println!(
            "x = {x:>5}: {:>8.5}  residual {:.1e}",
            v.value(),
            r.value.abs()
        );
    }
    Ok(())
}
