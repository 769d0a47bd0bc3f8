//! Writes `x,phi,error_bound` for a few weights of the halves system to
//! stdout, ready to plot.
//!
//! ```text
//! cargo run --example cdf_table > curves.csv
//! ```

use ifs_cdf::cli::sig17;
use ifs_cdf::measure::phi_p;

fn main() -> ifs_cdf::Result<()> {
    println!("p,x,phi,error_bound");
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        for i in 0..=256 {
            let x = i as f64 / 256.0;
            let v = phi_p(p, x, 1e-12)?;
            println!(
                "{p},{},{},{}",
                sig17(x),
                sig17(v.value),
                sig17(v.error_bound)
            );
        }
    }
    Ok(())
}
