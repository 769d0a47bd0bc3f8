//! Linear combinations of the binary family φ_p all solve the halving
//! equation; same-sign ones are monotone, and distinct members are
//! linearly independent.

use ifs_cdf::analysis::{combo_monotone_check, combo_residual, independence_probe, ComboSpec};

fn main() -> ifs_cdf::Result<()> {
    let combos = [
        (
            "0.5 φ_0.3 + 0.5 φ_0.7",
            ComboSpec::new(&[(0.5, 0.3), (0.5, 0.7)], 0.0)?,
        ),
        (
            "φ_0.2 - φ_0.8 + 0.5",
            ComboSpec::new(&[(1.0, 0.2), (-1.0, 0.8)], 0.5)?,
        ),
        ("1 - 2 φ_0.4", ComboSpec::new(&[(-2.0, 0.4)], 1.0)?),
    ];
    for (name, c) in &combos {
        let mut max = 0.0f64;
        for i in 0..=500 {
            max = max.max(combo_residual(c, i as f64 / 500.0, 1e-12)?.value.abs());
        }
        let m = combo_monotone_check(c, 1000, 1e-12)?;
        println!(
            "{name}: max |residual| {max:.1e}, predicted {:?}, observed {:?}",
            m.predicted, m.empirical
        );
    }
    for params in [
        vec![0.3, 0.6],
        vec![0.2, 0.5, 0.8],
        vec![0.1, 0.3, 0.5, 0.7],
    ] {
        println!(
            "det for p = {params:?}: {:.3e}",
            independence_probe(&params)?
        );
    }
    Ok(())
}
