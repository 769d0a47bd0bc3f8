//! Digit expansions and the nested cells they select.

use ifs_cdf::IfsSystem;

fn main() -> ifs_cdf::Result<()> {
    let s = IfsSystem::similitudes(&[0.3, 0.7], vec![0.4, 0.6])?;
    for x in [0.3, 0.5, 0.95, 1.0] {
        let digits = s.digit_expand(x, 6)?;
        println!("x = {x}: digits {digits}");
        for k in 1..=digits.depth() {
            let (low, high) = s.compose_cell(&digits.prefix(k))?;
            println!("  depth {k}: [{low:.10}, {high:.10}]");
        }
    }

    // equal-width systems use the integer-part recurrence
    let ternary = IfsSystem::equal_width(vec![0.2, 0.3, 0.5])?;
    let x = 0.7;
    println!(
        "ternary x = {x}: recurrence {}  greedy {}",
        ternary.digit_expand(x, 12)?,
        ternary.digit_expand_greedy(x, 12)?
    );
    Ok(())
}
