//! Builds a system from a JSON configuration, as the command-line tool does,
//! and runs a few of its subcommands in-process.

use std::io;

use ifs_cdf::cli::{run, SystemConfig};

fn main() {
    let text = r#"{"kind": "warped", "partition": ["0", "0.35", "1"], "beta": ["0.4", "-0.25"], "weights": ["0.45", "0.55"]}"#;
    let config = SystemConfig::from_json(text).expect("valid JSON");
    let system = config.build().expect("valid system");
    println!("lipschitz constant {:.4}", system.lipschitz_max());

    let path = std::env::temp_dir().join("ifs-cdf-example.json");
    std::fs::write(&path, text).unwrap();
    let path = path.to_str().unwrap();
    for args in [
        vec!["eval", "--config", path, "--x", "0.5"],
        vec!["check", "--config", path, "--grid", "101"],
        vec!["classify", "--config", path],
    ] {
        let code = run(
            std::iter::once("ifs-cdf").chain(args.iter().copied()),
            &mut io::stdout(),
            &mut io::stderr(),
        );
        println!("exit {code}");
    }
}
