//! Loading a scenario document and running the CLI commands as a library.
//!
//! `cargo run --example scenario_file -- path/to/scenario.json`

use ris_highway::cli::{cmd_compare, CommonOptions};
use ris_highway::load_scenario;

const SHORT_ROAD: &str = r#"{
    "length_D": 5000,
    "wavelength": 0.0107,
    "ris": { "side_length": 2.0 },
    "base_stations": [{ "x": 0 }, { "x": 5000 }]
}"#;

fn main() -> ris_highway::Result<()> {
    let common = match std::env::args().nth(1) {
        Some(path) => CommonOptions {
            scenario: Some(path.into()),
            ..CommonOptions::default()
        },
        None => {
            let road = load_scenario(SHORT_ROAD)?;
            println!(
                "built-in short road, fingerprint {}",
                &road.fingerprint()[..16]
            );
            let path = std::env::temp_dir().join("ris_highway_short_road.json");
            std::fs::write(&path, SHORT_ROAD)?;
            CommonOptions {
                scenario: Some(path),
                ..CommonOptions::default()
            }
        }
    };
    let report = cmd_compare(&common, 2)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
