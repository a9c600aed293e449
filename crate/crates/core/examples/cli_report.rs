// Running a `jnr` job from code: parse a tuple file, dispatch a command and
// read the JSON report.

use jointrange::cli::{dispatch, Command, JobConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ex77.json");
    let mut cfg = JobConfig::new(Command::Polycheck, data);
    cfg.k = 2;
    cfg.truncation = 16;
    let report: serde_json::Value = serde_json::from_str(&dispatch(&cfg)?)?;
    let result = &report["result"];
    println!("polyhedral: {}", result["is_polyhedral"]);
    for v in result["vertices"].as_array().unwrap() {
        println!("  vertex {}", v["complex"]);
    }
    println!("input sha256 {}", report["provenance"]["input_sha256"]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
