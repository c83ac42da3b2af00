#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const SUBCOMMANDS: [&str; 14] = [
    "measure",
    "layer",
    "pairwise",
    "quasi-scan",
    "series",
    "tail",
    "bc-ratio",
    "dim-estimate",
    "xi-build",
    "xi-verify",
    "cf",
    "exponent",
    "cf-interval",
    "full-cover",
];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.conf"))
}

pub fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantor-approx"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Runs `cmd` on its fixture config with the given output format.
pub fn run_fixture(cmd: &str, output: &str) -> Output {
    let conf = fixture(cmd);
    cli(&[cmd, "--config", conf.to_str().expect("utf-8 path"), "--output", output])
}

pub fn validator() -> jsonschema::Validator {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json"))
        .expect("schema file");
    let schema: serde_json::Value = serde_json::from_str(&text).expect("schema is json");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

/// Schema violations of `doc`, as messages.
pub fn violations(v: &jsonschema::Validator, doc: &serde_json::Value) -> Vec<String> {
    v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect()
}
