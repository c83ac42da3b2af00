//! Producing a CLI report in-process instead of through the binary.
//!
//! ```text
//! cargo run --example cli_report
//! ```

use std::collections::BTreeMap;

use cantor_approx::cli::{render, Command, RunConfig};

fn main() -> cantor_approx::Result<()> {
    let values: BTreeMap<String, String> = [("psi", "pow:2"), ("nmax", "4"), ("output", "csv")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let cfg = RunConfig::resolve(&values)?;
    print!("{}", render(Command::QuasiScan, &cfg)?);
    Ok(())
}
