//! Recomputes the calibration constants and compares them with the committed ones.
//!
//! ```text
//! cargo run --example calibrate
//! ```

use cantor_approx::calibration::{committed, compute};

fn main() -> cantor_approx::Result<()> {
    let run = compute(1)?;
    for row in &run.envelope {
        println!(
            "tau = {:>3}  n = {:>2}  ratio in [{}, {}]",
            row.tau,
            row.n,
            row.ratio.lo.to_decimal(6),
            row.ratio.hi.to_decimal(6)
        );
    }
    for (tau, c) in &run.max_rho {
        println!("tau = {tau}: max rho = {c} ({})", c.to_decimal(6));
    }
    let c = committed();
    println!(
        "run hull: C = {}, envelope [{}, {}]",
        run.hull.c_fix.to_decimal(6),
        run.hull.envelope_lo.to_decimal(6),
        run.hull.envelope_hi.to_decimal(6)
    );
    println!("committed: C_fix = {}, envelope [{}, {}]", c.c_fix, c.envelope_lo, c.envelope_hi);
    let ok = run.hull.c_fix <= c.c_fix && c.envelope_lo <= run.hull.envelope_lo && run.hull.envelope_hi <= c.envelope_hi;
    println!("committed constants cover this run: {ok}");
    Ok(())
}
