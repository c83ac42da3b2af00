//! Covering exponents of single layers against `γ/τ`.
//!
//! ```text
//! cargo run --example box_dimension
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::box_dimension_estimate;
use cantor_approx::{PrecisionBudget, Rational};

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    for tau in [2, 3] {
        let tau = Rational::integer(tau);
        for n in 2..=6 {
            let d = box_dimension_estimate(&k, &tau, n, true, PrecisionBudget::default())?;
            println!(
                "tau = {}, n = {n}: {} intervals at level {}, estimate {} (target {}){}",
                d.tau,
                d.count,
                d.level,
                d.estimate.lo.to_decimal(6),
                d.target.lo.to_decimal(6),
                if d.equals_target { ", exact" } else { "" }
            );
        }
    }
    Ok(())
}
