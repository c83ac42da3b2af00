//! Second-moment lower bounds `(Σ μ(E_s))^2 / Σ μ(E_s ∩ E_t)`.
//!
//! ```text
//! cargo run --example borel_cantelli
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::{borel_cantelli_ratio, ApproxFunction, ScanOptions, WindowConfig};
use cantor_approx::Rational;

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let psi = ApproxFunction::power(Rational::integer(2));
    for q in 1..=6 {
        let r = borel_cantelli_ratio(&k, &psi, &WindowConfig::unit(3), q, ScanOptions::default())?;
        println!(
            "Q = {q}: ratio = {}, mu(union) = {}, bound holds: {}",
            r.ratio.lo,
            r.union_measure.lo,
            r.bound_holds
        );
    }
    Ok(())
}
