//! The convergence/divergence series test deciding whether `W(ψ) ∩ K` has
//! zero or full `H^f` measure.
//!
//! ```text
//! cargo run --example series_dichotomy
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::{series_classify, ApproxFunction, DimensionFunction, SymReal};
use cantor_approx::PrecisionBudget;

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let f = DimensionFunction::power(SymReal::gamma());
    for spec in ["1/2", "1", "2", "3"] {
        let tau: SymReal = spec.parse()?;
        let psi = ApproxFunction::power(tau);
        let v = series_classify(&k, &psi, &f, 12, PrecisionBudget::default())?;
        let last = v.partial_sums.last().expect("twelve sums");
        println!(
            "psi = r^-{spec:<3} S_12 ~ {:>14}  {:?} -> {:?}  ({})",
            last.hi.to_decimal(4),
            v.verdict,
            v.prediction,
            v.rule
        );
    }
    Ok(())
}
