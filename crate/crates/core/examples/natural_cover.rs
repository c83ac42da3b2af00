//! Tail sums of the natural cover, the upper bound behind the convergence case.
//!
//! ```text
//! cargo run --example natural_cover
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::{natural_cover_tail, ApproxFunction, DimensionFunction, SymReal};
use cantor_approx::{PrecisionBudget, Rational};

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let psi = ApproxFunction::power(Rational::integer(2));
    let f = DimensionFunction::power(SymReal::gamma());
    let t = natural_cover_tail(&k, &psi, &f, 1, 10, PrecisionBudget::default())?;
    for (i, v) in t.sequence.iter().enumerate() {
        println!("T({}) = {}", i + 1, v.lo);
    }
    println!("verdict {:?}, non-increasing {}", t.verdict, t.non_increasing);
    Ok(())
}
