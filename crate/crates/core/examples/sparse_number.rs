//! Sparse-digit numbers `ξ = 2 Σ 3^(-τ_n)` and their truncations.
//!
//! ```text
//! cargo run --example sparse_number
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::explicit::{build_sparse_number, ExponentRule};
use cantor_approx::{PrecisionBudget, Rational};

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let budget = PrecisionBudget::default();
    let rules = [
        ("tau = 3", ExponentRule::tau(Rational::integer(3))),
        ("tau = 11/5", ExponentRule::tau(Rational::frac(11, 5))),
        ("tau = 5/2, lambda = 2", ExponentRule::power(Rational::frac(5, 2), Rational::integer(2))),
        ("factorial", ExponentRule::Factorial),
    ];
    for (name, rule) in rules {
        let x = build_sparse_number(3, 2, rule, 5, budget)?;
        println!("{name}: exponents {:?}, xi ~ {}, in K: {:?}", x.exponents, x.enclosure().lo.to_decimal(15), x.membership_in(&k));
    }
    Ok(())
}
