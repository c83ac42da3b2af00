//! Radius-`3^-n` balls around all `p/3^n` cover K up to measure zero.
//!
//! ```text
//! cargo run --example full_cover
//! ```

use cantor_approx::cantor::{full_cover_check, MissingDigitSet, RatInterval};
use cantor_approx::Rational;

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let half = RatInterval::new(Rational::zero(), Rational::frac(1, 2))?;
    for n in 1..=8 {
        println!("n = {n}: unit {}, [0, 1/2] {}", full_cover_check(&k, n, &RatInterval::unit())?, full_cover_check(&k, n, &half)?);
    }
    Ok(())
}
