//! The natural measure of intervals for a few missing-digit sets.
//!
//! ```text
//! cargo run --example cantor_measure
//! ```

use cantor_approx::cantor::{cantor_measure, MissingDigitSet, RatInterval};
use cantor_approx::Rational;

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    println!("K = {k}, dimension ~ {:.6}", k.exponent().midpoint_f64());
    let cases = [(0, 1, 1, 3), (0, 1, 1, 4), (1, 4, 3, 4), (1, 10, 9, 10)];
    for (a, b, c, d) in cases {
        let iv = RatInterval::new(Rational::frac(a, b), Rational::frac(c, d))?;
        let mu = cantor_measure(&k, &iv);
        match mu.value() {
            Some(v) => println!("mu([{a}/{b}, {c}/{d}]) = {v}"),
            None => println!("mu([{a}/{b}, {c}/{d}]) in [{}, {}]", mu.lo, mu.hi),
        }
    }

    let five: MissingDigitSet = "5:0,2,4".parse()?;
    let iv = RatInterval::new(Rational::frac(1, 5), Rational::frac(3, 5))?;
    println!("{five}: mu([1/5, 3/5]) = {:?}", cantor_measure(&five, &iv).value());
    Ok(())
}
