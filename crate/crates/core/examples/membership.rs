//! Deciding whether a point lies in a missing-digit set.
//!
//! ```text
//! cargo run --example membership
//! ```

use cantor_approx::cantor::{membership, MissingDigitSet, Point};
use cantor_approx::Rational;

fn main() {
    let k = MissingDigitSet::middle_third();
    for (p, q) in [(1, 4), (1, 3), (1, 2), (3, 4), (2, 27), (1, 10)] {
        let x = Rational::frac(p, q);
        println!("{x}: {:?}", membership(&Point::Exact(x.clone()), &k, 30));
    }
}
