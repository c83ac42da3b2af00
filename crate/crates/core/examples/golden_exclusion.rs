//! Continued-fraction prefix intervals and a certificate that the golden
//! ratio conjugate is not in K.
//!
//! ```text
//! cargo run --example golden_exclusion
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::explicit::{exclusion_check, periodic_prefix_table};
use cantor_approx::{PrecisionBudget, RealExpr};

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let v = exclusion_check(&RealExpr::golden(), &k, 2, 10, PrecisionBudget::default())?;
    if let Some(p) = &v.prefix {
        println!("prefix {:?} -> [{}, {}), misses level {}", p.quotients, p.lo, p.hi, v.depth);
    }
    println!("verdict: {}", v.verdict);
    for row in periodic_prefix_table(&k, 8, 4)? {
        let iv = &row.interval;
        println!("[{n}, {n}]: [{}, {}) disjoint at depth 4: {}", iv.lo, iv.hi, row.disjoint, n = row.n);
    }
    Ok(())
}
