//! Exact rationals and certified enclosures of real constants.
//!
//! ```text
//! cargo run --example exact_arithmetic
//! ```

use cantor_approx::exact::expr::certified_sign;
use cantor_approx::exact::{canonicalize_rational, enclose_real};
use cantor_approx::{PrecisionBudget, Rational, RealExpr};

fn main() -> cantor_approx::Result<()> {
    let r = canonicalize_rational(-2, -27)?;
    println!("-2/-27 = {r}");
    let sum = Rational::frac(1, 3) + Rational::frac(1, 6);
    println!("1/3 + 1/6 = {sum} = {}", sum.to_decimal(6));

    let budget = PrecisionBudget::default();
    let width = Rational::new(1, 1u64 << 40)?;
    for (name, e) in [("gamma", RealExpr::gamma()), ("golden", RealExpr::golden()), ("threshold", RealExpr::exact_order_threshold())] {
        let enc = enclose_real(&e, &width, budget)?;
        let iv = enc.interval();
        println!("{name:>9} in [{}, {}]", iv.lo.to_decimal(12), iv.hi.to_decimal(12));
    }

    let diff = RealExpr::gamma() * RealExpr::integer(2) - RealExpr::integer(1);
    println!("sign(2 gamma - 1) = {}", certified_sign(&diff, budget)?);
    Ok(())
}
