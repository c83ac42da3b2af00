//! Certified continued fractions of rationals, constants and sparse-digit numbers.
//!
//! ```text
//! cargo run --example continued_fraction
//! ```

use cantor_approx::explicit::{build_sparse_number, continued_fraction_expand, CfInput, ExponentRule};
use cantor_approx::{PrecisionBudget, Rational, RealExpr};

fn show(name: &str, q: &[num_bigint::BigInt]) {
    let parts: Vec<String> = q.iter().map(|a| a.to_string()).collect();
    println!("{name} = [0; {}]", parts.join(", "));
}

fn main() -> cantor_approx::Result<()> {
    let budget = PrecisionBudget::default();
    let cf = continued_fraction_expand(&CfInput::Exact(Rational::frac(2, 27)), 10, budget)?;
    show("2/27", &cf.quotients);
    let cf = continued_fraction_expand(&CfInput::Expr(RealExpr::golden()), 12, budget)?;
    show("golden", &cf.quotients);
    let cf = continued_fraction_expand(&CfInput::Expr(RealExpr::gamma()), 12, budget)?;
    show("gamma", &cf.quotients);

    let xi = build_sparse_number(3, 2, ExponentRule::tau(Rational::integer(3)), 4, budget)?;
    let cf = continued_fraction_expand(&CfInput::Sparse(xi.clone(), 0), 10_000, budget)?;
    println!("xi(3), 4 terms: {} certified quotients", cf.certified_depth);
    for (s, tr) in xi.truncations.iter().enumerate() {
        println!("  xi_{} is convergent #{:?}", s + 1, cf.position(&tr.p, &tr.q));
    }
    Ok(())
}
