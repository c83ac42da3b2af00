//! Finite-window irrationality-exponent estimates.
//!
//! ```text
//! cargo run --example exponent_estimate
//! ```

use cantor_approx::explicit::{
    build_sparse_number, continued_fraction_expand, exact_order_threshold_met, irrationality_exponent_estimate,
    CfInput, ExponentRule,
};
use cantor_approx::{PrecisionBudget, Rational, RealExpr};

fn main() -> cantor_approx::Result<()> {
    let budget = PrecisionBudget::default();
    for (tau, s) in [(Rational::integer(3), 5), (Rational::frac(11, 5), 6), (Rational::frac(5, 2), 6)] {
        let x = build_sparse_number(3, 2, ExponentRule::tau(tau.clone()), s, budget)?;
        let cf = continued_fraction_expand(&CfInput::Sparse(x, 0), 10_000, budget)?;
        let e = irrationality_exponent_estimate(&cf)?;
        println!(
            "xi(tau = {tau}, S = {s}): estimate {} over {} convergents, exact order known: {}",
            e.estimate.lo.to_decimal(4),
            e.window,
            exact_order_threshold_met(&tau)
        );
    }
    let cf = continued_fraction_expand(&CfInput::Expr(RealExpr::golden()), 30, budget)?;
    let e = irrationality_exponent_estimate(&cf)?;
    println!("golden, 30 quotients: estimate {}", e.estimate.lo.to_decimal(4));
    Ok(())
}
