//! Growth, gap, Legendre and next-convergent checks on `ξ(τ = 3)`.
//!
//! ```text
//! cargo run --example xi_verify
//! ```

use cantor_approx::explicit::{
    build_sparse_number, continued_fraction_expand, legendre_is_convergent, next_convergent_check,
    truncation_summary, CfInput, ExponentRule,
};
use cantor_approx::{PrecisionBudget, Rational};

fn main() -> cantor_approx::Result<()> {
    let budget = PrecisionBudget::default();
    let x = build_sparse_number(3, 2, ExponentRule::tau(Rational::integer(3)), 5, budget)?;
    let summary = truncation_summary(&x)?;
    for c in &summary.checks {
        println!(
            "s = {}: growth {:?}, gap {}, order {:?}, q_(s+1)|xi - xi_s| ~ {}",
            c.s,
            c.growth_bounds,
            c.gap_bounds,
            c.order_bounds,
            c.scaled_gap.lo.to_decimal(6)
        );
    }
    println!("s_min = {:?}", summary.s_min);

    let cf = continued_fraction_expand(&CfInput::Sparse(x.clone(), 0), 10_000, budget)?;
    for (s, tr) in x.truncations.iter().enumerate() {
        let leg = legendre_is_convergent(&tr.p, &tr.q, &x.enclosure())?;
        println!("xi_{} Legendre {:?}, convergent index {:?}", s + 1, leg, cf.position(&tr.p, &tr.q));
    }
    for s in 1..x.terms() {
        if let Some(c) = next_convergent_check(&x, &cf, s)? {
            println!("after xi_{s}: log q*/log q_s ~ {}, bounds hold {}", c.log_ratio.lo.to_decimal(4), c.holds);
        }
    }
    Ok(())
}
