//! Layers of balls around the b-adic points of K, their exact measure and
//! the comparator `(Ψ(3^n) 3^n)^γ`.
//!
//! ```text
//! cargo run --example layer_measure
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::{build_layer, layer_comparator, layer_measure, ApproxFunction, SymReal, WindowConfig};
use cantor_approx::{PrecisionBudget, Rational};

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let cfg = WindowConfig::unit(3);
    let tau = Rational::integer(2);
    let psi = ApproxFunction::power(tau.clone());
    for n in 1..=8 {
        let layer = build_layer(&k, &psi, n, &cfg, true)?;
        let mu = layer_measure(&layer);
        let cmp = layer_comparator(&k, &SymReal::rational(tau.clone()), n, &cfg, PrecisionBudget::default())?;
        println!(
            "n = {n}: {:>3} balls, mu = {}, comparator in [{}, {}]",
            layer.len(),
            mu.value().expect("rational radius"),
            cmp.lo.to_decimal(9),
            cmp.hi.to_decimal(9)
        );
    }
    Ok(())
}
