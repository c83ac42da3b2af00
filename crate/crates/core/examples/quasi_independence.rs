//! Overlap ratios `ρ_{m,n}` between layers, pair by pair.
//!
//! ```text
//! cargo run --example quasi_independence
//! ```

use cantor_approx::cantor::MissingDigitSet;
use cantor_approx::limsup::{quasi_independence_scan, ApproxFunction, ScanOptions, WindowConfig};
use cantor_approx::Rational;

fn main() -> cantor_approx::Result<()> {
    let k = MissingDigitSet::middle_third();
    let psi = ApproxFunction::power(Rational::integer(2));
    let scan = quasi_independence_scan(&k, &psi, &WindowConfig::unit(3), 6, ScanOptions::default())?;
    for p in &scan.pairs {
        let rho = p.rho.as_ref().map_or("-".to_string(), |r| r.hi.to_string());
        println!("({}, {}) case {:>2}: mu_mn = {}, rho = {rho}", p.m, p.n, p.case.label(), p.mu_mn.hi);
    }
    println!("max rho = {:?}", scan.empirical_c);
    Ok(())
}
