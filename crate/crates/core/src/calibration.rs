//! Committed calibration constants for the middle-third set and the runs
//! that produced them.
//!
//! The constants are rounded outward to three decimals from the values that
//! [`compute`] reports; `examples/calibrate.rs` reruns it.

use serde::Serialize;

use crate::cantor::{MissingDigitSet, DEFAULT_MAX_ITEMS};
use crate::error::Result;
use crate::exact::{Interval, PrecisionBudget, Rational};
use crate::limsup::{
    build_layer_with, layer_comparator, layer_measure, quasi_independence_scan, ApproxFunction, ScanOptions, SymReal,
    WindowConfig,
};

/// Upper bound on `ρ_{m,n}` for `ψ = r^-τ`, `τ ∈ {2, 3}`, `1 <= m < n <= 10`.
pub const C_FIX: (i64, i64) = (1, 1);

/// Envelope of `μ(A*_n) / (μ(B) (Ψ(3^n) 3^n)^γ)` for `τ ∈ {3/2, 2, 3}`, `t0 < n <= 12`.
pub const ENVELOPE: ((i64, i64), (i64, i64)) = ((707, 1000), (1001, 1000));

pub const ENVELOPE_TAUS: [(i64, i64); 3] = [(3, 2), (2, 1), (3, 1)];
pub const ENVELOPE_MAX_N: u32 = 12;
pub const SCAN_TAUS: [i64; 2] = [2, 3];
pub const SCAN_MAX_N: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Calibration {
    pub c_fix: Rational,
    pub envelope_lo: Rational,
    pub envelope_hi: Rational,
}

pub fn committed() -> Calibration {
    Calibration {
        c_fix: Rational::frac(C_FIX.0, C_FIX.1),
        envelope_lo: Rational::frac(ENVELOPE.0 .0, ENVELOPE.0 .1),
        envelope_hi: Rational::frac(ENVELOPE.1 .0, ENVELOPE.1 .1),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeRow {
    pub tau: Rational,
    pub n: u32,
    pub ratio: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalibrationRun {
    pub envelope: Vec<EnvelopeRow>,
    /// Largest certified upper bound of `ρ` per `τ`.
    pub max_rho: Vec<(Rational, Rational)>,
    /// Exact hull of the run, before rounding.
    pub hull: Calibration,
}

/// `μ(A*_n) / (μ(B) (Ψ(b^n) b^n)^γ*)` for `ψ = r^-τ` on `[0, 1]`.
pub fn comparability_ratio(set: &MissingDigitSet, tau: &Rational, n: u32, budget: PrecisionBudget) -> Result<Interval> {
    let cfg = WindowConfig::unit(set.base());
    let psi = ApproxFunction::power(tau.clone());
    let layer = build_layer_with(set, &psi, n, &cfg, true, DEFAULT_MAX_ITEMS, budget)?;
    let mu = layer_measure(&layer);
    let cmp = layer_comparator(set, &SymReal::rational(tau.clone()), n, &cfg, budget)?;
    Ok(Interval::new(&mu.lo / &cmp.hi, &mu.hi / &cmp.lo))
}

/// Reruns the calibration on the middle-third set.
pub fn compute(workers: usize) -> Result<CalibrationRun> {
    let k = MissingDigitSet::middle_third();
    let budget = PrecisionBudget::default();
    let cfg = WindowConfig::unit(3);
    let mut envelope = Vec::new();
    for (p, q) in ENVELOPE_TAUS {
        let tau = Rational::frac(p, q);
        for n in cfg.t0 + 1..=ENVELOPE_MAX_N {
            envelope.push(EnvelopeRow {
                ratio: comparability_ratio(&k, &tau, n, budget)?,
                tau: tau.clone(),
                n,
            });
        }
    }
    let opts = ScanOptions {
        workers,
        ..ScanOptions::default()
    };
    let mut max_rho = Vec::new();
    for t in SCAN_TAUS {
        let tau = Rational::integer(t);
        let scan = quasi_independence_scan(&k, &ApproxFunction::power(tau.clone()), &cfg, SCAN_MAX_N, opts)?;
        max_rho.push((tau, scan.empirical_c.unwrap_or_else(Rational::zero)));
    }
    let hull = Calibration {
        c_fix: max_rho.iter().map(|(_, c)| c.clone()).max().expect("two scans"),
        envelope_lo: envelope.iter().map(|r| r.ratio.lo.clone()).min().expect("rows"),
        envelope_hi: envelope.iter().map(|r| r.ratio.hi.clone()).max().expect("rows"),
    };
    Ok(CalibrationRun { envelope, max_rho, hull })
}
