//! Explicit very well approximable elements of missing-digit sets: the
//! sparse-digit numbers `ξ = c Σ b^(-τ_n)`, certified continued fractions,
//! Legendre's criterion, exponent estimates and CF-prefix exclusion.

mod cf;
mod checks;
mod prefix;
mod sparse;

pub use cf::{
    certified_prefix, continued_fraction_expand, rational_expansion, CfInput, CfSession, ContinuedFraction,
    Convergent, Refine,
};
pub use checks::{
    exact_order_threshold_met, exact_order_threshold_met_real, irrationality_exponent_estimate,
    legendre_is_convergent, next_convergent_check, truncation_report, truncation_summary, ExponentEstimate,
    LegendreVerdict, NextConvergentCheck, TruncationCheck, TruncationSummary, Witness,
};
pub use prefix::{cf_prefix_interval, exclusion_check, periodic_prefix_table, ExclusionVerdict, PeriodicRow, PrefixInterval};
pub use sparse::{build_sparse_number, ExponentRule, SparseDigitNumber, Truncation, MAX_EXPONENT};
