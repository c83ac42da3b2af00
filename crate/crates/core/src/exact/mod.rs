//! Exact rationals, certified real enclosures, and base-`b` digit expansions.
//!
//! Every certified computation elsewhere in the crate runs on these types;
//! binary floating point only appears when formatting reports.

pub mod digits;
pub mod expr;
pub mod interval;
pub mod rational;
pub mod ser;

pub use digits::{DigitExpansion, Tail};
pub use expr::{enclose_real, floor_power, floor_power_enclosed, PrecisionBudget, RealEnclosure, RealExpr, SparseSeries};
pub use interval::Interval;
pub use rational::{canonicalize_rational, Rational};
