//! Exact computation for Diophantine approximation on missing-digit Cantor sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, certified real enclosures, digit expansions.
//! - [`cantor`]: missing-digit sets `K_{J(b)}`, membership, b-adic centres and
//!   the exact self-similar measure.
//! - [`limsup`]: approximation layers around b-adic rationals, their exact
//!   measures and intersections, the convergence/divergence series test,
//!   second-moment ratios and covering-exponent estimates.
//! - [`explicit`]: sparse-digit numbers, certified continued fractions,
//!   convergent certification and exponent estimates.
//! - [`cli`]: the batch front end and its JSON/CSV reports.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod calibration;
pub mod cantor;
pub mod cli;
pub mod error;
pub mod exact;
pub mod explicit;
pub mod limsup;

pub use error::{Error, Result};
pub use exact::{PrecisionBudget, Rational, RealEnclosure, RealExpr};
