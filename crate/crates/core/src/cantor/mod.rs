//! Missing-digit Cantor sets, their natural measure and the rational points
//! `p / b^n` inside them.

mod centers;
mod interval;
mod measure;
mod membership;
mod set;

pub use centers::{center_count, enumerate_centers, full_cover_check};
pub use interval::{intersect_unions, merge_intervals, RatInterval};
pub use measure::{
    cantor_measure, cantor_measure_with_budget, distribution, measure_of_union, CantorMeasureValue,
    DEFAULT_STATE_BUDGET,
};
pub use membership::{in_level, membership, Membership, Point};
pub use set::{MissingDigitSet, DEFAULT_MAX_ITEMS};
