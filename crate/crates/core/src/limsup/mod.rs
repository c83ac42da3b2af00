//! Finite stages of the limsup sets `W(ψ) ∩ K`: layers of balls around the
//! b-adic points of `K`, their exact measures and overlaps, the series test,
//! the natural-cover tail, the second-moment ratio and covering exponents.

mod dimension;
mod layer;
mod psi;
mod scan;
mod series;
mod sym;

pub use dimension::{box_dimension_estimate, count_covering_intervals, DimensionEstimate};
pub use layer::{
    build_layer, build_layer_with, layer_comparator, layer_measure, pairwise_measure, Layer, Radius, WindowConfig,
};
pub use psi::{truncate_psi, ApproxFunction, DimensionFunction, DimensionKind, LevelTerm, PsiKind};
pub use scan::{
    borel_cantelli_ratio, build_layers, quasi_independence_scan, with_workers, BorelCantelli, PairCase, PairReport,
    QuasiScan, ScanOptions,
};
pub use series::{natural_cover_tail, series_classify, NaturalCoverTail, Prediction, SeriesVerdict, Verdict};
pub use sym::SymReal;
