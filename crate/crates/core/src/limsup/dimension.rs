use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::layer::{build_layer_with, Layer, WindowConfig};
use super::psi::ApproxFunction;
use crate::cantor::{MissingDigitSet, DEFAULT_MAX_ITEMS};
use crate::error::{Error, Result};
use crate::exact::{Interval, PrecisionBudget, Rational, RealExpr};

/// Covering exponent of a single layer `A_n` with `ψ(r) = r^-τ`.
///
/// This is a finite-stage quantity: its drift towards `γ*/τ` is an observed
/// trend, not a statement about the limsup set.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionEstimate {
    pub n: u32,
    pub tau: Rational,
    /// `L = ceil(τ n)`.
    pub level: u32,
    /// Level-`L` basic intervals meeting the layer in positive length.
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub count: BigInt,
    /// `ln(count) / (L ln b)`.
    pub estimate: Interval,
    /// `γ* / τ`.
    pub target: Interval,
    /// `count^p = #J^(L q)` for `τ = p/q`, i.e. the estimate equals `γ*/τ`.
    pub equals_target: bool,
}

/// Level-`level` basic intervals meeting `layer` (outer radius) in positive length.
pub fn count_covering_intervals(layer: &Layer, level: u32, outer: bool) -> BigInt {
    let set = &layer.set;
    let scale = Rational::integer(BigInt::from(set.base()).pow(level));
    // Index ranges [first, last] of cells overlapping each component.
    let mut ranges: Vec<(BigInt, BigInt)> = layer
        .union(outer)
        .iter()
        .filter(|iv| iv.length().is_positive())
        .map(|iv| {
            let first = (iv.lo() * &scale).floor();
            let last = (iv.hi() * &scale).ceil() - BigInt::one();
            (first, last)
        })
        .collect();
    ranges.sort();
    let mut merged: Vec<(BigInt, BigInt)> = Vec::new();
    for (a, b) in ranges {
        match merged.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => merged.push((a, b)),
        }
    }
    merged
        .iter()
        .map(|(a, b)| set.count_basic_below(&(b + 1), level) - set.count_basic_below(a, level))
        .sum()
}

/// `box_dimension_estimate` for the layer with `ψ(r) = r^-τ` on `[0, 1]`.
pub fn box_dimension_estimate(
    set: &MissingDigitSet,
    tau: &Rational,
    n: u32,
    coprime: bool,
    budget: PrecisionBudget,
) -> Result<DimensionEstimate> {
    if tau < &Rational::one() {
        return Err(Error::invalid(format!("tau must be at least 1, got {tau}")));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let level_r = (tau * Rational::integer(n)).ceil();
    let level = u32::try_from(&level_r).map_err(|_| Error::Resource(format!("level {level_r} too large")))?;
    if level > 4096 {
        return Err(Error::Resource(format!("level {level} exceeds the level budget 4096")));
    }
    let psi = ApproxFunction::power(tau.clone());
    let layer = build_layer_with(set, &psi, n, &WindowConfig::unit(set.base()), coprime, DEFAULT_MAX_ITEMS, budget)?;
    let count = count_covering_intervals(&layer, level, true);
    if !layer.radius.exact && count_covering_intervals(&layer, level, false) != count {
        return Err(Error::Precision("inner and outer radii give different counts".into()));
    }
    if count.is_zero() {
        return Err(Error::UndefinedRatio("layer meets no basic interval".into()));
    }
    let b = Rational::integer(set.base());
    let estimate_expr =
        RealExpr::rational(Rational::integer(count.clone())).ln() / (RealExpr::integer(level as i64) * RealExpr::rational(b).ln());
    let target_expr = RealExpr::log_ratio(Rational::integer(set.digit_count()), Rational::integer(set.base()))
        / RealExpr::rational(tau.clone());
    let bits = budget.bits_at(1);
    let estimate = if count.is_one() { Interval::point(Rational::zero()) } else { estimate_expr.eval(bits)? };
    let target = target_expr.eval(bits)?;
    let (p, q) = (tau.numer(), tau.denom());
    let lhs = count.pow(u32::try_from(p).map_err(|_| Error::Resource("tau numerator too large".into()))?);
    let rhs = BigInt::from(set.digit_count())
        .pow(level * u32::try_from(q).map_err(|_| Error::Resource("tau denominator too large".into()))?);
    Ok(DimensionEstimate {
        n,
        tau: tau.clone(),
        level,
        count,
        estimate,
        target,
        equals_target: lhs == rhs,
    })
}
