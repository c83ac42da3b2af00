use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::cf::{CfSession, ContinuedFraction};
use crate::cantor::MissingDigitSet;
use crate::error::{Error, Result};
use crate::exact::{PrecisionBudget, Rational, RealExpr};

/// The reals in `(0, 1)` whose continued fraction starts with `quotients`:
/// closed at `p_N/q_N`, open at `(p_N + p_(N-1)) / (q_N + q_(N-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixInterval {
    #[serde(serialize_with = "crate::exact::ser::bigints")]
    pub quotients: Vec<BigInt>,
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

pub fn cf_prefix_interval(quotients: &[BigInt]) -> Result<PrefixInterval> {
    if quotients.is_empty() || quotients.iter().any(|a| !a.is_positive()) {
        return Err(Error::invalid("quotients must be a non-empty list of positive integers"));
    }
    let cf = ContinuedFraction::from_quotients(quotients.to_vec(), quotients.len(), false);
    let n = cf.len();
    let last = &cf.convergents[n - 1];
    let (pp, qp) = match n {
        1 => (last.p.clone(), &last.q + BigInt::one()),
        _ => {
            let c = &cf.convergents[n - 2];
            (&last.p + &c.p, &last.q + &c.q)
        }
    };
    let closed = last.value();
    let open = Rational::new(pp, qp)?;
    let (lo, hi, lo_closed) = if closed < open { (closed, open, true) } else { (open, closed, false) };
    Ok(PrefixInterval {
        quotients: quotients.to_vec(),
        lo,
        hi,
        lo_closed,
        hi_closed: !lo_closed,
    })
}

impl PrefixInterval {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    /// Whether the interval misses every level-`depth` basic interval of `set`.
    pub fn disjoint_from(&self, set: &MissingDigitSet, depth: u32) -> bool {
        let scale = Rational::integer(BigInt::from(set.base()).pow(depth));
        let (l, h) = (&self.lo * &scale, &self.hi * &scale);
        // basic cells [k, k + 1] (scaled) meeting the interval
        let first = if self.lo_closed { l.ceil() - BigInt::one() } else { l.floor() };
        let last = if self.hi_closed { h.floor() } else { h.ceil() - BigInt::one() };
        if first > last {
            return true;
        }
        set.count_basic_below(&(last + BigInt::one()), depth) == set.count_basic_below(&first, depth)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionVerdict {
    /// Shortest certified prefix of `x` whose interval misses the set.
    pub prefix: Option<PrefixInterval>,
    pub depth: u32,
    /// `Some(false)` once the exclusion is certified.
    pub in_set: Option<bool>,
    pub verdict: String,
}

/// Tries the prefixes of `x`'s continued fraction, shortest first, for one
/// whose interval misses every level-`depth` basic interval of the set.
pub fn exclusion_check(
    x: &RealExpr,
    set: &MissingDigitSet,
    depth: u32,
    max_prefix: usize,
    budget: PrecisionBudget,
) -> Result<ExclusionVerdict> {
    let cf = CfSession::from_expr(x.clone(), budget)?.expand(max_prefix)?;
    for k in 1..=cf.len() {
        let iv = cf_prefix_interval(&cf.quotients[..k])?;
        if iv.disjoint_from(set, depth) {
            return Ok(ExclusionVerdict {
                prefix: Some(iv),
                depth,
                in_set: Some(false),
                verdict: "not in K".into(),
            });
        }
    }
    Ok(ExclusionVerdict {
        prefix: None,
        depth,
        in_set: None,
        verdict: "undetermined".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicRow {
    pub n: u32,
    pub interval: PrefixInterval,
    pub disjoint: bool,
}

/// Prefix `[n, n]` of `[n̄]` for `n = 1..=n_max`, with finite-depth verdicts.
pub fn periodic_prefix_table(set: &MissingDigitSet, n_max: u32, depth: u32) -> Result<Vec<PeriodicRow>> {
    (1..=n_max)
        .map(|n| {
            let interval = cf_prefix_interval(&[BigInt::from(n), BigInt::from(n)])?;
            Ok(PeriodicRow {
                n,
                disjoint: interval.disjoint_from(set, depth),
                interval,
            })
        })
        .collect()
}
