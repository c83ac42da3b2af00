use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::set::MissingDigitSet;
use crate::exact::{DigitExpansion, Interval, Rational};

/// Verdict of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    In,
    Out,
    /// Not resolved within the given depth.
    Undetermined(u32),
}

/// A point given exactly or through an enclosure.
#[derive(Clone, Debug)]
pub enum Point {
    Exact(Rational),
    Enclosed(Interval),
}

/// Lower bound on the digit states tried for a non-b-adic rational.
const MIN_RATIONAL_STATES: usize = 1 << 16;

/// Membership of `x` in `K_{J(b)}`.
///
/// Rationals are decided exactly: b-adic ones through both of their
/// expansions, others through the eventually periodic digit stream (falling
/// back to `Undetermined` only if the period exceeds the state budget). An
/// enclosure is `In` when it sits inside a single level-`depth` basic
/// interval, `Out` when it misses every one of them.
pub fn membership(x: &Point, set: &MissingDigitSet, depth: u32) -> Membership {
    match x {
        Point::Exact(r) => rational_membership(r, set, depth),
        Point::Enclosed(iv) => enclosure_membership(iv, set, depth),
    }
}

fn rational_membership(x: &Rational, set: &MissingDigitSet, depth: u32) -> Membership {
    if x.is_negative() || *x > Rational::one() {
        return Membership::Out;
    }
    if let Ok(Some(expansions)) = DigitExpansion::b_adic_expansions(x, set.base()) {
        return if expansions.iter().any(|e| e.uses_only(set.digits())) {
            Membership::In
        } else {
            Membership::Out
        };
    }
    // Unique expansion; digits follow r -> b r mod q.
    let q = x.denom().clone();
    let b = BigInt::from(set.base());
    let mut r = x.numer().clone();
    let mut seen = HashSet::new();
    let budget = (depth as usize).max(MIN_RATIONAL_STATES);
    while seen.len() < budget {
        if !seen.insert(r.clone()) {
            return Membership::In;
        }
        let (d, rem) = (&r * &b).div_rem(&q);
        if !set.has_digit(d.to_u32().expect("digit below base")) {
            return Membership::Out;
        }
        r = rem;
    }
    Membership::Undetermined(depth)
}

fn enclosure_membership(iv: &Interval, set: &MissingDigitSet, depth: u32) -> Membership {
    let one = Rational::one();
    if iv.hi.is_negative() || iv.lo > one {
        return Membership::Out;
    }
    if iv.is_point() {
        return rational_membership(&iv.lo, set, depth);
    }
    let b = Rational::integer(set.base());
    let mut lo = iv.lo.clone().max(Rational::zero());
    let mut hi = iv.hi.clone().min(one);
    let partial = iv.lo.is_negative() || iv.hi > Rational::one();
    let top = set.base() - 1;
    for _ in 0..depth {
        let (lb, hb) = (&lo * &b, &hi * &b);
        // Cells [d/b, (d+1)/b] meeting [lo, hi] in positive length ...
        let first = lb.floor().to_u32().unwrap_or(0).min(top);
        let last = (hb.ceil().to_u32().unwrap_or(1).max(1) - 1).max(first);
        // ... and those touching it only at an endpoint.
        let mut touched: Vec<u32> = (first..=last).collect();
        if lb.is_integer() && first > 0 {
            touched.push(first - 1);
        }
        if hb.is_integer() && last < top {
            touched.push(last + 1);
        }
        if !touched.iter().any(|&d| set.has_digit(d)) {
            return Membership::Out;
        }
        if first != last || !set.has_digit(first) || partial {
            return Membership::Undetermined(depth);
        }
        let d = Rational::integer(first);
        lo = &lb - &d;
        hi = &hb - &d;
    }
    if partial {
        Membership::Undetermined(depth)
    } else {
        Membership::In
    }
}

/// Whether `x` lies in the union of level-`m` basic intervals.
pub fn in_level(x: &Rational, set: &MissingDigitSet, m: u32) -> bool {
    if x.is_negative() || *x > Rational::one() {
        return false;
    }
    let scaled = x * Rational::integer(BigInt::from(set.base()).pow(m));
    let k = scaled.floor();
    let mut candidates = vec![k.clone()];
    if scaled.is_integer() {
        candidates.push(k - 1);
    }
    candidates.iter().any(|c| set.is_basic_index(c, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> MissingDigitSet {
        MissingDigitSet::middle_third()
    }

    fn exact(n: i64, d: i64) -> Point {
        Point::Exact(Rational::frac(n, d))
    }

    #[test]
    fn documented_rationals() {
        assert_eq!(membership(&exact(1, 3), &k(), 10), Membership::In);
        assert_eq!(membership(&exact(1, 2), &k(), 10), Membership::Out);
        assert_eq!(membership(&exact(1, 4), &k(), 10), Membership::In);
        assert_eq!(membership(&exact(0, 1), &k(), 1), Membership::In);
        assert_eq!(membership(&exact(1, 1), &k(), 1), Membership::In);
        assert_eq!(membership(&exact(5, 9), &k(), 1), Membership::Out);
        assert_eq!(membership(&exact(3, 2), &k(), 1), Membership::Out);
    }

    #[test]
    fn digit_set_without_zero() {
        // J = {1, 2}: 1/3 = 0.1000... = 0.0222..., both need the digit 0.
        let s = MissingDigitSet::new(3, [1, 2]).unwrap();
        assert_eq!(membership(&exact(1, 3), &s, 5), Membership::Out);
        assert_eq!(membership(&exact(1, 2), &s, 5), Membership::In);
        assert_eq!(membership(&exact(1, 1), &s, 5), Membership::In);
        assert_eq!(membership(&exact(0, 1), &s, 5), Membership::Out);
    }

    #[test]
    fn enclosures() {
        let iv = Interval::new(Rational::frac(1, 10), Rational::frac(1, 9));
        // [1/10, 1/9] lies in the level-4 interval [8/81, 9/81] but not in one level-5 cell.
        assert_eq!(membership(&Point::Enclosed(iv.clone()), &k(), 4), Membership::In);
        assert_eq!(membership(&Point::Enclosed(iv), &k(), 5), Membership::Undetermined(5));
        let gap = Interval::new(Rational::frac(2, 5), Rational::frac(3, 5));
        assert_eq!(membership(&Point::Enclosed(gap), &k(), 5), Membership::Out);
    }

    #[test]
    fn level_membership() {
        assert!(in_level(&Rational::frac(1, 3), &k(), 4));
        assert!(!in_level(&Rational::frac(1, 2), &k(), 1));
        assert!(in_level(&Rational::frac(1, 2), &k(), 0));
    }
}
