use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// A closed interval intersected with `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    /// `[lo, hi] ∩ [0, 1]`; rejects `lo > hi` and intervals missing `[0, 1]`.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Self::clipped(lo, hi).ok_or_else(|| Error::invalid("interval does not meet [0, 1]"))
    }

    pub fn unit() -> Self {
        RatInterval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    /// The closed ball `[c - r, c + r] ∩ [0, 1]`, if non-empty.
    pub fn ball(center: &Rational, radius: &Rational) -> Option<Self> {
        Self::clipped(center - radius, center + radius)
    }

    fn clipped(lo: Rational, hi: Rational) -> Option<Self> {
        let lo = lo.max(Rational::zero());
        let hi = hi.min(Rational::one());
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Half the length.
    pub fn radius(&self) -> Rational {
        self.length() / Rational::integer(2)
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sorts closed intervals and merges those that overlap or touch.
pub fn merge_intervals(mut ivs: Vec<RatInterval>) -> Vec<RatInterval> {
    ivs.sort();
    let mut out: Vec<RatInterval> = Vec::with_capacity(ivs.len());
    for iv in ivs {
        match out.last_mut() {
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => out.push(iv),
        }
    }
    out
}

/// Intersection of two sorted, pairwise disjoint interval lists.
pub fn intersect_unions(a: &[RatInterval], b: &[RatInterval]) -> Vec<RatInterval> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        if let Some(iv) = a[i].intersect(&b[j]) {
            out.push(iv);
        }
        if a[i].hi < b[j].hi {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> RatInterval {
        RatInterval::new(Rational::frac(a.0, a.1), Rational::frac(b.0, b.1)).unwrap()
    }

    #[test]
    fn clipping() {
        let b = RatInterval::ball(&Rational::zero(), &Rational::frac(1, 9)).unwrap();
        assert_eq!(b, iv((0, 1), (1, 9)));
        assert!(RatInterval::ball(&Rational::integer(2), &Rational::frac(1, 2)).is_none());
        assert!(RatInterval::new(Rational::one(), Rational::zero()).is_err());
        assert!(RatInterval::new(Rational::integer(2), Rational::integer(3)).is_err());
    }

    #[test]
    fn merge_and_intersect() {
        let m = merge_intervals(vec![iv((1, 3), (1, 2)), iv((0, 1), (1, 3)), iv((3, 4), (1, 1))]);
        assert_eq!(m, vec![iv((0, 1), (1, 2)), iv((3, 4), (1, 1))]);
        let x = intersect_unions(&m, &[iv((1, 4), (7, 8))]);
        assert_eq!(x, vec![iv((1, 4), (1, 2)), iv((3, 4), (7, 8))]);
    }
}
