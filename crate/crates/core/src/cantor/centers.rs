use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::interval::{merge_intervals, RatInterval};
use super::measure::{cantor_measure, measure_of_union};
use super::membership::{membership, Membership, Point};
use super::set::MissingDigitSet;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// All `p` with `p / b^n ∈ K`, sorted and without duplicates; with
/// `coprime`, only those with `gcd(p, b^n) = 1`.
///
/// Such a point is an endpoint of some level-`n` basic interval, so the
/// candidates are the `2 #J^n` endpoints; each is then checked exactly (an
/// endpoint need not lie in `K` when `0` or `b - 1` is missing from `J`).
pub fn enumerate_centers(set: &MissingDigitSet, n: u32, coprime: bool, max_items: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::invalid("level must be at least 1"));
    }
    let lefts = set.level_left_endpoints(n, max_items / 2)?;
    let scale = BigInt::from(set.base()).pow(n);
    let b = BigInt::from(set.base());
    let mut cands: Vec<BigInt> = Vec::with_capacity(2 * lefts.len());
    for l in lefts {
        cands.push(&l + 1u32);
        cands.push(l);
    }
    cands.sort();
    cands.dedup();
    cands.retain(|p| {
        if coprime && !p.gcd(&b).is_one() {
            return false;
        }
        let x = Rational::new(p.clone(), scale.clone()).expect("nonzero");
        membership(&Point::Exact(x), set, n + 1) == Membership::In
    });
    Ok(cands)
}

/// `#{0 <= p <= b^n : p / b^n ∈ K}` in closed form.
///
/// With `A` the integers below `b^n` whose `n` digits lie in `J` (`#J^n` of
/// them), a point is in `K` iff `p ∈ A` and `0 ∈ J`, or `p - 1 ∈ A` and
/// `b - 1 ∈ J`. The overlap counts `a ∈ A` with `a + 1 ∈ A`: the carry runs
/// through `k` trailing digits `b - 1` into a digit `d` with `d, d + 1 ∈ J`.
pub fn center_count(set: &MissingDigitSet, n: u32) -> BigInt {
    let m = BigInt::from(set.digit_count());
    let per_side = m.pow(n);
    let has_zero = set.has_digit(0);
    let has_top = set.has_digit(set.base() - 1);
    let mut total = BigInt::zero();
    if has_zero {
        total += &per_side;
    }
    if has_top {
        total += &per_side;
    }
    if has_zero && has_top && n > 0 {
        let adjacent = set
            .digits()
            .iter()
            .filter(|&&d| d + 1 < set.base() && set.has_digit(d + 1))
            .count();
        let geometric: BigInt = (0..n).map(|k| m.pow(k)).sum();
        total -= BigInt::from(adjacent) * geometric;
    }
    total
}

/// Checks that the radius-`b^-n` balls around all `p / b^n`, `0 <= p <= b^n`,
/// carry the full measure of `window`.
pub fn full_cover_check(set: &MissingDigitSet, n: u32, window: &RatInterval) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("level must be at least 1"));
    }
    let scale = BigInt::from(set.base()).pow(n);
    let radius = Rational::new(1, scale.clone()).expect("nonzero");
    let scale_r = Rational::integer(scale.clone());
    // Only balls that can meet the window.
    let first = ((window.lo() - &radius) * &scale_r).floor().max(BigInt::zero());
    let last = ((window.hi() + &radius) * &scale_r).ceil().min(scale.clone());
    let mut balls = Vec::new();
    let mut p = first;
    while p <= last {
        let c = Rational::new(p.clone(), scale.clone()).expect("nonzero");
        if let Some(b) = RatInterval::ball(&c, &radius).and_then(|b| b.intersect(window)) {
            balls.push(b);
        }
        p += 1u32;
    }
    let covered = measure_of_union(set, &merge_intervals(balls));
    Ok(covered == cantor_measure(set, window))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: Vec<BigInt>) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn documented_enumerations() {
        let k = MissingDigitSet::middle_third();
        assert_eq!(ints(enumerate_centers(&k, 1, false, 1000).unwrap()), vec![0, 1, 2, 3]);
        assert_eq!(ints(enumerate_centers(&k, 2, true, 1000).unwrap()), vec![1, 2, 7, 8]);
        let s = MissingDigitSet::new(4, [0, 3]).unwrap();
        assert_eq!(ints(enumerate_centers(&s, 1, false, 1000).unwrap()), vec![0, 1, 3, 4]);
    }

    #[test]
    fn brute_force_agreement() {
        // Every p in [0, b^n] checked directly against the closed-form count.
        for set in [
            MissingDigitSet::middle_third(),
            MissingDigitSet::new(3, [0, 1]).unwrap(),
            MissingDigitSet::new(3, [1, 2]).unwrap(),
            MissingDigitSet::new(5, [0, 1, 4]).unwrap(),
            MissingDigitSet::new(4, [0, 2, 3]).unwrap(),
        ] {
            for n in 1..=4u32 {
                let scale = BigInt::from(set.base()).pow(n);
                let mut brute = Vec::new();
                let mut p = BigInt::zero();
                while p <= scale {
                    let x = Rational::new(p.clone(), scale.clone()).unwrap();
                    if membership(&Point::Exact(x), &set, 20) == Membership::In {
                        brute.push(p.clone());
                    }
                    p += 1u32;
                }
                let got = enumerate_centers(&set, n, false, 1 << 16).unwrap();
                assert_eq!(got, brute, "set {set} level {n}");
                assert_eq!(center_count(&set, n), BigInt::from(brute.len()), "set {set} level {n}");
            }
        }
    }

    #[test]
    fn full_cover_examples() {
        let k = MissingDigitSet::middle_third();
        assert!(full_cover_check(&k, 1, &RatInterval::unit()).unwrap());
        let w = RatInterval::new(Rational::frac(2, 9), Rational::frac(4, 9)).unwrap();
        assert!(full_cover_check(&k, 3, &w).unwrap());
    }
}
