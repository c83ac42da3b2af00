//! The normalised self-similar measure `μ` on `K_{J(b)}`.
//!
//! `μ` gives every level-`n` basic interval mass `#J^-n`. It has no atoms, so
//! `μ([a, b]) = F(b) - F(a)` with the distribution function
//!
//! ```text
//! F(x) = (#{j in J : j < d} + [d in J] * F(b x - d)) / #J,   d = floor(b x)
//! ```
//!
//! For rational `x = r/q` the map `x -> b x - d` only permutes numerators
//! modulo `q`, so the recursion either terminates (b-adic `x`, or a digit
//! outside `J`) or enters a cycle, which is solved in closed form.

use std::collections::HashMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::interval::RatInterval;
use super::set::MissingDigitSet;
use crate::exact::Rational;

/// Default bound on the number of digit states explored per endpoint.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

/// A value of `μ`, exact or bracketed by rational bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorMeasureValue {
    pub lo: Rational,
    pub hi: Rational,
}

impl CantorMeasureValue {
    pub fn exact(v: Rational) -> Self {
        CantorMeasureValue { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Self {
        Self::exact(Rational::zero())
    }

    pub fn bounds(lo: Rational, hi: Rational) -> Self {
        CantorMeasureValue { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn is_zero(&self) -> bool {
        self.hi.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CantorMeasureValue {
            lo: &self.lo * k,
            hi: &self.hi * k,
        }
    }
}

impl Add for CantorMeasureValue {
    type Output = CantorMeasureValue;
    fn add(self, rhs: Self) -> Self {
        CantorMeasureValue {
            lo: self.lo + rhs.lo,
            hi: self.hi + rhs.hi,
        }
    }
}

impl std::iter::Sum for CantorMeasureValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CantorMeasureValue::zero(), |a, b| a + b)
    }
}

impl Serialize for CantorMeasureValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("exact", &self.is_exact())?;
        m.serialize_entry("hi", &self.hi)?;
        m.serialize_entry("lo", &self.lo)?;
        m.serialize_entry("value", &self.value())?;
        m.end()
    }
}

/// `F(x) = μ([0, x])` for `x ∈ [0, 1]`, with at most `budget` digit states.
pub fn distribution(set: &MissingDigitSet, x: &Rational, budget: usize) -> CantorMeasureValue {
    if !x.is_positive() {
        return CantorMeasureValue::zero();
    }
    if *x >= Rational::one() {
        return CantorMeasureValue::exact(Rational::one());
    }
    let m = Rational::integer(set.digit_count());
    let inv_m = Rational::one() / &m;
    let b = BigInt::from(set.base());
    let q = x.denom().clone();
    let mut r = x.numer().clone();

    // F_i = alpha_i + beta_i * F_{i+1}, recorded step by step.
    let mut steps: Vec<(Rational, bool)> = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();

    enum End {
        Value(Rational),
        Cycle(usize),
        Unknown,
    }

    let end = loop {
        if r.is_zero() {
            break End::Value(Rational::zero());
        }
        if let Some(&j) = seen.get(&r) {
            break End::Cycle(j);
        }
        if steps.len() >= budget {
            break End::Unknown;
        }
        seen.insert(r.clone(), steps.len());
        let (d, rem) = (&r * &b).div_rem(&q);
        let d = d.to_u32().expect("digit below base");
        let inside = set.has_digit(d);
        steps.push((Rational::integer(set.digits_below(d)) / &m, inside));
        if !inside {
            break End::Value(Rational::zero());
        }
        r = rem;
    };

    // Compose F_i = a + c * F_k over a run of steps.
    let compose = |range: std::ops::Range<usize>| -> (Rational, Rational) {
        let mut a = Rational::zero();
        let mut c = Rational::one();
        for (alpha, cont) in &steps[range] {
            a += &(&c * alpha);
            c = if *cont { &c * &inv_m } else { Rational::zero() };
        }
        (a, c)
    };

    match end {
        End::Value(v) => {
            let (a, c) = compose(0..steps.len());
            CantorMeasureValue::exact(a + c * v)
        }
        End::Cycle(j) => {
            let (ac, cc) = compose(j..steps.len());
            let fj = ac / (Rational::one() - cc);
            let (a, c) = compose(0..j);
            CantorMeasureValue::exact(a + c * fj)
        }
        End::Unknown => {
            let (a, c) = compose(0..steps.len());
            CantorMeasureValue::bounds(a.clone(), a + c)
        }
    }
}

/// `μ(iv)`, the normalised measure of a rational interval.
pub fn cantor_measure(set: &MissingDigitSet, iv: &RatInterval) -> CantorMeasureValue {
    cantor_measure_with_budget(set, iv, DEFAULT_STATE_BUDGET)
}

pub fn cantor_measure_with_budget(set: &MissingDigitSet, iv: &RatInterval, budget: usize) -> CantorMeasureValue {
    let hi = distribution(set, iv.hi(), budget);
    let lo = distribution(set, iv.lo(), budget);
    CantorMeasureValue {
        lo: (&hi.lo - &lo.hi).max(Rational::zero()),
        hi: &hi.hi - &lo.lo,
    }
}

/// Total measure of pairwise disjoint (or merely touching) intervals.
pub fn measure_of_union(set: &MissingDigitSet, ivs: &[RatInterval]) -> CantorMeasureValue {
    ivs.iter().map(|iv| cantor_measure(set, iv)).sum()
}
