//! Directed-rounding interval arithmetic over exact rationals.
//!
//! Non-degenerate endpoints are rounded outward to `bits` significant binary
//! digits after every operation, which keeps numerators and denominators from
//! growing without bound. Degenerate (point) intervals stay exact under the
//! field operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::rational::Rational;
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k as usize
}

/// Approximate `floor(log2 |x|)` (exact up to one unit); `x != 0`.
fn log2_estimate(x: &Rational) -> i64 {
    x.numer().bits() as i64 - x.denom().bits() as i64
}

fn scale_pow2(x: &Rational, shift: i64) -> Rational {
    if shift >= 0 {
        x * Rational::integer(pow2(shift as u64))
    } else {
        x / Rational::integer(pow2((-shift) as u64))
    }
}

/// Round toward −∞ keeping about `bits` significant binary digits.
pub(crate) fn round_down(x: &Rational, bits: u32) -> Rational {
    if x.is_zero() || x.denom().is_one() && x.numer().bits() <= bits as u64 {
        return x.clone();
    }
    let shift = bits as i64 - log2_estimate(x);
    let scaled = scale_pow2(x, shift).floor();
    scale_pow2(&Rational::integer(scaled), -shift)
}

/// Round toward +∞ keeping about `bits` significant binary digits.
pub(crate) fn round_up(x: &Rational, bits: u32) -> Rational {
    -round_down(&-x, bits)
}

fn insufficient(what: &str) -> Error {
    Error::Precision(format!("{what}: enclosure too wide at current precision"))
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::integer(2)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Intersection with another enclosure of the same quantity.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval { lo, hi })
    }

    fn outward(lo: Rational, hi: Rational, bits: u32) -> Interval {
        if lo == hi {
            Interval { lo, hi }
        } else {
            Interval {
                lo: round_down(&lo, bits),
                hi: round_up(&hi, bits),
            }
        }
    }

    pub fn add(&self, other: &Interval, bits: u32) -> Interval {
        Self::outward(&self.lo + &other.lo, &self.hi + &other.hi, bits)
    }

    pub fn sub(&self, other: &Interval, bits: u32) -> Interval {
        Self::outward(&self.lo - &other.hi, &self.hi - &other.lo, bits)
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Interval, bits: u32) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        if self.is_point() && other.is_point() {
            Interval::point(lo)
        } else {
            Self::outward(lo, hi, bits)
        }
    }

    pub fn recip(&self, bits: u32) -> Result<Interval> {
        if self.lo.is_zero() && self.hi.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(insufficient("divisor straddles zero"));
        }
        let a = self.hi.recip()?;
        let b = self.lo.recip()?;
        Ok(Self::outward(a, b, bits))
    }

    pub fn div(&self, other: &Interval, bits: u32) -> Result<Interval> {
        let r = other.recip(bits)?;
        if self.is_point() && other.is_point() {
            return Ok(Interval::point(&self.lo / &other.lo));
        }
        Ok(self.mul(&r, bits))
    }

    pub fn powi(&self, n: i64, bits: u32) -> Result<Interval> {
        if n < 0 {
            return self.powi(-n, bits)?.recip(bits);
        }
        if n == 0 {
            return Ok(Interval::point(Rational::one()));
        }
        if self.is_point() {
            return Ok(Interval::point(self.lo.pow(n)));
        }
        let a = self.lo.pow(n);
        let b = self.hi.pow(n);
        let (lo, hi) = if !self.lo.is_negative() {
            (a, b)
        } else if !self.hi.is_positive() {
            if n % 2 == 0 {
                (b, a)
            } else {
                (a, b)
            }
        } else if n % 2 == 0 {
            (Rational::zero(), a.max(b))
        } else {
            (a, b)
        };
        Ok(Self::outward(lo, hi, bits))
    }

    pub fn sqrt(&self, bits: u32) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(Error::Domain("square root of a negative number".into()));
        }
        if self.lo.is_negative() {
            return Err(insufficient("square root argument straddles zero"));
        }
        let lo = sqrt_point(&self.lo, bits).lo;
        let hi = sqrt_point(&self.hi, bits).hi;
        Ok(Interval { lo, hi })
    }

    pub fn ln(&self, bits: u32) -> Result<Interval> {
        if !self.hi.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive number".into()));
        }
        if !self.lo.is_positive() {
            return Err(insufficient("logarithm argument straddles zero"));
        }
        let lo = ln_point(&self.lo, bits)?.lo;
        let hi = ln_point(&self.hi, bits)?.hi;
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self, bits: u32) -> Interval {
        let lo = exp_point(&self.lo, bits).lo;
        let hi = exp_point(&self.hi, bits).hi;
        Interval { lo, hi }
    }
}

/// Certified bounds on `sqrt(x)` for rational `x >= 0`; exact when `x` is a
/// perfect square.
pub(crate) fn sqrt_point(x: &Rational, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Rational::zero());
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Interval::point(Rational::new(rn, rd).expect("nonzero"));
    }
    // sqrt(x) = sqrt(x * 4^s) / 2^s with x * 4^s carrying ~2*bits integer bits.
    let s = bits as i64 - log2_estimate(x) / 2 + 2;
    let scaled = scale_pow2(x, 2 * s);
    let lo_int = scaled.floor().sqrt();
    let hi_int = scaled.ceil().sqrt() + BigInt::one();
    Interval {
        lo: scale_pow2(&Rational::integer(lo_int), -s),
        hi: scale_pow2(&Rational::integer(hi_int), -s),
    }
}

/// `floor(x * 2^w)` and `ceil(x * 2^w)`, for fixed-point series kernels.
fn fixed_down(x: &Rational, w: u32) -> BigInt {
    scale_pow2(x, w as i64).floor()
}

fn fixed_up(x: &Rational, w: u32) -> BigInt {
    scale_pow2(x, w as i64).ceil()
}

fn from_fixed(n: BigInt, w: u32) -> Rational {
    scale_pow2(&Rational::integer(n), -(w as i64))
}

/// `ceil(a * b / 2^w)` for non-negative `a`, `b`.
fn mul_fixed_up(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    (a * b).div_ceil(&pow2(w as u64))
}

/// Bounds on `atanh(z)` for `0 <= z <= 1/2` on the absolute grid `2^-w`.
fn atanh_bounds(z: &Rational, w: u32) -> Interval {
    if z.is_zero() {
        return Interval::point(Rational::zero());
    }
    let (z_lo, z_hi) = (fixed_down(z, w), fixed_up(z, w));
    let z2_lo = (&z_lo * &z_lo) >> w as usize;
    let z2_hi = mul_fixed_up(&z_hi, &z_hi, w);
    let (mut pow_lo, mut pow_hi) = (z_lo, z_hi);
    let (mut sum_lo, mut sum_hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1);
        sum_lo += &pow_lo / &denom;
        sum_hi += pow_hi.div_ceil(&denom);
        pow_lo = (&pow_lo * &z2_lo) >> w as usize;
        pow_hi = mul_fixed_up(&pow_hi, &z2_hi, w);
        k += 1;
        if pow_hi <= BigInt::one() {
            break;
        }
    }
    // Tail: sum_{j>=k} z^(2j+1)/(2j+1) <= z^(2k+1) / (1 - z^2) <= (4/3) z^(2k+1).
    let tail = (pow_hi * 4u32).div_ceil(&BigInt::from(3));
    Interval {
        lo: from_fixed(sum_lo, w),
        hi: from_fixed(sum_hi + tail, w),
    }
}

/// Certified bounds on `ln(x)` for rational `x > 0`.
pub(crate) fn ln_point(x: &Rational, bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain("logarithm of a non-positive number".into()));
    }
    if *x == Rational::one() {
        return Ok(Interval::point(Rational::zero()));
    }
    // x = 2^e * m with 1 <= m < 2
    let mut e = log2_estimate(x);
    let one = Rational::one();
    let two = Rational::integer(2);
    let mut m = scale_pow2(x, -e);
    while m < one {
        e -= 1;
        m = &m * &two;
    }
    while m >= two {
        e += 1;
        m = &m / &two;
    }
    let w = bits + 40 + (64 - (e.unsigned_abs()).leading_zeros());
    let z = (&m - &one) / (&m + &one);
    let ln_m = atanh_bounds(&z, w);
    let mut lo = &ln_m.lo * &two;
    let mut hi = &ln_m.hi * &two;
    if e != 0 {
        let ln2 = atanh_bounds(&Rational::frac(1, 3), w);
        let e_r = Rational::integer(e);
        let (a, b) = (&ln2.lo * &two * &e_r, &ln2.hi * &two * &e_r);
        let (a, b) = if e > 0 { (a, b) } else { (b, a) };
        lo += &a;
        hi += &b;
    }
    Ok(Interval {
        lo: round_down(&lo, bits + 8),
        hi: round_up(&hi, bits + 8),
    })
}

/// Bounds on `exp(t)` for `0 <= t <= 1/2` on the absolute grid `2^-w`.
fn exp_small(t: &Rational, w: u32) -> Interval {
    let (t_lo, t_hi) = (fixed_down(t, w), fixed_up(t, w));
    let (mut term_lo, mut term_hi) = (pow2(w as u64), pow2(w as u64));
    let (mut sum_lo, mut sum_hi) = (BigInt::zero(), BigInt::zero());
    let mut k: u64 = 0;
    loop {
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        k += 1;
        let kr = BigInt::from(k);
        term_lo = ((&term_lo * &t_lo) >> w as usize) / &kr;
        term_hi = mul_fixed_up(&term_hi, &t_hi, w).div_ceil(&kr);
        if term_hi <= BigInt::one() {
            break;
        }
    }
    // Remaining terms shrink by a factor <= 1/2 each step.
    let tail = term_hi * 2u32;
    Interval {
        lo: from_fixed(sum_lo, w),
        hi: from_fixed(sum_hi + tail, w),
    }
}

/// Certified bounds on `exp(x)` for rational `x`.
pub(crate) fn exp_point(x: &Rational, bits: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Rational::one());
    }
    let ax = x.abs();
    // Halve until |x| / 2^m <= 1/2.
    let m = (ax.ceil().bits() as i64 + 1).max(0) as u32;
    let t = scale_pow2(&ax, -(m as i64));
    let w = bits + 2 * m + 40;
    let small = exp_small(&t, w);
    let mut lo = small.lo;
    let mut hi = small.hi;
    let wbits = bits + m + 40;
    for _ in 0..m {
        lo = round_down(&(&lo * &lo), wbits);
        hi = round_up(&(&hi * &hi), wbits);
    }
    if x.is_negative() {
        let new_lo = round_down(&hi.recip().expect("positive"), bits + 8);
        let new_hi = round_up(&lo.recip().expect("positive"), bits + 8);
        Interval {
            lo: new_lo,
            hi: new_hi,
        }
    } else {
        Interval {
            lo: round_down(&lo, bits + 8),
            hi: round_up(&hi, bits + 8),
        }
    }
}
