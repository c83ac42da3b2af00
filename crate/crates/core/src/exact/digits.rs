use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::rational::Rational;
use crate::error::{Error, Result};

/// What follows the explicit digits of an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Zeros,
    /// Repeating `base - 1`.
    RepeatingMax,
    Unknown,
}

/// A base-`b` expansion `0.d1 d2 d3 ...` of a number in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    pub base: u32,
    pub digits: Vec<u32>,
    pub tail: Tail,
}

/// Writes `x = p / b^n` with the smallest such `n`; `None` if no power of
/// `b` clears the denominator.
pub fn b_adic_parts(x: &Rational, base: u32) -> Option<(BigInt, u32)> {
    let d = x.denom();
    let b = BigInt::from(base);
    let mut power = BigInt::from(1);
    // d | b^n for some n iff it does for n = bits(d).
    for n in 0..=d.bits() as u32 {
        if (&power % d).is_zero() {
            return Some((x.numer() * &power / d, n));
        }
        power *= &b;
    }
    None
}

impl DigitExpansion {
    /// The greedy expansion of `x ∈ [0, 1)` truncated to `len` digits; the
    /// tail is `Zeros` when the expansion terminates within `len` digits.
    /// `x = 1` yields all `base - 1` digits with a repeating tail.
    pub fn greedy(x: &Rational, base: u32, len: usize) -> Result<Self> {
        check_unit(x)?;
        if *x == Rational::one() {
            return Ok(DigitExpansion {
                base,
                digits: vec![base - 1; len],
                tail: Tail::RepeatingMax,
            });
        }
        let q = x.denom().clone();
        let mut r = x.numer().clone();
        let b = BigInt::from(base);
        let mut digits = Vec::with_capacity(len);
        for _ in 0..len {
            if r.is_zero() {
                break;
            }
            let (d, rem) = (&r * &b).div_rem(&q);
            digits.push(d.to_u32().expect("digit below base"));
            r = rem;
        }
        let tail = if r.is_zero() { Tail::Zeros } else { Tail::Unknown };
        Ok(DigitExpansion { base, digits, tail })
    }

    /// Both expansions of a b-adic rational in `[0, 1]`: the terminating one
    /// and the one ending in repeating `base - 1`. `0` and `1` have a single
    /// expansion inside the unit interval.
    pub fn b_adic_expansions(x: &Rational, base: u32) -> Result<Option<Vec<DigitExpansion>>> {
        check_unit(x)?;
        if x.is_zero() {
            return Ok(Some(vec![DigitExpansion {
                base,
                digits: vec![],
                tail: Tail::Zeros,
            }]));
        }
        if *x == Rational::one() {
            return Ok(Some(vec![DigitExpansion {
                base,
                digits: vec![],
                tail: Tail::RepeatingMax,
            }]));
        }
        let Some((p, n)) = b_adic_parts(x, base) else {
            return Ok(None);
        };
        let terminating = int_digits(&p, base, n as usize);
        let lowered = int_digits(&(p - 1), base, n as usize);
        Ok(Some(vec![
            DigitExpansion {
                base,
                digits: terminating,
                tail: Tail::Zeros,
            },
            DigitExpansion {
                base,
                digits: lowered,
                tail: Tail::RepeatingMax,
            },
        ]))
    }

    /// Exact value when the tail is known.
    pub fn value(&self) -> Option<Rational> {
        let b = Rational::integer(self.base);
        let mut v = Rational::zero();
        let mut scale = Rational::one();
        for &d in &self.digits {
            scale = &scale / &b;
            v += &(&scale * Rational::integer(d));
        }
        match self.tail {
            Tail::Zeros => Some(v),
            // sum_{k>=1} (b-1) b^-k * scale = scale
            Tail::RepeatingMax => Some(v + scale),
            Tail::Unknown => None,
        }
    }

    /// Whether every explicit digit and the tail digit lie in `allowed`.
    pub fn uses_only(&self, allowed: &[u32]) -> bool {
        let tail_ok = match self.tail {
            Tail::Zeros => allowed.contains(&0),
            Tail::RepeatingMax => allowed.contains(&(self.base - 1)),
            Tail::Unknown => true,
        };
        tail_ok && self.digits.iter().all(|d| allowed.contains(d))
    }
}

fn check_unit(x: &Rational) -> Result<()> {
    if x.is_negative() || *x > Rational::one() {
        return Err(Error::invalid(format!("{x} is outside [0, 1]")));
    }
    Ok(())
}

/// The `n` base-`b` digits of `0 <= p < b^n`, most significant first.
pub fn int_digits(p: &BigInt, base: u32, n: usize) -> Vec<u32> {
    let b = BigInt::from(base);
    let mut out = vec![0u32; n];
    let mut v = p.clone();
    for slot in out.iter_mut().rev() {
        let (q, r) = v.div_rem(&b);
        *slot = r.to_u32().expect("digit below base");
        v = q;
    }
    out
}
