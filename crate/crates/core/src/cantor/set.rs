use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{enclose_real, PrecisionBudget, Rational, RealEnclosure, RealExpr};

/// Largest number of items any enumeration may produce unless told otherwise.
pub const DEFAULT_MAX_ITEMS: usize = 1 << 22;

/// The missing-digit set `K_{J(b)}`: reals in `[0, 1]` with a base-`b`
/// expansion using only the digits in `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingDigitSet {
    base: u32,
    digits: Vec<u32>,
    /// Enclosure of `log #J / log b`.
    exponent: RealEnclosure,
}

impl MissingDigitSet {
    pub fn new(base: u32, digits: impl IntoIterator<Item = u32>) -> Result<Self> {
        if base < 3 {
            return Err(Error::invalid(format!("base must be at least 3, got {base}")));
        }
        let mut digits: Vec<u32> = digits.into_iter().collect();
        digits.sort_unstable();
        digits.dedup();
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::invalid(format!("digit {d} is not below base {base}")));
        }
        if digits.len() < 2 || digits.len() >= base as usize {
            return Err(Error::invalid(format!(
                "digit set must have between 2 and {} elements, got {}",
                base - 1,
                digits.len()
            )));
        }
        let expr = RealExpr::log_ratio(
            Rational::integer(digits.len() as i64),
            Rational::integer(base as i64),
        );
        let width = Rational::new(1, BigInt::from(10).pow(30)).expect("nonzero");
        let exponent = enclose_real(&expr, &width, PrecisionBudget::default())?;
        Ok(MissingDigitSet {
            base,
            digits,
            exponent,
        })
    }

    /// The middle-third Cantor set: base 3, digits {0, 2}.
    pub fn middle_third() -> Self {
        Self::new(3, [0, 2]).expect("valid digit set")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// `#J`.
    pub fn digit_count(&self) -> u32 {
        self.digits.len() as u32
    }

    pub fn has_digit(&self, d: u32) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    /// Enclosure of the dimension `log #J / log b`.
    pub fn exponent(&self) -> &RealEnclosure {
        &self.exponent
    }

    /// Number of allowed digits strictly below `d`.
    pub(crate) fn digits_below(&self, d: u32) -> u32 {
        self.digits.partition_point(|&j| j < d) as u32
    }

    /// Whether two allowed digits are consecutive, so that level intervals
    /// can share endpoints.
    pub fn has_adjacent_digits(&self) -> bool {
        self.digits.windows(2).any(|w| w[1] == w[0] + 1)
    }

    /// `γ* = p/q` exactly when `#J^q = b^p`, which happens iff `#J` and `b`
    /// are powers of a common integer.
    pub fn rational_exponent(&self) -> Option<Rational> {
        let m = factorize(self.digit_count());
        let b = factorize(self.base);
        if m.len() != b.len() || m.iter().zip(&b).any(|(x, y)| x.0 != y.0) {
            return None;
        }
        let ratio = Rational::frac(m[0].1 as i64, b[0].1 as i64);
        m.iter()
            .zip(&b)
            .all(|(x, y)| Rational::frac(x.1 as i64, y.1 as i64) == ratio)
            .then_some(ratio)
    }

    /// Left endpoints `L` (as integers over `b^n`) of the `#J^n` level-`n`
    /// basic intervals `[L/b^n, (L+1)/b^n]`, in increasing order.
    pub fn level_left_endpoints(&self, n: u32, max_items: usize) -> Result<Vec<BigInt>> {
        let count = (self.digit_count() as f64).powi(n as i32);
        if count > max_items as f64 {
            return Err(Error::Resource(format!(
                "level {n} has {count:.0} basic intervals, budget is {max_items}"
            )));
        }
        let b = BigInt::from(self.base);
        let mut level = vec![BigInt::from(0)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(level.len() * self.digits.len());
            for l in &level {
                let shifted = l * &b;
                for &d in &self.digits {
                    next.push(&shifted + d);
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// Whether `[k/b^n, (k+1)/b^n]` is a level-`n` basic interval, i.e. all
    /// `n` digits of `k` are allowed.
    pub fn is_basic_index(&self, k: &BigInt, n: u32) -> bool {
        let b = BigInt::from(self.base);
        if k < &BigInt::from(0) || k >= &b.pow(n) {
            return false;
        }
        crate::exact::digits::int_digits(k, self.base, n as usize)
            .iter()
            .all(|&d| self.has_digit(d))
    }

    /// Number of `k` in `[0, x)` that index level-`len` basic intervals.
    pub fn count_basic_below(&self, x: &BigInt, len: u32) -> BigInt {
        let m = BigInt::from(self.digit_count());
        if x >= &BigInt::from(self.base).pow(len) {
            return m.pow(len);
        }
        if x <= &BigInt::from(0) {
            return BigInt::from(0);
        }
        let digits = crate::exact::digits::int_digits(x, self.base, len as usize);
        let mut count = BigInt::from(0);
        for (i, &d) in digits.iter().enumerate() {
            count += BigInt::from(self.digits_below(d)) * m.pow(len - 1 - i as u32);
            if !self.has_digit(d) {
                return count;
            }
        }
        count
    }
}

fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for MissingDigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.digits.iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.base, ds.join(","))
    }
}

/// Parses `base:d1,d2,...`, e.g. `3:0,2`.
impl FromStr for MissingDigitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("expected BASE:D1,D2,... got {s:?}"));
        let (b, ds) = s.split_once(':').ok_or_else(bad)?;
        let base: u32 = b.trim().parse().map_err(|_| bad())?;
        let digits = ds
            .split(',')
            .map(|d| d.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        MissingDigitSet::new(base, digits)
    }
}
