use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::interval::Interval;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Working-precision schedule for certified evaluation.
///
/// Step `k` works with `initial_bits << k` significant bits; exceeding
/// `max_steps` is reported as an error rather than answered approximately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionBudget {
    pub initial_bits: u32,
    pub max_steps: u32,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            initial_bits: 32,
            max_steps: 16,
        }
    }
}

impl PrecisionBudget {
    pub fn with_steps(max_steps: u32) -> Self {
        PrecisionBudget {
            max_steps,
            ..Self::default()
        }
    }

    pub fn bits_at(&self, step: u32) -> u32 {
        self.initial_bits.saturating_mul(1u32 << step.min(20))
    }
}

/// `coefficient * sum_n base^(-exponents[n])`, truncated after the listed
/// exponents. The omitted tail is bounded using the first omitted exponent and
/// the gap condition `e_{n+1} >= e_n + 1`:
/// `c * b^(-next) <= tail <= c * b^(-next) * b / (b - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSeries {
    pub base: u32,
    pub coefficient: u32,
    pub exponents: Vec<u64>,
    pub next_exponent: u64,
}

impl SparseSeries {
    pub fn prefix_sum(&self) -> Rational {
        let b = Rational::integer(self.base);
        let c = Rational::integer(self.coefficient);
        self.exponents
            .iter()
            .map(|&e| &c / b.pow(e as i64))
            .sum()
    }

    /// Bounds on the omitted tail.
    pub fn tail_bounds(&self) -> Interval {
        let b = self.base as i64;
        let lo = Rational::integer(self.coefficient) / Rational::integer(b).pow(self.next_exponent as i64);
        let hi = &lo * Rational::frac(b, b - 1);
        Interval { lo, hi }
    }

    pub fn enclosure(&self) -> Interval {
        let s = self.prefix_sum();
        let t = self.tail_bounds();
        Interval {
            lo: &s + &t.lo,
            hi: &s + &t.hi,
        }
    }
}

/// Descriptor of a real constant with a certified enclosure procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealExpr {
    Rational(Rational),
    Sqrt(Box<RealExpr>),
    Ln(Box<RealExpr>),
    Exp(Box<RealExpr>),
    Add(Box<RealExpr>, Box<RealExpr>),
    Sub(Box<RealExpr>, Box<RealExpr>),
    Mul(Box<RealExpr>, Box<RealExpr>),
    Div(Box<RealExpr>, Box<RealExpr>),
    PowInt(Box<RealExpr>, i64),
    Series(SparseSeries),
}

impl RealExpr {
    pub fn rational(r: Rational) -> Self {
        RealExpr::Rational(r)
    }

    pub fn integer(n: i64) -> Self {
        RealExpr::Rational(Rational::integer(n))
    }

    pub fn sqrt(self) -> Self {
        RealExpr::Sqrt(Box::new(self))
    }

    pub fn ln(self) -> Self {
        RealExpr::Ln(Box::new(self))
    }

    pub fn exp(self) -> Self {
        RealExpr::Exp(Box::new(self))
    }

    pub fn powi(self, n: i64) -> Self {
        RealExpr::PowInt(Box::new(self), n)
    }

    /// `ln(a) / ln(b)`.
    pub fn log_ratio(a: Rational, b: Rational) -> Self {
        RealExpr::Rational(a).ln() / RealExpr::Rational(b).ln()
    }

    /// `log 2 / log 3`, the dimension of the middle-third Cantor set.
    pub fn gamma() -> Self {
        Self::log_ratio(Rational::integer(2), Rational::integer(3))
    }

    /// `(sqrt(5) - 1) / 2`.
    pub fn golden() -> Self {
        (RealExpr::integer(5).sqrt() - RealExpr::integer(1)) / RealExpr::integer(2)
    }

    /// `(sqrt(5) + 3) / 2`, the threshold above which the sparse-digit numbers
    /// have exact order equal to their growth rate.
    pub fn exact_order_threshold() -> Self {
        (RealExpr::integer(5).sqrt() + RealExpr::integer(3)) / RealExpr::integer(2)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealExpr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Evaluates an enclosure at `bits` of working precision.
    pub fn eval(&self, bits: u32) -> Result<Interval> {
        Ok(match self {
            RealExpr::Rational(r) => Interval::point(r.clone()),
            RealExpr::Sqrt(a) => a.eval(bits)?.sqrt(bits)?,
            RealExpr::Ln(a) => a.eval(bits)?.ln(bits)?,
            RealExpr::Exp(a) => a.eval(bits)?.exp(bits),
            RealExpr::Add(a, b) => a.eval(bits)?.add(&b.eval(bits)?, bits),
            RealExpr::Sub(a, b) => a.eval(bits)?.sub(&b.eval(bits)?, bits),
            RealExpr::Mul(a, b) => a.eval(bits)?.mul(&b.eval(bits)?, bits),
            RealExpr::Div(a, b) => a.eval(bits)?.div(&b.eval(bits)?, bits)?,
            RealExpr::PowInt(a, n) => a.eval(bits)?.powi(*n, bits)?,
            RealExpr::Series(s) => s.enclosure(),
        })
    }
}

impl From<Rational> for RealExpr {
    fn from(r: Rational) -> Self {
        RealExpr::Rational(r)
    }
}

macro_rules! expr_op {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl std::ops::$tr for RealExpr {
            type Output = RealExpr;
            fn $method(self, rhs: RealExpr) -> RealExpr {
                RealExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

expr_op!(Add, add, Add);
expr_op!(Sub, sub, Sub);
expr_op!(Mul, mul, Mul);
expr_op!(Div, div, Div);

impl fmt::Display for RealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealExpr::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            RealExpr::Rational(r) => write!(f, "({r})"),
            RealExpr::Sqrt(a) => write!(f, "sqrt({a})"),
            RealExpr::Ln(a) => write!(f, "ln({a})"),
            RealExpr::Exp(a) => write!(f, "exp({a})"),
            RealExpr::Add(a, b) => write!(f, "({a} + {b})"),
            RealExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            RealExpr::Mul(a, b) => write!(f, "{a} * {b}"),
            RealExpr::Div(a, b) => write!(f, "{a} / {b}"),
            RealExpr::PowInt(a, n) => write!(f, "{a}^{n}"),
            RealExpr::Series(s) => write!(
                f,
                "{}*sum({}^-e, e in {:?}, next >= {})",
                s.coefficient, s.base, s.exponents, s.next_exponent
            ),
        }
    }
}

impl Serialize for RealExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A certified enclosure `lo <= value <= hi` together with its source, so
/// that it can be refined on demand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub source: RealExpr,
}

impl RealEnclosure {
    pub fn exact(r: Rational) -> Self {
        RealEnclosure {
            lo: r.clone(),
            hi: r.clone(),
            source: RealExpr::Rational(r),
        }
    }

    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / Rational::integer(2)).to_f64()
    }

    /// A nested enclosure of width at most `width_target`. The result is
    /// intersected with `self`, so `lo <= lo' <= hi' <= hi`.
    pub fn refine(&self, width_target: &Rational, budget: PrecisionBudget) -> Result<RealEnclosure> {
        let fresh = enclose_real(&self.source, width_target, budget)?;
        let iv = self
            .interval()
            .intersect(&fresh.interval())
            .ok_or_else(|| Error::Precision("inconsistent enclosures".into()))?;
        Ok(RealEnclosure {
            lo: iv.lo,
            hi: iv.hi,
            source: self.source.clone(),
        })
    }
}

/// Encloses `expr` to width at most `width_target`, doubling precision per
/// step until the budget cap.
pub fn enclose_real(expr: &RealExpr, width_target: &Rational, budget: PrecisionBudget) -> Result<RealEnclosure> {
    if !width_target.is_positive() {
        return Err(Error::invalid("width target must be positive"));
    }
    let mut last: Option<Interval> = None;
    for step in 0..budget.max_steps.max(1) {
        match expr.eval(budget.bits_at(step)) {
            Ok(iv) => {
                if &iv.width() <= width_target {
                    return Ok(RealEnclosure {
                        lo: iv.lo,
                        hi: iv.hi,
                        source: expr.clone(),
                    });
                }
                if let RealExpr::Series(_) = expr {
                    last = Some(iv);
                    break;
                }
                last = Some(iv);
            }
            Err(Error::Precision(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Precision(match last {
        Some(iv) => format!(
            "enclosure of {expr} has width {} > target {}; use more terms or a larger budget",
            iv.width().to_decimal(30),
            width_target
        ),
        None => format!("could not enclose {expr} within the precision budget"),
    }))
}

/// Retries `attempt` at increasing precision until it returns a value.
pub(crate) fn decide_with<T>(
    budget: PrecisionBudget,
    what: &str,
    mut attempt: impl FnMut(u32) -> Result<Option<T>>,
) -> Result<T> {
    for step in 0..budget.max_steps.max(1) {
        match attempt(budget.bits_at(step)) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) | Err(Error::Precision(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Undecidable(format!(
        "{what}: undecided after {} precision steps",
        budget.max_steps
    )))
}

/// `floor(lambda * tau^n)`, certified: precision escalates until the
/// enclosure of `lambda * tau^n` has a single floor.
pub fn floor_power(lambda: &RealExpr, tau: &RealExpr, n: u32, budget: PrecisionBudget) -> Result<BigInt> {
    decide_with(budget, &format!("floor({lambda} * {tau}^{n})"), |bits| {
        let l = lambda.eval(bits)?;
        let t = tau.eval(bits)?;
        if !l.hi.is_positive() {
            return Err(Error::Domain("lambda must be positive".into()));
        }
        if t.hi <= Rational::one() {
            return Err(Error::Domain("tau must exceed 1".into()));
        }
        if !l.lo.is_positive() || t.lo <= Rational::one() {
            return Ok(None);
        }
        let v = l.mul(&t.powi(n as i64, bits)?, bits);
        let (a, b) = (v.lo.floor(), v.hi.floor());
        Ok((a == b).then_some(a))
    })
}

/// Convenience: `floor_power` on enclosures, refining through their sources.
pub fn floor_power_enclosed(
    lambda: &RealEnclosure,
    tau: &RealEnclosure,
    n: u32,
    budget: PrecisionBudget,
) -> Result<BigInt> {
    if tau.is_exact() && lambda.is_exact() {
        let v = &lambda.lo * tau.lo.pow(n as i64);
        return Ok(v.floor());
    }
    floor_power(&lambda.source, &tau.source, n, budget)
}

/// Sign of `expr`, certified; `Ok(0)` only when the enclosure collapses to zero.
pub fn certified_sign(expr: &RealExpr, budget: PrecisionBudget) -> Result<i32> {
    decide_with(budget, &format!("sign of {expr}"), |bits| {
        let iv = expr.eval(bits)?;
        Ok(if iv.lo.is_positive() {
            Some(1)
        } else if iv.hi.is_negative() {
            Some(-1)
        } else if iv.lo.is_zero() && iv.hi.is_zero() {
            Some(0)
        } else {
            None
        })
    })
}
