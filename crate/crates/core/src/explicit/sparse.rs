use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::cantor::{membership, Membership, MissingDigitSet, Point};
use crate::error::{Error, Result};
use crate::exact::expr::certified_sign;
use crate::exact::{floor_power, Interval, PrecisionBudget, Rational, RealExpr, SparseSeries};

/// Largest exponent `τ_n` materialized; `q_n = b^τ_n` has about
/// `τ_n log2 b` bits.
pub const MAX_EXPONENT: u64 = 1 << 20;

/// How the exponents `τ_1 < τ_2 < ...` are produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentRule {
    /// `τ_n = floor(λ τ^n)` with `τ > 2` and `λ > 0`.
    Power { tau: RealExpr, lambda: RealExpr },
    /// `τ_n = n!`.
    Factorial,
}

impl ExponentRule {
    pub fn power(tau: impl Into<RealExpr>, lambda: impl Into<RealExpr>) -> Self {
        ExponentRule::Power {
            tau: tau.into(),
            lambda: lambda.into(),
        }
    }

    /// `τ_n = floor(τ^n)`.
    pub fn tau(tau: impl Into<RealExpr>) -> Self {
        Self::power(tau, Rational::one())
    }

    fn validate(&self, budget: PrecisionBudget) -> Result<()> {
        if let ExponentRule::Power { tau, lambda } = self {
            if certified_sign(&(tau.clone() - RealExpr::integer(2)), budget)? <= 0 {
                return Err(Error::invalid(format!("tau must exceed 2, got {tau}")));
            }
            if certified_sign(lambda, budget)? <= 0 {
                return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
            }
        }
        Ok(())
    }

    fn exponent(&self, n: u32, budget: PrecisionBudget) -> Result<BigInt> {
        match self {
            ExponentRule::Power { tau, lambda } => match (tau.as_rational(), lambda.as_rational()) {
                (Some(t), Some(l)) => Ok((l * t.pow(n as i64)).floor()),
                _ => floor_power(lambda, tau, n, budget),
            },
            ExponentRule::Factorial => Ok((1..=n).map(BigInt::from).product()),
        }
    }
}

/// A truncation `ξ_s = p_s / q_s` with `q_s = b^τ_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub q: BigInt,
}

impl Truncation {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q is a power of b")
    }
}

/// `ξ = c Σ_n b^(-τ_n)` with its first `S` exponents and truncations.
#[derive(Clone, Debug, Serialize)]
pub struct SparseDigitNumber {
    pub base: u32,
    pub coefficient: u32,
    pub rule: ExponentRule,
    pub exponents: Vec<u64>,
    /// `τ_(S+1)`, which bounds the omitted tail.
    pub next_exponent: u64,
    pub truncations: Vec<Truncation>,
    #[serde(skip)]
    budget: PrecisionBudget,
}

fn checked_exponent(e: BigInt) -> Result<u64> {
    e.to_u64()
        .filter(|&v| v <= MAX_EXPONENT)
        .ok_or_else(|| Error::Resource(format!("exponent {e} exceeds the limit {MAX_EXPONENT}")))
}

/// The first `terms` exponents and truncations of `c Σ b^(-τ_n)`.
pub fn build_sparse_number(
    base: u32,
    coefficient: u32,
    rule: ExponentRule,
    terms: usize,
    budget: PrecisionBudget,
) -> Result<SparseDigitNumber> {
    if base < 3 {
        return Err(Error::invalid(format!("base must be at least 3, got {base}")));
    }
    if coefficient == 0 || coefficient >= base {
        return Err(Error::invalid(format!("coefficient must be a nonzero digit below {base}")));
    }
    if terms < 2 {
        return Err(Error::invalid("need at least 2 terms"));
    }
    rule.validate(budget)?;
    let mut all = Vec::with_capacity(terms + 1);
    for n in 1..=terms as u32 + 1 {
        let e = rule.exponent(n, budget)?;
        if e < BigInt::one() {
            return Err(Error::invalid(format!("exponent tau_{n} = {e} must be at least 1")));
        }
        let e = checked_exponent(e)?;
        if let Some(&prev) = all.last() {
            if e <= prev {
                return Err(Error::invalid(format!(
                    "exponent collision: tau_{n} = {e} <= tau_{} = {prev}",
                    n - 1
                )));
            }
        }
        all.push(e);
    }
    let next_exponent = all.pop().expect("terms + 1 exponents");
    let b = BigInt::from(base);
    let c = BigInt::from(coefficient);
    let mut truncations: Vec<Truncation> = Vec::with_capacity(terms);
    let mut prev_e = 0u64;
    for (s, &e) in all.iter().enumerate() {
        let shift = b.pow((e - prev_e) as u32);
        let p = match truncations.last() {
            Some(t) => &t.p * &shift + &c,
            None => c.clone(),
        };
        let q = b.pow(e as u32);
        if !p.gcd(&q).is_one() {
            return Err(Error::invalid(format!(
                "gcd(p_{0}, q_{0}) != 1: coefficient {coefficient} shares a factor with base {base}",
                s + 1
            )));
        }
        truncations.push(Truncation { p, q });
        prev_e = e;
    }
    Ok(SparseDigitNumber {
        base,
        coefficient,
        rule,
        exponents: all,
        next_exponent,
        truncations,
        budget,
    })
}

impl SparseDigitNumber {
    pub fn terms(&self) -> usize {
        self.exponents.len()
    }

    pub fn budget(&self) -> PrecisionBudget {
        self.budget
    }

    /// The same number with `extra` more terms.
    pub fn extend(&self, extra: usize) -> Result<Self> {
        build_sparse_number(self.base, self.coefficient, self.rule.clone(), self.terms() + extra, self.budget)
    }

    pub fn series(&self) -> SparseSeries {
        SparseSeries {
            base: self.base,
            coefficient: self.coefficient,
            exponents: self.exponents.clone(),
            next_exponent: self.next_exponent,
        }
    }

    pub fn expr(&self) -> RealExpr {
        RealExpr::Series(self.series())
    }

    /// Exact bounds on `ξ`.
    pub fn enclosure(&self) -> Interval {
        self.series().enclosure()
    }

    /// `ξ_s = p_s / q_s` for `1 <= s <= S`.
    pub fn truncation(&self, s: usize) -> Result<&Truncation> {
        if s == 0 || s > self.terms() {
            return Err(Error::invalid(format!("s must be in 1..={}, got {s}", self.terms())));
        }
        Ok(&self.truncations[s - 1])
    }

    /// Bounds on `ξ - ξ_s`.
    pub fn tail(&self, s: usize) -> Result<Interval> {
        let v = self.truncation(s)?.value();
        let e = self.enclosure();
        Ok(Interval::new(&e.lo - &v, &e.hi - &v))
    }

    /// Membership of `ξ` at depth `τ_S`.
    pub fn membership_in(&self, set: &MissingDigitSet) -> Membership {
        let depth = *self.exponents.last().expect("at least two terms") as u32;
        membership(&Point::Enclosed(self.enclosure()), set, depth)
    }
}
