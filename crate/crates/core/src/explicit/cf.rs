use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::sparse::SparseDigitNumber;
use crate::error::{Error, Result};
use crate::exact::{Interval, PrecisionBudget, Rational, RealExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("q >= 1")
    }
}

/// `x = [0; a_1, a_2, ...]` for `x` in `(0, 1)`, with the convergents
/// `p_n / q_n`, `n = 1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    #[serde(serialize_with = "crate::exact::ser::bigints")]
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<Convergent>,
    /// Number of quotients certified to be those of `x`.
    pub certified_depth: usize,
    /// The expansion of a rational ended before the requested depth.
    pub terminated: bool,
    /// Fewer quotients than requested could be certified.
    pub partial: bool,
}

impl ContinuedFraction {
    pub fn from_quotients(quotients: Vec<BigInt>, requested: usize, terminated: bool) -> Self {
        let (mut p2, mut q2) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
        let mut convergents = Vec::with_capacity(quotients.len());
        for a in &quotients {
            let p = a * &p1 + &p2;
            let q = a * &q1 + &q2;
            convergents.push(Convergent { p: p.clone(), q: q.clone() });
            (p2, q2, p1, q1) = (p1, q1, p, q);
        }
        ContinuedFraction {
            certified_depth: quotients.len(),
            partial: !terminated && quotients.len() < requested,
            quotients,
            convergents,
            terminated,
        }
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// `(p_n, q_n)` for `n >= -1`, with `(p_0, q_0) = (0, 1)` and `(p_-1, q_-1) = (1, 0)`.
    fn pq(&self, n: i64) -> (BigInt, BigInt) {
        match n {
            -1 => (BigInt::one(), BigInt::zero()),
            0 => (BigInt::zero(), BigInt::one()),
            _ => {
                let c = &self.convergents[n as usize - 1];
                (c.p.clone(), c.q.clone())
            }
        }
    }

    /// Index `n` (1-based) of the convergent `p / q`.
    pub fn position(&self, p: &BigInt, q: &BigInt) -> Option<usize> {
        self.convergents.iter().position(|c| &c.p == p && &c.q == q).map(|i| i + 1)
    }

    pub fn recurrence_holds(&self) -> bool {
        (1..=self.len() as i64).all(|n| {
            let a = &self.quotients[n as usize - 1];
            let ((p, q), (p1, q1), (p2, q2)) = (self.pq(n), self.pq(n - 1), self.pq(n - 2));
            p == a * p1 + p2 && q == a * q1 + q2
        })
    }

    /// `q_n p_(n-1) - p_n q_(n-1) = (-1)^n`.
    pub fn determinant_holds(&self) -> bool {
        (1..=self.len() as i64).all(|n| {
            let ((p, q), (p1, q1)) = (self.pq(n), self.pq(n - 1));
            let d = q * p1 - p * q1;
            d == BigInt::from(if n % 2 == 0 { 1 } else { -1 })
        })
    }

    /// `q_n` strictly increasing from `n = 2` on.
    pub fn denominators_increasing(&self) -> bool {
        self.convergents.windows(2).skip(1).all(|w| w[0].q < w[1].q) || self.len() < 3
    }

    /// `1/(q_n (q_n + q_(n+1))) < |x - p_n/q_n| < 1/(q_n q_(n+1))` for every
    /// `n` with a successor. When `x` is the last convergent of a terminated
    /// expansion the final upper bound holds with equality and is checked as such.
    pub fn sandwich_holds(&self, x: &Interval) -> Result<bool> {
        let last = self.len().saturating_sub(1);
        for n in 1..=last {
            let (c, next) = (&self.convergents[n - 1], &self.convergents[n]);
            let v = c.value();
            let d = Interval::new(&x.lo - &v, &x.hi - &v);
            let (dlo, dhi) = if d.lo.is_negative() {
                if d.hi.is_positive() {
                    return Err(Error::Precision(format!("enclosure contains convergent {n}")));
                }
                (-d.hi.clone(), -d.lo.clone())
            } else {
                (d.lo, d.hi)
            };
            let lower = Rational::new(1, &c.q * (&c.q + &next.q)).expect("positive");
            let upper = Rational::new(1, &c.q * &next.q).expect("positive");
            let closing = self.terminated && n == last && x.is_point();
            let ok_upper = if closing { dhi <= upper } else { dhi < upper };
            if dlo > lower && ok_upper {
                continue;
            }
            if dhi <= lower || dlo >= upper {
                return Ok(false);
            }
            return Err(Error::Precision(format!("enclosure too wide at convergent {n}")));
        }
        Ok(true)
    }

    /// Consecutive convergents lie on either side of `x`: `p_n/q_n > x` for odd `n`.
    pub fn alternates(&self, x: &Interval) -> Result<bool> {
        for (i, c) in self.convergents.iter().enumerate() {
            let v = c.value();
            if self.terminated && i + 1 == self.len() {
                return Ok(x.contains(&v));
            }
            let above = if v > x.hi {
                true
            } else if v < x.lo {
                false
            } else {
                return Err(Error::Precision(format!("enclosure contains convergent {}", i + 1)));
            };
            if above != (i % 2 == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Quotients shared by every number in `[lo, hi]`: `a` is emitted only
/// when `floor(1/hi) = floor(1/lo)`.
pub fn certified_prefix(x: &Interval, max: usize) -> Vec<BigInt> {
    let one = Rational::one();
    let (mut u, mut v) = (x.lo.clone(), x.hi.clone());
    let mut out = Vec::new();
    while out.len() < max && u.is_positive() && v < one {
        let (ru, rv) = (u.recip().expect("positive"), v.recip().expect("positive"));
        let a = rv.floor();
        if a != ru.floor() {
            break;
        }
        let a_r = Rational::integer(a.clone());
        (u, v) = (&rv - &a_r, &ru - &a_r);
        out.push(a);
    }
    out
}

/// Exact expansion of a rational in `(0, 1)`, at most `depth` quotients.
pub fn rational_expansion(x: &Rational, depth: usize) -> Result<ContinuedFraction> {
    if !x.is_positive() || x >= &Rational::one() {
        return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
    }
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let mut quotients = Vec::new();
    while !num.is_zero() && quotients.len() < depth {
        let a = &den / &num;
        (num, den) = (&den - &a * &num, num);
        quotients.push(a);
    }
    Ok(ContinuedFraction::from_quotients(quotients, depth, num.is_zero()))
}

/// A source of successively tighter enclosures.
pub trait Refine: Send {
    /// The enclosure after `step` refinements, or `None` once exhausted.
    fn enclosure(&mut self, step: u32) -> Result<Option<Interval>>;
}

struct ExprSource {
    expr: RealExpr,
    budget: PrecisionBudget,
}

impl Refine for ExprSource {
    fn enclosure(&mut self, step: u32) -> Result<Option<Interval>> {
        if step >= self.budget.max_steps.max(1) {
            return Ok(None);
        }
        match self.expr.eval(self.budget.bits_at(step)) {
            Ok(iv) => Ok(Some(iv)),
            Err(Error::Precision(_)) => self.enclosure(step + 1),
            Err(e) => Err(e),
        }
    }
}

struct SparseSource {
    number: SparseDigitNumber,
    max_extra: u32,
}

impl Refine for SparseSource {
    fn enclosure(&mut self, step: u32) -> Result<Option<Interval>> {
        if step > self.max_extra {
            return Ok(None);
        }
        match self.number.extend(step as usize) {
            Ok(x) => Ok(Some(x.enclosure())),
            Err(Error::Resource(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// A refinement session: holds the current enclosure and asks its source
/// for a tighter one on demand. Meant to be driven by one worker at a time.
pub struct CfSession {
    source: Box<dyn Refine>,
    step: u32,
    current: Interval,
}

impl CfSession {
    pub fn new(mut source: Box<dyn Refine>) -> Result<Self> {
        let current = source
            .enclosure(0)?
            .ok_or_else(|| Error::Precision("source gave no enclosure".into()))?;
        Ok(CfSession { source, step: 0, current })
    }

    pub fn from_expr(expr: RealExpr, budget: PrecisionBudget) -> Result<Self> {
        Self::new(Box::new(ExprSource { expr, budget }))
    }

    /// Refinement adds up to `max_extra` series terms.
    pub fn from_sparse(number: SparseDigitNumber, max_extra: u32) -> Result<Self> {
        Self::new(Box::new(SparseSource { number, max_extra }))
    }

    pub fn interval(&self) -> &Interval {
        &self.current
    }

    pub fn refinements(&self) -> u32 {
        self.step
    }

    /// Tightens the enclosure; `false` when the source is exhausted.
    pub fn refine(&mut self) -> Result<bool> {
        match self.source.enclosure(self.step + 1)? {
            Some(iv) => {
                self.step += 1;
                self.current = self.current.intersect(&iv).ok_or_else(|| {
                    Error::Precision("refined enclosure is inconsistent with the previous one".into())
                })?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Certified expansion to `depth` quotients, refining as needed. If the
    /// source runs out first the certified prefix is returned, flagged partial.
    pub fn expand(&mut self, depth: usize) -> Result<ContinuedFraction> {
        loop {
            let prefix = certified_prefix(&self.current, depth);
            if prefix.len() >= depth || !self.refine()? {
                if prefix.is_empty() && (!self.current.lo.is_positive() || self.current.hi >= Rational::one()) {
                    return Err(Error::Domain("x must lie in (0, 1)".into()));
                }
                return Ok(ContinuedFraction::from_quotients(prefix, depth, false));
            }
        }
    }
}

/// What to expand.
#[derive(Clone, Debug)]
pub enum CfInput {
    Exact(Rational),
    Expr(RealExpr),
    /// A sparse-digit number, refined by adding up to the given number of terms.
    Sparse(SparseDigitNumber, u32),
}

pub fn continued_fraction_expand(x: &CfInput, depth: usize, budget: PrecisionBudget) -> Result<ContinuedFraction> {
    match x {
        CfInput::Exact(r) => rational_expansion(r, depth),
        CfInput::Expr(e) => match e.as_rational() {
            Some(r) => rational_expansion(r, depth),
            None => CfSession::from_expr(e.clone(), budget)?.expand(depth),
        },
        CfInput::Sparse(x, extra) => CfSession::from_sparse(x.clone(), *extra)?.expand(depth),
    }
}
