use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::sym::SymReal;
use crate::cantor::MissingDigitSet;
use crate::error::{Error, Result};
use crate::exact::expr::decide_with;
use crate::exact::{Interval, PrecisionBudget, Rational, RealExpr};

/// Shape of an approximation function `ψ`, only ever evaluated at `r = b^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiKind {
    /// `ψ(r) = r^-τ`.
    Power { tau: SymReal },
    /// `ψ(r) = r^-α (ln r)^-β`.
    PowerLog { alpha: SymReal, log_exponent: SymReal },
    /// Explicit values `ψ(b^n)`, keyed by `n`.
    Table(BTreeMap<u32, Rational>),
}

/// An approximation function, optionally truncated to `Ψ(r) = min(c/r, ψ(r))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxFunction {
    pub kind: PsiKind,
    pub truncation: Option<Rational>,
}

impl ApproxFunction {
    pub fn power(tau: impl Into<SymReal>) -> Self {
        ApproxFunction {
            kind: PsiKind::Power { tau: tau.into() },
            truncation: None,
        }
    }

    pub fn power_log(alpha: impl Into<SymReal>, log_exponent: impl Into<SymReal>) -> Self {
        ApproxFunction {
            kind: PsiKind::PowerLog {
                alpha: alpha.into(),
                log_exponent: log_exponent.into(),
            },
            truncation: None,
        }
    }

    /// Values at `b^n`, keyed by `n`; all must be positive.
    pub fn table(values: impl IntoIterator<Item = (u32, Rational)>) -> Result<Self> {
        let values: BTreeMap<u32, Rational> = values.into_iter().collect();
        if let Some((n, v)) = values.iter().find(|(_, v)| !v.is_positive()) {
            return Err(Error::invalid(format!("psi(b^{n}) = {v} is not positive")));
        }
        Ok(ApproxFunction {
            kind: PsiKind::Table(values),
            truncation: None,
        })
    }

    /// A table given at radii `r`, each of which must be a power `b^n`, `n >= 1`.
    pub fn table_at_radii(base: u32, values: impl IntoIterator<Item = (BigInt, Rational)>) -> Result<Self> {
        let b = BigInt::from(base);
        let mut out = Vec::new();
        for (r, v) in values {
            let mut n = 0u32;
            let mut p = BigInt::from(1);
            while p < r {
                p *= &b;
                n += 1;
            }
            if p != r || n == 0 {
                return Err(Error::invalid(format!("table key {r} is not a power b^n of base {base} with n >= 1")));
            }
            out.push((n, v));
        }
        Self::table(out)
    }

    pub fn is_table(&self) -> bool {
        matches!(self.kind, PsiKind::Table(_))
    }

    /// `ψ(b^n)` before truncation.
    pub(crate) fn raw_at(&self, n: u32) -> Result<LevelTerm> {
        Ok(match &self.kind {
            PsiKind::Power { tau } => LevelTerm::b_power(n, -(&SymReal::integer(n as i64) * tau)),
            PsiKind::PowerLog { alpha, log_exponent } => {
                let mut t = LevelTerm::b_power(n, -(&SymReal::integer(n as i64) * alpha));
                t.log_exp = -log_exponent;
                t
            }
            PsiKind::Table(values) => {
                let v = values
                    .get(&n)
                    .ok_or_else(|| Error::invalid(format!("psi table has no value at level {n}")))?;
                LevelTerm::constant(n, v.clone())
            }
        })
    }

    /// `Ψ(b^n)`: `ψ(b^n)`, or `min(c b^-n, ψ(b^n))` when truncated.
    pub fn at(&self, set: &MissingDigitSet, n: u32, budget: PrecisionBudget) -> Result<LevelTerm> {
        let raw = self.raw_at(n)?;
        let Some(c) = &self.truncation else {
            return Ok(raw);
        };
        let cap = c / Rational::integer(set.base()).pow(n as i64);
        if let Some(v) = raw.exact(set) {
            return Ok(LevelTerm::constant(n, v.min(cap)));
        }
        let expr = raw.expr(set);
        let below = decide_with(budget, "truncation comparison", |bits| {
            let iv = expr.eval(bits)?;
            Ok(if iv.hi < cap {
                Some(true)
            } else if iv.lo > cap {
                Some(false)
            } else {
                None
            })
        })?;
        Ok(if below { raw } else { LevelTerm::constant(n, cap) })
    }

    /// Lower bound on the eventual power-law decay exponent, used by the
    /// series test: with truncation, `Ψ` decays at least like `b^-n`.
    pub(crate) fn effective(&self, set: &MissingDigitSet, budget: PrecisionBudget) -> Result<ApproxFunction> {
        if self.truncation.is_none() {
            return Ok(self.clone());
        }
        let one = SymReal::integer(1);
        let (alpha, beta) = match &self.kind {
            PsiKind::Power { tau } => (tau.clone(), SymReal::zero()),
            PsiKind::PowerLog { alpha, log_exponent } => (alpha.clone(), log_exponent.clone()),
            PsiKind::Table(_) => return Ok(self.clone()),
        };
        let cmp = (&alpha - &one).sign(set, budget)?;
        let capped = cmp < 0 || (cmp == 0 && beta.sign(set, budget)? < 0);
        Ok(if capped {
            ApproxFunction::power(one)
        } else {
            ApproxFunction {
                truncation: None,
                ..self.clone()
            }
        })
    }
}

/// `truncate_psi`: `Ψ(r) = min(c/r, ψ(r))`.
pub fn truncate_psi(psi: &ApproxFunction, c: Rational) -> Result<ApproxFunction> {
    if !c.is_positive() {
        return Err(Error::invalid(format!("truncation constant must be positive, got {c}")));
    }
    Ok(ApproxFunction {
        truncation: Some(c),
        ..psi.clone()
    })
}

impl fmt::Display for ApproxFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PsiKind::Power { tau } => write!(f, "pow:{tau}")?,
            PsiKind::PowerLog { alpha, log_exponent } => write!(f, "powlog:{alpha}:{log_exponent}")?,
            PsiKind::Table(values) => {
                let parts: Vec<String> = values.iter().map(|(n, v)| format!("b^{n}={v}")).collect();
                write!(f, "table:{}", parts.join(","))?
            }
        }
        if let Some(c) = &self.truncation {
            write!(f, " min c={c}")?;
        }
        Ok(())
    }
}

impl Serialize for ApproxFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimensionKind {
    /// `f(r) = r^s`.
    Power(SymReal),
    /// Explicit values `f(Ψ(b^n))`, keyed by `n`.
    Table(BTreeMap<u32, Rational>),
}

/// A dimension function with the caller's assertion that `r^-γ* f(r)` is
/// monotonic on the evaluation set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionFunction {
    pub kind: DimensionKind,
    pub monotonicity_witness: bool,
}

impl DimensionFunction {
    /// `r^s`; `r^(s - γ*)` is monotonic for every `s`, so the witness holds.
    pub fn power(s: impl Into<SymReal>) -> Self {
        DimensionFunction {
            kind: DimensionKind::Power(s.into()),
            monotonicity_witness: true,
        }
    }

    pub fn table(values: impl IntoIterator<Item = (u32, Rational)>, monotonicity_witness: bool) -> Result<Self> {
        let values: BTreeMap<u32, Rational> = values.into_iter().collect();
        if let Some((n, v)) = values.iter().find(|(_, v)| !v.is_positive()) {
            return Err(Error::invalid(format!("f at level {n} is {v}, not positive")));
        }
        Ok(DimensionFunction {
            kind: DimensionKind::Table(values),
            monotonicity_witness,
        })
    }

    /// `f(Ψ(b^n))`.
    pub(crate) fn apply(&self, psi_n: &LevelTerm) -> Result<LevelTerm> {
        match &self.kind {
            DimensionKind::Power(s) => Ok(psi_n.pow(s)),
            DimensionKind::Table(values) => values
                .get(&psi_n.n)
                .map(|v| LevelTerm::constant(psi_n.n, v.clone()))
                .ok_or_else(|| Error::invalid(format!("f table has no value at level {}", psi_n.n))),
        }
    }
}

impl fmt::Display for DimensionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DimensionKind::Power(s) => write!(f, "pow:{s}"),
            DimensionKind::Table(values) => {
                let parts: Vec<String> = values.iter().map(|(n, v)| format!("{n}={v}")).collect();
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}

impl Serialize for DimensionFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A positive quantity attached to level `n`:
/// `coef * b^b_exp * (n ln b)^log_exp * Π v_i^e_i`, exponents symbolic in `γ*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelTerm {
    pub n: u32,
    coef: Rational,
    b_exp: SymReal,
    log_exp: SymReal,
    powers: Vec<(Rational, SymReal)>,
}

impl LevelTerm {
    pub fn constant(n: u32, v: Rational) -> Self {
        LevelTerm {
            n,
            coef: v,
            b_exp: SymReal::zero(),
            log_exp: SymReal::zero(),
            powers: Vec::new(),
        }
    }

    /// `b^e`.
    pub fn b_power(n: u32, e: SymReal) -> Self {
        LevelTerm {
            b_exp: e,
            ..Self::constant(n, Rational::one())
        }
    }

    pub fn mul(&self, other: &LevelTerm) -> LevelTerm {
        let mut powers = self.powers.clone();
        powers.extend(other.powers.iter().cloned());
        LevelTerm {
            n: self.n,
            coef: &self.coef * &other.coef,
            b_exp: &self.b_exp + &other.b_exp,
            log_exp: &self.log_exp + &other.log_exp,
            powers,
        }
    }

    pub fn scale(&self, k: &Rational) -> LevelTerm {
        LevelTerm {
            coef: &self.coef * k,
            ..self.clone()
        }
    }

    /// `self^s`.
    pub fn pow(&self, s: &SymReal) -> LevelTerm {
        let mut powers: Vec<(Rational, SymReal)> = self.powers.iter().map(|(v, e)| (v.clone(), e * s)).collect();
        let mut coef = Rational::one();
        match s.as_rational() {
            Some(k) if k.is_integer() => coef = self.coef.pow(i64::try_from(k.floor()).expect("small exponent")),
            _ if self.coef == Rational::one() => {}
            _ => powers.push((self.coef.clone(), s.clone())),
        }
        LevelTerm {
            n: self.n,
            coef,
            b_exp: &self.b_exp * s,
            log_exp: &self.log_exp * s,
            powers,
        }
    }

    /// The exact value when it is rational by construction.
    ///
    /// `b^(a γ* + c) = #J^a b^c` is exact whenever `a` and `c` are integers.
    pub fn exact(&self, set: &MissingDigitSet) -> Option<Rational> {
        let mut v = self.coef.clone();
        v = v * exact_b_power(set, &self.b_exp)?;
        if !self.log_exp.collapse(set).is_zero() {
            return None;
        }
        for (base, e) in &self.powers {
            if *base == Rational::one() {
                continue;
            }
            let k = e.collapse(set).as_rational().filter(Rational::is_integer)?;
            v = v * base.pow(i64::try_from(k.floor()).ok()?);
        }
        Some(v)
    }

    pub fn expr(&self, set: &MissingDigitSet) -> RealExpr {
        if let Some(v) = self.exact(set) {
            return RealExpr::rational(v);
        }
        let ln_b = RealExpr::integer(set.base() as i64).ln();
        let mut logs: Vec<RealExpr> = Vec::new();
        let mut coef = self.coef.clone();
        match exact_b_power(set, &self.b_exp) {
            Some(v) => coef = coef * v,
            None => logs.push(self.b_exp.to_expr(set) * ln_b.clone()),
        }
        if !self.log_exp.collapse(set).is_zero() {
            let ln_nlnb = (RealExpr::integer(self.n as i64) * ln_b).ln();
            logs.push(self.log_exp.to_expr(set) * ln_nlnb);
        }
        for (base, e) in &self.powers {
            if *base != Rational::one() {
                logs.push(e.to_expr(set) * RealExpr::rational(base.clone()).ln());
            }
        }
        match logs.into_iter().reduce(|a, b| a + b) {
            Some(l) => RealExpr::rational(coef) * l.exp(),
            None => RealExpr::rational(coef),
        }
    }

    pub fn enclose(&self, set: &MissingDigitSet, bits: u32) -> Result<Interval> {
        self.expr(set).eval(bits)
    }

    /// Certified enclosure with relative width about `2^-bits`.
    pub fn enclose_certified(&self, set: &MissingDigitSet, budget: PrecisionBudget) -> Result<Interval> {
        if let Some(v) = self.exact(set) {
            return Ok(Interval::point(v));
        }
        let expr = self.expr(set);
        decide_with(budget, "level value", |bits| match expr.eval(bits.max(64)) {
            Ok(iv) => Ok(Some(iv)),
            Err(Error::Precision(_)) => Ok(None),
            Err(e) => Err(e),
        })
    }
}

fn exact_b_power(set: &MissingDigitSet, e: &SymReal) -> Option<Rational> {
    let b = Rational::integer(set.base());
    if let Some((a, c)) = e.linear_parts() {
        if a.is_integer() && c.is_integer() {
            let m = Rational::integer(set.digit_count());
            return Some(m.pow(i64::try_from(a.floor()).ok()?) * b.pow(i64::try_from(c.floor()).ok()?));
        }
    }
    let r = e.collapse(set).as_rational()?;
    r.is_integer().then(|| b.pow(i64::try_from(r.floor()).expect("small exponent")))
}
