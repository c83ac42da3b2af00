use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cantor::MissingDigitSet;
use crate::error::{Error, Result};
use crate::exact::expr::certified_sign;
use crate::exact::{PrecisionBudget, Rational, RealExpr};

/// A real of the form `Σ c_k γ*^k` (`k` any integer, `c_k` rational), where
/// `γ*` is the exponent of whichever set the value is used with.
///
/// Keeping exponents symbolic lets identities like `τ s = γ*` hold exactly,
/// so the boundary case of the series test is decided rather than guessed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymReal {
    terms: BTreeMap<i32, Rational>,
}

impl SymReal {
    pub fn rational(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::integer(n))
    }

    pub fn zero() -> Self {
        SymReal::default()
    }

    /// `γ*`.
    pub fn gamma() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        SymReal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value, if it does not involve `γ*`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn involves_gamma(&self) -> bool {
        self.terms.keys().any(|&k| k != 0)
    }

    /// `(a, c)` with `self = a γ* + c`, if it has that shape.
    pub fn linear_parts(&self) -> Option<(Rational, Rational)> {
        if self.terms.keys().any(|&k| k != 0 && k != 1) {
            return None;
        }
        let get = |k| self.terms.get(&k).cloned().unwrap_or_else(Rational::zero);
        Some((get(1), get(0)))
    }

    /// Substitutes `γ*` when it is rational for `set`.
    pub fn collapse(&self, set: &MissingDigitSet) -> SymReal {
        match set.rational_exponent() {
            Some(g) if self.involves_gamma() => {
                let v = self.terms.iter().map(|(&k, c)| c * g.pow(k as i64)).sum();
                SymReal::rational(v)
            }
            _ => self.clone(),
        }
    }

    pub fn to_expr(&self, set: &MissingDigitSet) -> RealExpr {
        let collapsed = self.collapse(set);
        if let Some(r) = collapsed.as_rational() {
            return RealExpr::rational(r);
        }
        let gamma = RealExpr::log_ratio(
            Rational::integer(set.digit_count()),
            Rational::integer(set.base()),
        );
        collapsed
            .terms
            .iter()
            .map(|(&k, c)| {
                let g = if k == 1 { gamma.clone() } else { gamma.clone().powi(k as i64) };
                if *c == Rational::one() {
                    g
                } else {
                    RealExpr::rational(c.clone()) * g
                }
            })
            .reduce(|a, b| a + b)
            .expect("nonzero polynomial")
    }

    /// Certified sign at `γ* = γ*(set)`.
    ///
    /// A nonzero Laurent polynomial with rational coefficients cannot vanish
    /// at `γ*` unless `γ*` is rational (otherwise `γ*` is transcendental), and
    /// the rational case is substituted exactly, so refinement always settles.
    pub fn sign(&self, set: &MissingDigitSet, budget: PrecisionBudget) -> Result<i32> {
        let collapsed = self.collapse(set);
        if let Some(r) = collapsed.as_rational() {
            return Ok(if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            });
        }
        certified_sign(&collapsed.to_expr(set), budget)
    }

    pub fn to_f64(&self, set: &MissingDigitSet) -> f64 {
        let g = set.exponent().midpoint_f64();
        self.terms.iter().map(|(&k, c)| c.to_f64() * g.powi(k)).sum()
    }
}

impl From<Rational> for SymReal {
    fn from(r: Rational) -> Self {
        SymReal::rational(r)
    }
}

impl Add for &SymReal {
    type Output = SymReal;
    fn add(self, rhs: &SymReal) -> SymReal {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            let v = terms.remove(&k).unwrap_or_else(Rational::zero) + c;
            if !v.is_zero() {
                terms.insert(k, v);
            }
        }
        SymReal { terms }
    }
}

impl Neg for &SymReal {
    type Output = SymReal;
    fn neg(self) -> SymReal {
        SymReal {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for SymReal {
    type Output = SymReal;
    fn neg(self) -> SymReal {
        -&self
    }
}

impl Sub for &SymReal {
    type Output = SymReal;
    fn sub(self, rhs: &SymReal) -> SymReal {
        self + &(-rhs)
    }
}

impl Mul for &SymReal {
    type Output = SymReal;
    fn mul(self, rhs: &SymReal) -> SymReal {
        let mut out = SymReal::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &rhs.terms {
                out = &out + &SymReal::monomial(a * b, i + j);
            }
        }
        out
    }
}

impl Mul<&Rational> for &SymReal {
    type Output = SymReal;
    fn mul(self, rhs: &Rational) -> SymReal {
        self * &SymReal::rational(rhs.clone())
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&k, c)| match k {
                0 => c.to_string(),
                1 if *c == Rational::one() => "gamma".to_string(),
                1 => format!("{c}*gamma"),
                _ if *c == Rational::one() => format!("gamma^{k}"),
                _ => format!("{c}*gamma^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for SymReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses products and quotients of rationals, decimals and `gamma`, e.g.
/// `2`, `5/2`, `0.63`, `gamma`, `gamma/3`, `2*gamma`, `6/gamma`.
impl FromStr for SymReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty exponent"));
        }
        let mut value = SymReal::integer(1);
        let mut rest = s;
        let mut divide = false;
        loop {
            let end = rest.find(['*', '/']).unwrap_or(rest.len());
            let (tok, tail) = rest.split_at(end);
            let tok = tok.trim();
            let factor = match tok {
                "gamma" => SymReal::monomial(Rational::one(), if divide { -1 } else { 1 }),
                _ => {
                    let r: Rational = tok
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad exponent {s:?}")))?;
                    if divide {
                        SymReal::rational(r.recip().map_err(|_| Error::invalid(format!("division by zero in {s:?}")))?)
                    } else {
                        SymReal::rational(r)
                    }
                }
            };
            value = &value * &factor;
            if tail.is_empty() {
                return Ok(value);
            }
            divide = tail.starts_with('/');
            rest = &tail[1..];
        }
    }
}
