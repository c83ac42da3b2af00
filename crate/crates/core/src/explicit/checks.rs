use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::cf::ContinuedFraction;
use super::sparse::{ExponentRule, SparseDigitNumber};
use crate::error::{Error, Result};
use crate::exact::expr::{certified_sign, decide_with};
use crate::exact::{Interval, PrecisionBudget, Rational, RealExpr};

const LOG_BITS: u32 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LegendreVerdict {
    /// `|x - p/q| < 1/(2 q^2)`, so `p/q` is a convergent of `x`.
    Yes,
    /// The bound fails; this does not rule out `p/q` being a convergent.
    NotImplied,
}

/// Legendre's criterion for `p / q` against an enclosure of `x`.
pub fn legendre_is_convergent(p: &BigInt, q: &BigInt, x: &Interval) -> Result<LegendreVerdict> {
    if !q.is_positive() || !p.gcd(q).is_one() {
        return Err(Error::invalid(format!("need q >= 1 and gcd(p, q) = 1, got {p}/{q}")));
    }
    let v = Rational::new(p.clone(), q.clone())?;
    let bound = Rational::new(1, q * q * 2)?;
    let (a, b) = ((&x.lo - &v).abs(), (&x.hi - &v).abs());
    let far = a.clone().max(b.clone());
    let near = if x.contains(&v) { Rational::zero() } else { a.min(b) };
    if far < bound {
        Ok(LegendreVerdict::Yes)
    } else if near >= bound {
        Ok(LegendreVerdict::NotImplied)
    } else {
        Err(Error::Precision(format!("enclosure too wide to compare |x - {v}| with {bound}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Index `n` of `q_n`.
    pub n: usize,
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub q_n: BigInt,
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub q_next: BigInt,
    /// `log q_(n+1) / log q_n`.
    pub ratio: Interval,
}

/// Finite-window estimate `1 + max_n log q_(n+1) / log q_n` of the exact order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentEstimate {
    pub estimate: Interval,
    pub witness: Witness,
    /// Number of convergents in the window.
    pub window: usize,
    /// First index `n` used; earlier ones have `q_n^4 < q_N`.
    pub burn_in: usize,
    pub label: &'static str,
}

fn ln_int(q: &BigInt) -> Result<Interval> {
    RealExpr::rational(Rational::integer(q.clone())).ln().eval(LOG_BITS)
}

/// Uses the indices `n` with `q_n >= 2` and `q_n^4 >= q_N` (the last one),
/// so the estimate reflects the tail of the window rather than its start.
pub fn irrationality_exponent_estimate(cf: &ContinuedFraction) -> Result<ExponentEstimate> {
    let cs = &cf.convergents;
    if cs.len() < 3 {
        return Err(Error::invalid(format!("need at least 3 convergents, got {}", cs.len())));
    }
    let last = &cs[cs.len() - 1].q;
    let two = BigInt::from(2);
    let burn_in = (0..cs.len() - 1)
        .find(|&i| cs[i].q >= two && &cs[i].q.pow(4) >= last)
        .ok_or_else(|| Error::invalid("no convergent pair past the burn-in"))?;
    let mut best: Option<Witness> = None;
    let mut max_lo = Rational::zero();
    for i in burn_in..cs.len() - 1 {
        let ratio = ln_int(&cs[i + 1].q)?.div(&ln_int(&cs[i].q)?, LOG_BITS)?;
        max_lo = max_lo.max(ratio.lo.clone());
        if best.as_ref().is_none_or(|w| ratio.hi > w.ratio.hi) {
            best = Some(Witness {
                n: i + 1,
                q_n: cs[i].q.clone(),
                q_next: cs[i + 1].q.clone(),
                ratio,
            });
        }
    }
    let witness = best.expect("at least one pair");
    let one = Rational::one();
    Ok(ExponentEstimate {
        estimate: Interval::new(&one + &max_lo, &one + &witness.ratio.hi),
        witness,
        window: cs.len(),
        burn_in: burn_in + 1,
        label: "finite-window estimate",
    })
}

/// Checks on one truncation `ξ_s` of `ξ = c Σ b^(-τ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationCheck {
    pub s: usize,
    /// `τ_(s+1) / τ_s`.
    pub growth: Rational,
    /// `b^-1 q_s^τ < q_(s+1) < b^τ q_s^τ`; absent for the factorial rule.
    pub growth_bounds: Option<bool>,
    /// Bounds on `q_(s+1) |ξ - ξ_s|`.
    pub scaled_gap: Interval,
    /// `c < q_(s+1) |ξ - ξ_s| < c + 1`.
    pub gap_bounds: bool,
    /// `c b^-τ q_s^-τ < |ξ - ξ_s| < (c + 1) b q_s^-τ`, implied by the two above.
    pub order_bounds: Option<bool>,
    pub passed: bool,
}

/// The growth and gap inequalities at `ξ_s`, `1 <= s < S`.
pub fn truncation_report(x: &SparseDigitNumber, s: usize) -> Result<TruncationCheck> {
    if s == 0 || s >= x.terms() {
        return Err(Error::invalid(format!("s must be in 1..{}, got {s}", x.terms())));
    }
    let (e, e_next) = (x.exponents[s - 1], x.exponents[s]);
    let growth = Rational::frac(e_next as i64, e as i64);
    let growth_bounds = match &x.rule {
        ExponentRule::Power { tau, .. } => {
            // -1 < τ_(s+1) - τ τ_s < τ
            let d = RealExpr::integer(e_next as i64) - tau.clone() * RealExpr::integer(e as i64);
            let lower = certified_sign(&(d.clone() + RealExpr::integer(1)), x.budget())? > 0;
            let upper = certified_sign(&(tau.clone() - d), x.budget())? > 0;
            Some(lower && upper)
        }
        ExponentRule::Factorial => None,
    };
    let q_next = Rational::integer(x.truncations[s].q.clone());
    let tail = x.tail(s)?;
    let scaled_gap = Interval::new(&tail.lo * &q_next, &tail.hi * &q_next);
    let c = Rational::integer(x.coefficient);
    let c1 = &c + &Rational::one();
    let gap_bounds = if scaled_gap.lo > c && scaled_gap.hi < c1 {
        true
    } else if scaled_gap.hi <= c || scaled_gap.lo >= c1 {
        false
    } else {
        return Err(Error::Precision(format!(
            "tail enclosure too wide at s = {s}; use at least {} terms",
            x.terms() + 1
        )));
    };
    let order_bounds = growth_bounds.map(|g| g && gap_bounds);
    Ok(TruncationCheck {
        s,
        growth,
        growth_bounds,
        scaled_gap,
        gap_bounds,
        passed: order_bounds.unwrap_or(gap_bounds),
        order_bounds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationSummary {
    pub checks: Vec<TruncationCheck>,
    /// Smallest `s` from which every check passes.
    pub s_min: Option<usize>,
    /// `q_(s+1)` outgrows every fixed power of `q_s`.
    pub liouville_type: bool,
}

pub fn truncation_summary(x: &SparseDigitNumber) -> Result<TruncationSummary> {
    let checks: Vec<TruncationCheck> = (1..x.terms()).map(|s| truncation_report(x, s)).collect::<Result<_>>()?;
    let s_min = checks.iter().rposition(|c| !c.passed).map_or(Some(1), |i| {
        (i + 1 < checks.len()).then(|| checks[i + 1].s)
    });
    Ok(TruncationSummary {
        checks,
        s_min,
        liouville_type: matches!(x.rule, ExponentRule::Factorial),
    })
}

/// The convergent following `ξ_s` and the bounds
/// `q_s^(τ-1) / 10 < q_* < (b^τ / 2) q_s^(τ-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NextConvergentCheck {
    pub s: usize,
    /// Index of `ξ_s` among the convergents.
    pub index: usize,
    #[serde(serialize_with = "crate::exact::ser::bigint")]
    pub q_star: BigInt,
    /// `log q_* / log q_s`.
    pub log_ratio: Interval,
    pub holds: bool,
}

pub fn next_convergent_check(x: &SparseDigitNumber, cf: &ContinuedFraction, s: usize) -> Result<Option<NextConvergentCheck>> {
    let tau = match &x.rule {
        ExponentRule::Power { tau, .. } => tau.clone(),
        ExponentRule::Factorial => return Err(Error::invalid("no growth exponent for the factorial rule")),
    };
    let t = x.truncation(s)?;
    let Some(index) = cf.position(&t.p, &t.q) else {
        return Ok(None);
    };
    let Some(next) = cf.convergents.get(index) else {
        return Ok(None);
    };
    let (q_s, q_star) = (&t.q, &next.q);
    let holds = match tau.as_rational() {
        Some(r) => {
            // τ - 1 = u / d
            let u_r = r - &Rational::one();
            let (u, d) = (u_r.numer().to_u32(), u_r.denom().to_u32());
            let (u, d) = u.zip(d).ok_or_else(|| Error::Resource("tau too large".into()))?;
            let (tn, b) = (r.numer().to_u32().expect("small"), BigInt::from(x.base));
            let qs_u = q_s.pow(u);
            (q_star * BigInt::from(10)).pow(d) > qs_u && (q_star * BigInt::from(2)).pow(d) < b.pow(tn) * &qs_u
        }
        None => {
            let ln = |v: BigInt| RealExpr::rational(Rational::integer(v)).ln();
            let scaled = (tau.clone() - RealExpr::integer(1)) * ln(q_s.clone());
            let lower = ln(q_star * BigInt::from(10)) - scaled.clone();
            let upper = tau * ln(BigInt::from(x.base)) + scaled - ln(q_star * BigInt::from(2));
            certified_sign(&lower, x.budget())? > 0 && certified_sign(&upper, x.budget())? > 0
        }
    };
    Ok(Some(NextConvergentCheck {
        s,
        index,
        q_star: q_star.clone(),
        log_ratio: ln_int(q_star)?.div(&ln_int(q_s)?, LOG_BITS)?,
        holds,
    }))
}

/// Whether `(τ - 1)(τ + ε - 1) > τ` for all small `ε > 0`, i.e. `(τ - 1)^2 >= τ`,
/// equivalently `τ >= (3 + √5) / 2`.
pub fn exact_order_threshold_met(tau: &Rational) -> bool {
    let t1 = tau - &Rational::one();
    tau > &Rational::one() && &t1 * &t1 >= *tau
}

/// The same test for a real `τ > 1`, decided against the enclosed threshold.
pub fn exact_order_threshold_met_real(tau: &RealExpr, budget: PrecisionBudget) -> Result<bool> {
    if let Some(r) = tau.as_rational() {
        return Ok(exact_order_threshold_met(r));
    }
    let d = tau.clone() - RealExpr::exact_order_threshold();
    decide_with(budget, "exact-order threshold", |bits| {
        let iv = d.eval(bits)?;
        Ok(if iv.lo.is_positive() || iv.is_point() && iv.lo.is_zero() {
            Some(true)
        } else if iv.hi.is_negative() {
            Some(false)
        } else {
            None
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::{build_sparse_number, continued_fraction_expand, rational_expansion, CfInput};

    fn xi3(s: usize) -> SparseDigitNumber {
        build_sparse_number(3, 2, ExponentRule::tau(Rational::integer(3)), s, PrecisionBudget::default()).unwrap()
    }

    #[test]
    fn legendre_examples() {
        let x = xi3(3);
        assert_eq!(legendre_is_convergent(&2.into(), &27.into(), &x.enclosure()).unwrap(), LegendreVerdict::Yes);
        let pt = |n, d| Interval::point(Rational::frac(n, d));
        assert_eq!(legendre_is_convergent(&1.into(), &2.into(), &pt(4999, 10000)).unwrap(), LegendreVerdict::Yes);
        assert_eq!(legendre_is_convergent(&1.into(), &3.into(), &pt(1, 2)).unwrap(), LegendreVerdict::NotImplied);
        assert!(legendre_is_convergent(&2.into(), &4.into(), &pt(1, 2)).is_err());
    }

    #[test]
    fn truncation_examples() {
        let x = xi3(3);
        let c = truncation_report(&x, 1).unwrap();
        assert_eq!(c.growth_bounds, Some(true));
        assert!(c.gap_bounds && c.passed);
        assert_eq!(c.growth, Rational::integer(3));
        // q_2 (ξ - 2/27) = 2 (1 + 3^-18 + ...)
        assert!(c.scaled_gap.lo > Rational::integer(2) && c.scaled_gap.hi < Rational::frac(2001, 1000));
        // exact integer form of the growth bound
        assert!(BigInt::from(6561) < BigInt::from(19683) && BigInt::from(19683) < BigInt::from(531441));

        let f = build_sparse_number(3, 2, ExponentRule::Factorial, 5, PrecisionBudget::default()).unwrap();
        let sum = truncation_summary(&f).unwrap();
        assert!(sum.liouville_type);
        assert_eq!(sum.checks[2].growth, Rational::integer(4));
        assert!(sum.checks.iter().all(|c| c.growth_bounds.is_none()));
    }

    #[test]
    fn gap_bounds_with_small_gaps() {
        // exponents 1, 2, 4, 9, 20: q_2 |ξ - ξ_1| = 2 + 2/9 + ... stays below 3
        let r = ExponentRule::power(Rational::frac(21, 10), Rational::frac(1, 2));
        let x = build_sparse_number(3, 2, r.clone(), 5, PrecisionBudget::default()).unwrap();
        assert_eq!(x.exponents, vec![1, 2, 4, 9, 20]);
        let sum = truncation_summary(&x).unwrap();
        assert!(sum.checks.iter().all(|c| c.passed));
        assert_eq!(sum.s_min, Some(1));
        // base 5, coefficient 4: 4 + 4/25 + ... < 5
        let y = build_sparse_number(5, 4, r, 5, PrecisionBudget::default()).unwrap();
        assert!(truncation_report(&y, 1).unwrap().gap_bounds);
    }

    #[test]
    fn exponent_estimates() {
        let b = PrecisionBudget::default();
        let x = xi3(5);
        let cf = continued_fraction_expand(&CfInput::Sparse(x, 0), 10_000, b).unwrap();
        let e = irrationality_exponent_estimate(&cf).unwrap();
        assert!(e.estimate.lo >= Rational::frac(29, 10) && e.estimate.hi <= Rational::frac(31, 10));

        let g = continued_fraction_expand(&CfInput::Expr(RealExpr::golden()), 30, b).unwrap();
        let e = irrationality_exponent_estimate(&g).unwrap();
        // oracle: q_n = F_(n+1), burn-in q_n^4 >= q_30
        let fib: Vec<f64> = (0..32).scan((0.0f64, 1.0f64), |st, _| {
            *st = (st.1, st.0 + st.1);
            Some(st.0)
        }).collect();
        let q = |n: usize| fib[n];
        let first = (1..30).find(|&n| q(n) >= 2.0 && q(n).powi(4) >= q(30)).unwrap();
        let oracle = (first..30).map(|n| q(n + 1).ln() / q(n).ln()).fold(0.0, f64::max) + 1.0;
        assert_eq!(e.burn_in, first);
        assert!((e.estimate.midpoint().to_f64() - oracle).abs() < 1e-9, "{oracle}");
        assert!(e.estimate.lo > Rational::integer(2));

        assert!(irrationality_exponent_estimate(&rational_expansion(&Rational::frac(1, 3), 5).unwrap()).is_err());
    }

    #[test]
    fn next_convergents() {
        let x = xi3(5);
        let cf = continued_fraction_expand(&CfInput::Sparse(x.clone(), 0), 10_000, PrecisionBudget::default()).unwrap();
        for s in 1..=4 {
            let c = next_convergent_check(&x, &cf, s).unwrap().expect("convergent present");
            assert!(c.holds, "s = {s}");
        }
    }

    #[test]
    fn threshold() {
        assert!(exact_order_threshold_met(&Rational::integer(3)));
        assert!(!exact_order_threshold_met(&Rational::frac(11, 5)));
        assert!(exact_order_threshold_met(&Rational::frac(2619, 1000)));
        assert!(!exact_order_threshold_met(&Rational::frac(2618, 1000)));
        let b = PrecisionBudget::default();
        assert!(exact_order_threshold_met_real(&RealExpr::exact_order_threshold(), PrecisionBudget::with_steps(6)).is_err());
        assert!(!exact_order_threshold_met_real(&(RealExpr::golden() + RealExpr::rational(Rational::frac(19, 10))), b).unwrap());
        assert!(exact_order_threshold_met_real(&RealExpr::integer(7).sqrt(), b).unwrap());
    }
}
