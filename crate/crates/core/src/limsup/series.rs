use serde::Serialize;

use super::psi::{ApproxFunction, DimensionFunction, DimensionKind, LevelTerm, PsiKind};
use super::sym::SymReal;
use crate::cantor::{center_count, MissingDigitSet};
use crate::error::{Error, Result};
use crate::exact::{Interval, PrecisionBudget, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Convergent,
    Divergent,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prediction {
    MeasureZero,
    MeasureFull,
    NotApplicable,
}

impl From<Verdict> for Prediction {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Convergent => Prediction::MeasureZero,
            Verdict::Divergent => Prediction::MeasureFull,
            Verdict::Undetermined => Prediction::NotApplicable,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesVerdict {
    /// `S_N = Σ_{n<=N} f(Ψ(b^n)) b^(n γ*)` for `N = 1..=N_max`.
    pub partial_sums: Vec<Interval>,
    /// Whether every partial sum is an exact rational.
    pub exact: bool,
    pub verdict: Verdict,
    pub prediction: Prediction,
    /// How the verdict was reached.
    pub rule: String,
}

/// The `n`-th series term `f(Ψ(b^n)) b^(n γ*)`.
pub(crate) fn series_term(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    f: &DimensionFunction,
    n: u32,
    budget: PrecisionBudget,
) -> Result<LevelTerm> {
    let grow = LevelTerm::b_power(n, &SymReal::gamma() * &Rational::integer(n));
    Ok(f.apply(&psi.at(set, n, budget)?)?.mul(&grow))
}

fn accumulate(terms: impl Iterator<Item = Result<LevelTerm>>, set: &MissingDigitSet, budget: PrecisionBudget) -> Result<(Vec<Interval>, bool)> {
    let mut sums = Vec::new();
    let mut acc = Interval::point(Rational::zero());
    let mut exact = true;
    for t in terms {
        let t = t?;
        let iv = t.enclose_certified(set, budget)?;
        exact &= iv.is_point();
        acc = Interval::new(&acc.lo + &iv.lo, &acc.hi + &iv.hi);
        sums.push(acc.clone());
    }
    Ok((sums, exact))
}

/// Analytic verdict for the power-law families:
/// the term is `b^(n e) (n ln b)^(-β s)` with `e = γ* - s α`.
fn analytic_verdict(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    s: &SymReal,
    budget: PrecisionBudget,
) -> Result<Option<(Verdict, String)>> {
    let eff = psi.effective(set, budget)?;
    let (alpha, beta) = match &eff.kind {
        PsiKind::Power { tau } => (tau.clone(), SymReal::zero()),
        PsiKind::PowerLog { alpha, log_exponent } => (alpha.clone(), log_exponent.clone()),
        PsiKind::Table(_) => return Ok(None),
    };
    let e = &SymReal::gamma() - &(s * &alpha);
    let sign = e.sign(set, budget)?;
    let bs = &beta * s;
    Ok(Some(match sign {
        -1 => (Verdict::Convergent, format!("geometric ratio b^({e}) < 1")),
        1 => (Verdict::Divergent, format!("geometric ratio b^({e}) > 1")),
        _ if bs.is_zero() => (Verdict::Divergent, "constant terms".to_string()),
        _ => {
            let above_one = (&bs - &SymReal::integer(1)).sign(set, budget)?;
            if above_one > 0 {
                (Verdict::Convergent, format!("terms ~ n^-({bs}), exponent > 1 (integral test)"))
            } else {
                (Verdict::Divergent, format!("terms ~ n^-({bs}), exponent <= 1 (integral test)"))
            }
        }
    }))
}

/// The convergence/divergence test deciding the measure of `W(ψ) ∩ K`.
pub fn series_classify(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    f: &DimensionFunction,
    n_max: u32,
    budget: PrecisionBudget,
) -> Result<SeriesVerdict> {
    if !f.monotonicity_witness {
        return Err(Error::HypothesisViolation(
            "r^-gamma f(r) must be monotonic; no witness supplied".into(),
        ));
    }
    if n_max == 0 {
        return Err(Error::invalid("N_max must be at least 1"));
    }
    if let DimensionKind::Power(s) = &f.kind {
        if s.sign(set, budget)? <= 0 {
            return Err(Error::invalid(format!("dimension exponent {s} must be positive")));
        }
    }
    let (partial_sums, exact) = accumulate((1..=n_max).map(|n| series_term(set, psi, f, n, budget)), set, budget)?;
    let analytic = match &f.kind {
        DimensionKind::Power(s) => analytic_verdict(set, psi, s, budget)?,
        DimensionKind::Table(_) => None,
    };
    let (verdict, rule) =
        analytic.unwrap_or((Verdict::Undetermined, "finite data: no verdict beyond the table".to_string()));
    Ok(SeriesVerdict {
        partial_sums,
        exact,
        prediction: verdict.into(),
        verdict,
        rule,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalCoverTail {
    pub n0: u32,
    pub n_max: u32,
    /// `T(n0) = Σ_{n0<=n<=N_max} f(Ψ(b^n)) #{p : p/b^n ∈ K}`.
    pub value: Interval,
    /// `T(k)` for `k = n0..=N_max`.
    pub sequence: Vec<Interval>,
    pub exact: bool,
    pub verdict: Verdict,
    /// Both bounds of each `T(k)` dominate those of `T(k + 1)`.
    pub non_increasing: bool,
}

/// The natural-cover bound on `H^f` of the limsup set from level `n0` on.
pub fn natural_cover_tail(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    f: &DimensionFunction,
    n0: u32,
    n_max: u32,
    budget: PrecisionBudget,
) -> Result<NaturalCoverTail> {
    if n0 == 0 || n0 > n_max {
        return Err(Error::invalid(format!("need 1 <= n0 <= N_max, got n0 = {n0}, N_max = {n_max}")));
    }
    let terms: Vec<Interval> = (n0..=n_max)
        .map(|n| {
            let count = Rational::integer(center_count(set, n));
            let t = f.apply(&psi.at(set, n, budget)?)?.scale(&count);
            t.enclose_certified(set, budget)
        })
        .collect::<Result<_>>()?;
    let mut sequence = Vec::with_capacity(terms.len());
    let mut acc = Interval::point(Rational::zero());
    for t in terms.iter().rev() {
        acc = Interval::new(&acc.lo + &t.lo, &acc.hi + &t.hi);
        sequence.push(acc.clone());
    }
    sequence.reverse();
    let exact = sequence.iter().all(Interval::is_point);
    let non_increasing = sequence.windows(2).all(|w| w[0].lo >= w[1].lo && w[0].hi >= w[1].hi);
    let verdict = match &f.kind {
        DimensionKind::Power(s) => analytic_verdict(set, psi, s, budget)?.map_or(Verdict::Undetermined, |v| v.0),
        DimensionKind::Table(_) => Verdict::Undetermined,
    };
    Ok(NaturalCoverTail {
        n0,
        n_max,
        value: sequence[0].clone(),
        sequence,
        exact,
        verdict,
        non_increasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> MissingDigitSet {
        MissingDigitSet::middle_third()
    }

    fn budget() -> PrecisionBudget {
        PrecisionBudget::default()
    }

    fn gamma_over(a: i64) -> SymReal {
        &SymReal::gamma() * &Rational::frac(1, a)
    }

    #[test]
    fn psi1_terms_are_one() {
        let v = series_classify(
            &k(),
            &ApproxFunction::power(Rational::integer(3)),
            &DimensionFunction::power(gamma_over(3)),
            20,
            budget(),
        )
        .unwrap();
        assert!(v.exact);
        for (i, s) in v.partial_sums.iter().enumerate() {
            assert_eq!(s, &Interval::point(Rational::integer(i as i64 + 1)));
        }
        assert_eq!(v.verdict, Verdict::Divergent);
        assert_eq!(v.prediction, Prediction::MeasureFull);
    }

    #[test]
    fn psi2_converges() {
        let psi = ApproxFunction::power_log(Rational::integer(3), SymReal::monomial(Rational::integer(6), -1));
        let v = series_classify(&k(), &psi, &DimensionFunction::power(gamma_over(3)), 10, budget()).unwrap();
        assert_eq!(v.verdict, Verdict::Convergent);
        assert!(!v.exact);
        // first term 1 / (ln 3)^2 = 0.8285...
        let t1 = &v.partial_sums[0];
        assert!(t1.lo > Rational::frac(8285, 10000) && t1.hi < Rational::frac(8286, 10000));
    }

    #[test]
    fn geometric_example() {
        let v = series_classify(
            &k(),
            &ApproxFunction::power(Rational::integer(2)),
            &DimensionFunction::power(SymReal::gamma()),
            6,
            budget(),
        )
        .unwrap();
        assert_eq!(v.verdict, Verdict::Convergent);
        assert_eq!(v.partial_sums[5], Interval::point(Rational::frac(63, 64)));
    }

    #[test]
    fn missing_witness_is_rejected() {
        let f = DimensionFunction::table([(1, Rational::one())], false).unwrap();
        let r = series_classify(&k(), &ApproxFunction::power(Rational::integer(2)), &f, 1, budget());
        assert!(matches!(r, Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn tail_closed_form() {
        let t = natural_cover_tail(
            &k(),
            &ApproxFunction::power(Rational::integer(2)),
            &DimensionFunction::power(SymReal::gamma()),
            3,
            10,
            budget(),
        )
        .unwrap();
        // Σ_{n=3}^{10} 2^(n+1) 4^-n = 2^(2-3) - 2^(1-10)
        assert_eq!(t.value, Interval::point(Rational::frac(1, 2) - Rational::frac(1, 512)));
        assert!(t.non_increasing);
        assert_eq!(t.sequence.len(), 8);
        assert_eq!(t.sequence[7], Interval::point(Rational::frac(2, 1024)));
    }
}
