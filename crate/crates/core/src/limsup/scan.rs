use rayon::prelude::*;
use serde::Serialize;

use super::layer::{build_layer_with, layer_measure, pairwise_measure, Layer, WindowConfig};
use super::psi::ApproxFunction;
use crate::cantor::{measure_of_union, merge_intervals, CantorMeasureValue, MissingDigitSet, DEFAULT_MAX_ITEMS};
use crate::error::{Error, Result};
use crate::exact::{Interval, PrecisionBudget, Rational};

/// Runs `f` on a pool of `workers` threads (at least one).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Options shared by the multi-layer computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanOptions {
    pub coprime: bool,
    pub workers: usize,
    pub max_items: usize,
    pub budget: PrecisionBudget,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            coprime: true,
            workers: 1,
            max_items: DEFAULT_MAX_ITEMS,
            budget: PrecisionBudget::default(),
        }
    }
}

/// Layers `1..=n_max`, built in parallel, returned in level order.
pub fn build_layers(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    cfg: &WindowConfig,
    n_max: u32,
    opts: ScanOptions,
) -> Result<Vec<Layer>> {
    with_workers(opts.workers, || {
        (1..=n_max)
            .into_par_iter()
            .map(|n| build_layer_with(set, psi, n, cfg, opts.coprime, opts.max_items, opts.budget))
            .collect::<Result<Vec<_>>>()
    })?
}

/// Which half of the quasi-independence argument a pair falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairCase {
    /// `b^-n >= 2 Ψ(b^m)`: the layers cannot meet in positive measure.
    #[serde(rename = "i")]
    Disjoint,
    /// `b^-n < 2 Ψ(b^m)`: overlap controlled by counting.
    #[serde(rename = "ii")]
    Counting,
    /// Neither could be certified from the radius bounds.
    #[serde(rename = "unknown")]
    Unknown,
}

impl PairCase {
    pub fn label(&self) -> &'static str {
        match self {
            PairCase::Disjoint => "i",
            PairCase::Counting => "ii",
            PairCase::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub m: u32,
    pub n: u32,
    pub case: PairCase,
    /// `m <= t0`, outside the range the argument needs.
    pub below_t0: bool,
    pub mu_m: CantorMeasureValue,
    pub mu_n: CantorMeasureValue,
    pub mu_mn: CantorMeasureValue,
    /// `μ(A_m ∩ A_n) μ(B) / (μ(A_m) μ(A_n))`; absent when a layer is null.
    pub rho: Option<Interval>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiScan {
    pub t0: u32,
    pub mu_window: CantorMeasureValue,
    pub pairs: Vec<PairReport>,
    /// Pairs skipped because one of the layers has measure zero.
    pub skipped: Vec<(u32, u32)>,
    /// Largest certified upper bound of `ρ` over all pairs.
    pub empirical_c: Option<Rational>,
    /// The same maximum restricted to pairs with `m > t0`.
    pub empirical_c_above_t0: Option<Rational>,
}

fn ratio(num: &CantorMeasureValue, den_a: &CantorMeasureValue, den_b: &CantorMeasureValue, mu_b: &CantorMeasureValue) -> Option<Interval> {
    if !den_a.lo.is_positive() || !den_b.lo.is_positive() {
        return None;
    }
    Some(Interval::new(
        &num.lo * &mu_b.lo / (&den_a.hi * &den_b.hi),
        &num.hi * &mu_b.hi / (&den_a.lo * &den_b.lo),
    ))
}

/// The exact ratios `ρ_{m,n}` for all `1 <= m < n <= n_max`.
pub fn quasi_independence_scan(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    cfg: &WindowConfig,
    n_max: u32,
    opts: ScanOptions,
) -> Result<QuasiScan> {
    if n_max < 2 {
        return Err(Error::invalid("quasi-independence scan needs n_max >= 2"));
    }
    let layers = build_layers(set, psi, cfg, n_max, opts)?;
    let mu_b = cfg.measure(set);
    let measures: Vec<CantorMeasureValue> = with_workers(opts.workers, || layers.par_iter().map(layer_measure).collect())?;
    let pairs: Vec<(u32, u32)> = (1..n_max).flat_map(|m| (m + 1..=n_max).map(move |n| (m, n))).collect();
    let reports = with_workers(opts.workers, || {
        pairs
            .par_iter()
            .map(|&(m, n)| -> Result<PairReport> {
                let (lm, ln) = (&layers[m as usize - 1], &layers[n as usize - 1]);
                let gap = Rational::integer(set.base()).pow(-(n as i64));
                let case = if gap >= &lm.radius.outer * Rational::integer(2) {
                    PairCase::Disjoint
                } else if gap < &lm.radius.inner * Rational::integer(2) {
                    PairCase::Counting
                } else {
                    PairCase::Unknown
                };
                let mu_mn = pairwise_measure(lm, ln)?;
                let (mu_m, mu_n) = (measures[m as usize - 1].clone(), measures[n as usize - 1].clone());
                Ok(PairReport {
                    m,
                    n,
                    case,
                    below_t0: m <= cfg.t0,
                    rho: ratio(&mu_mn, &mu_m, &mu_n, &mu_b),
                    mu_m,
                    mu_n,
                    mu_mn,
                })
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let skipped = reports.iter().filter(|r| r.rho.is_none()).map(|r| (r.m, r.n)).collect();
    let max_over = |above: bool| {
        reports
            .iter()
            .filter(|r| !above || !r.below_t0)
            .filter_map(|r| r.rho.as_ref().map(|x| x.hi.clone()))
            .max()
    };
    Ok(QuasiScan {
        t0: cfg.t0,
        mu_window: mu_b,
        empirical_c: max_over(false),
        empirical_c_above_t0: max_over(true),
        skipped,
        pairs: reports,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BorelCantelli {
    pub q: u32,
    /// `(Σ μ(E_s))^2 / Σ_{s,t} μ(E_s ∩ E_t)`.
    pub ratio: Interval,
    /// `μ(E_1 ∪ ... ∪ E_Q)`.
    pub union_measure: CantorMeasureValue,
    pub mu_window: CantorMeasureValue,
    /// Whether `ratio <= μ(union) <= μ(B)` was certified.
    pub bound_holds: bool,
}

/// The second-moment ratio for `E_s = A*_s(B)`, `s = 1..=Q`.
pub fn borel_cantelli_ratio(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    cfg: &WindowConfig,
    q: u32,
    opts: ScanOptions,
) -> Result<BorelCantelli> {
    if q == 0 {
        return Err(Error::invalid("Q must be at least 1"));
    }
    let layers = build_layers(set, psi, cfg, q, opts)?;
    let singles: Vec<CantorMeasureValue> = layers.iter().map(layer_measure).collect();
    let pairs: Vec<(usize, usize)> = (0..layers.len())
        .flat_map(|s| (s + 1..layers.len()).map(move |t| (s, t)))
        .collect();
    let cross: Vec<CantorMeasureValue> = with_workers(opts.workers, || {
        pairs
            .par_iter()
            .map(|&(s, t)| pairwise_measure(&layers[s], &layers[t]))
            .collect::<Result<Vec<_>>>()
    })??;
    let sum: CantorMeasureValue = singles.iter().cloned().sum();
    let doubled: CantorMeasureValue = cross.into_iter().sum::<CantorMeasureValue>().scale(&Rational::integer(2));
    let den = sum.clone() + doubled;
    if !den.hi.is_positive() {
        return Err(Error::UndefinedRatio("every layer has measure zero".into()));
    }
    if !den.lo.is_positive() {
        return Err(Error::Precision("denominator not certified positive".into()));
    }
    let ratio = Interval::new(&sum.lo * &sum.lo / &den.hi, &sum.hi * &sum.hi / &den.lo);
    let union_of = |outer: bool| {
        let all = layers.iter().flat_map(|l| l.balls(outer)).collect();
        measure_of_union(set, &merge_intervals(all))
    };
    let union_measure = if layers.iter().all(|l| l.radius.exact) {
        union_of(false)
    } else {
        CantorMeasureValue::bounds(union_of(false).lo, union_of(true).hi)
    };
    let mu_window = cfg.measure(set);
    let bound_holds = ratio.hi <= union_measure.lo && union_measure.hi <= mu_window.lo;
    Ok(BorelCantelli {
        q,
        ratio,
        union_measure,
        mu_window,
        bound_holds,
    })
}
