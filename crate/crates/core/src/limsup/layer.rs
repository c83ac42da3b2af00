use num_bigint::BigInt;
use serde::Serialize;

use super::psi::{ApproxFunction, LevelTerm};
use super::sym::SymReal;
use crate::cantor::{
    enumerate_centers, intersect_unions, measure_of_union, merge_intervals, CantorMeasureValue, MissingDigitSet,
    RatInterval, DEFAULT_MAX_ITEMS,
};
use crate::error::{Error, Result};
use crate::exact::{Interval, PrecisionBudget, Rational};

/// Extra base-`b` digits kept when an irrational radius is replaced by
/// b-adic inner and outer radii.
const RADIUS_GUARD_DIGITS: u32 = 24;

/// A window `B` and the smallest `t0` with `b^-t0 < r(B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowConfig {
    pub window: RatInterval,
    pub t0: u32,
}

impl WindowConfig {
    pub fn new(base: u32, window: RatInterval) -> Result<Self> {
        let r = window.radius();
        if !r.is_positive() {
            return Err(Error::invalid("window must have positive length"));
        }
        let b = Rational::integer(base);
        let mut t0 = 0u32;
        let mut scale = Rational::one();
        while scale >= r {
            scale = scale / &b;
            t0 += 1;
        }
        Ok(WindowConfig { window, t0 })
    }

    /// The window `[0, 1]`.
    pub fn unit(base: u32) -> Self {
        Self::new(base, RatInterval::unit()).expect("unit window is valid")
    }

    pub fn measure(&self, set: &MissingDigitSet) -> CantorMeasureValue {
        crate::cantor::cantor_measure(set, &self.window)
    }
}

/// A ball radius, exact or bracketed by b-adic inner and outer radii.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Radius {
    pub exact: bool,
    pub inner: Rational,
    pub outer: Rational,
}

impl Radius {
    pub fn exact(r: Rational) -> Self {
        Radius {
            exact: true,
            inner: r.clone(),
            outer: r,
        }
    }

    /// Radius bounds for `Ψ(b^n)`.
    pub fn of(term: &LevelTerm, set: &MissingDigitSet, budget: PrecisionBudget) -> Result<Self> {
        if let Some(v) = term.exact(set) {
            return Ok(Self::exact(v));
        }
        let iv = term.enclose_certified(set, budget)?;
        // Grid b^-L with L about RADIUS_GUARD_DIGITS digits below the radius.
        let b = BigInt::from(set.base());
        let mut depth = 0u32;
        let mut scaled = iv.lo.clone();
        while scaled < Rational::one() {
            scaled = scaled * Rational::integer(b.clone());
            depth += 1;
        }
        let grid = Rational::integer(b.pow(depth + RADIUS_GUARD_DIGITS));
        let inner = Rational::new((&iv.lo * &grid).floor(), grid.numer().clone()).expect("nonzero");
        let outer = Rational::new((&iv.hi * &grid).ceil(), grid.numer().clone()).expect("nonzero");
        Ok(Radius {
            exact: false,
            inner,
            outer,
        })
    }
}

/// The layer `A*_n(B)`: closed balls of radius `Ψ(b^n)` around the points
/// `p / b^n ∈ K`, clipped to the window.
#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub n: u32,
    pub coprime: bool,
    #[serde(skip)]
    pub set: MissingDigitSet,
    pub window: RatInterval,
    /// Numerators `p` of the centres `p / b^n` whose balls meet the window.
    #[serde(serialize_with = "crate::exact::ser::bigints")]
    pub centers: Vec<BigInt>,
    pub radius: Radius,
    /// Whether `Ψ(b^n) < b^-n / 2` was certified, making the balls disjoint.
    pub disjoint: bool,
}

impl Layer {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    fn scale(&self) -> BigInt {
        BigInt::from(self.set.base()).pow(self.n)
    }

    pub fn center(&self, i: usize) -> Rational {
        Rational::new(self.centers[i].clone(), self.scale()).expect("nonzero")
    }

    fn balls_with(&self, r: &Rational) -> Vec<RatInterval> {
        let scale = self.scale();
        self.centers
            .iter()
            .filter_map(|p| {
                let c = Rational::new(p.clone(), scale.clone()).expect("nonzero");
                RatInterval::ball(&c, r).and_then(|b| b.intersect(&self.window))
            })
            .collect()
    }

    /// Clipped balls, with the inner or outer radius.
    pub fn balls(&self, outer: bool) -> Vec<RatInterval> {
        self.balls_with(if outer { &self.radius.outer } else { &self.radius.inner })
    }

    /// The layer as sorted, pairwise disjoint intervals.
    pub fn union(&self, outer: bool) -> Vec<RatInterval> {
        merge_intervals(self.balls(outer))
    }
}

/// `build_layer` with the default enumeration budget.
pub fn build_layer(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    n: u32,
    cfg: &WindowConfig,
    coprime: bool,
) -> Result<Layer> {
    build_layer_with(set, psi, n, cfg, coprime, DEFAULT_MAX_ITEMS, PrecisionBudget::default())
}

pub fn build_layer_with(
    set: &MissingDigitSet,
    psi: &ApproxFunction,
    n: u32,
    cfg: &WindowConfig,
    coprime: bool,
    max_items: usize,
    budget: PrecisionBudget,
) -> Result<Layer> {
    if n == 0 {
        return Err(Error::invalid("layer level must be at least 1"));
    }
    let radius = Radius::of(&psi.at(set, n, budget)?, set, budget)?;
    let scale = BigInt::from(set.base()).pow(n);
    let half_gap = Rational::new(1, &scale * 2).expect("nonzero");
    let centers = enumerate_centers(set, n, coprime, max_items)?
        .into_iter()
        .filter(|p| {
            let c = Rational::new(p.clone(), scale.clone()).expect("nonzero");
            RatInterval::ball(&c, &radius.outer)
                .and_then(|b| b.intersect(&cfg.window))
                .is_some()
        })
        .collect();
    Ok(Layer {
        n,
        coprime,
        set: set.clone(),
        window: cfg.window.clone(),
        centers,
        disjoint: radius.outer < half_gap,
        radius,
    })
}

fn measure_bounds(set: &MissingDigitSet, inner: &[RatInterval], outer: &[RatInterval]) -> CantorMeasureValue {
    let lo = measure_of_union(set, inner);
    let hi = measure_of_union(set, outer);
    CantorMeasureValue::bounds(lo.lo, hi.hi)
}

/// `μ(A*_n(B))`; overlapping balls are merged first.
pub fn layer_measure(layer: &Layer) -> CantorMeasureValue {
    if layer.radius.exact {
        return measure_of_union(&layer.set, &layer.union(false));
    }
    measure_bounds(&layer.set, &layer.union(false), &layer.union(true))
}

/// `μ(A*_m(B) ∩ A*_n(B))`.
pub fn pairwise_measure(a: &Layer, b: &Layer) -> Result<CantorMeasureValue> {
    if a.set != b.set || a.window != b.window {
        return Err(Error::invalid("layers must share the set and the window"));
    }
    let inner = intersect_unions(&a.union(false), &b.union(false));
    if a.radius.exact && b.radius.exact {
        return Ok(measure_of_union(&a.set, &inner));
    }
    let outer = intersect_unions(&a.union(true), &b.union(true));
    Ok(measure_bounds(&a.set, &inner, &outer))
}

/// Enclosure of the comparator `μ(B) (Ψ(b^n) b^n)^γ*` for `ψ(r) = r^-τ`,
/// i.e. `μ(B) b^(n (1 - τ) γ*)`.
pub fn layer_comparator(
    set: &MissingDigitSet,
    tau: &SymReal,
    n: u32,
    cfg: &WindowConfig,
    budget: PrecisionBudget,
) -> Result<Interval> {
    let e = &(&SymReal::integer(n as i64) * &(&SymReal::integer(1) - tau)) * &SymReal::gamma();
    let iv = LevelTerm::b_power(n, e).enclose_certified(set, budget)?;
    let mu_b = cfg.measure(set);
    Ok(Interval::new(&iv.lo * &mu_b.lo, &iv.hi * &mu_b.hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> MissingDigitSet {
        MissingDigitSet::middle_third()
    }

    fn psi2() -> ApproxFunction {
        ApproxFunction::power(Rational::integer(2))
    }

    fn exact(v: CantorMeasureValue) -> Rational {
        v.value().expect("exact measure").clone()
    }

    fn centers(l: &Layer) -> Vec<i64> {
        l.centers.iter().map(|p| i64::try_from(p).unwrap()).collect()
    }

    #[test]
    fn window_threshold() {
        assert_eq!(WindowConfig::unit(3).t0, 1);
        let w = RatInterval::new(Rational::frac(2, 9), Rational::frac(4, 9)).unwrap();
        // r(B) = 1/9 and 3^-3 < 1/9 = 3^-2
        assert_eq!(WindowConfig::new(3, w).unwrap().t0, 3);
    }

    #[test]
    fn documented_layers() {
        let cfg = WindowConfig::unit(3);
        let l = build_layer(&k(), &psi2(), 1, &cfg, true).unwrap();
        assert_eq!(centers(&l), vec![1, 2]);
        assert_eq!(l.radius.inner, Rational::frac(1, 9));
        assert!(l.disjoint);
        assert_eq!(exact(layer_measure(&l)), Rational::frac(1, 2));

        let l = build_layer(&k(), &psi2(), 1, &cfg, false).unwrap();
        assert_eq!(centers(&l), vec![0, 1, 2, 3]);
        assert_eq!(exact(layer_measure(&l)), Rational::one());

        let l2 = build_layer(&k(), &psi2(), 2, &cfg, true).unwrap();
        assert_eq!(centers(&l2), vec![1, 2, 7, 8]);
        assert_eq!(l2.radius.inner, Rational::frac(1, 81));
        assert_eq!(exact(layer_measure(&l2)), Rational::frac(1, 4));
    }

    #[test]
    fn documented_pairwise() {
        let cfg = WindowConfig::unit(3);
        let l1 = build_layer(&k(), &psi2(), 1, &cfg, true).unwrap();
        let l2 = build_layer(&k(), &psi2(), 2, &cfg, true).unwrap();
        assert_eq!(exact(pairwise_measure(&l1, &l2).unwrap()), Rational::frac(1, 8));
        assert_eq!(pairwise_measure(&l2, &l2).unwrap(), layer_measure(&l2));

        let table = ApproxFunction::table([(1, Rational::frac(1, 100)), (2, Rational::frac(1, 200))]).unwrap();
        let t1 = build_layer(&k(), &table, 1, &cfg, true).unwrap();
        let t2 = build_layer(&k(), &table, 2, &cfg, true).unwrap();
        assert!(pairwise_measure(&t1, &t2).unwrap().is_zero());
    }

    #[test]
    fn irrational_radius_gives_bounds() {
        let cfg = WindowConfig::unit(3);
        let psi = ApproxFunction::power(Rational::frac(3, 2));
        let l = build_layer(&k(), &psi, 1, &cfg, true).unwrap();
        assert!(!l.radius.exact);
        assert!(l.radius.inner < l.radius.outer);
        let m = layer_measure(&l);
        assert!(m.lo <= m.hi);
        // comparator (3^(-1/2))^gamma = 2^(-1/2); ratio near 1
        let c = layer_comparator(&k(), &SymReal::rational(Rational::frac(3, 2)), 1, &cfg, PrecisionBudget::default())
            .unwrap();
        assert!(c.lo < Rational::frac(70711, 100000) && c.hi > Rational::frac(70710, 100000));
    }
}
