use num_bigint::BigInt;
use serde_json::{json, Value};

use super::config::{PointSpec, RunConfig};
use super::report::{Cell, Table};
use super::Command;
use crate::cantor::{cantor_measure, full_cover_check, DEFAULT_MAX_ITEMS};
use crate::error::{Error, Result};
use crate::exact::Interval;
use crate::explicit::{
    build_sparse_number, cf_prefix_interval, continued_fraction_expand, exact_order_threshold_met_real,
    exclusion_check, irrationality_exponent_estimate, legendre_is_convergent, next_convergent_check,
    truncation_summary, CfInput, ContinuedFraction, ExponentRule, LegendreVerdict, SparseDigitNumber,
};
use crate::limsup::{
    borel_cantelli_ratio, box_dimension_estimate, build_layer_with, layer_comparator, layer_measure,
    natural_cover_tail, pairwise_measure, quasi_independence_scan, series_classify, Layer, PsiKind, ScanOptions,
    WindowConfig,
};

/// Convergents requested when expanding a sparse-digit number; the session
/// stops earlier once the enclosure no longer determines the next quotient.
const XI_CF_DEPTH: usize = 10_000;

/// Longest prefix tried by the exclusion check.
const EXCLUSION_MAX_PREFIX: usize = 16;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn window_config(cfg: &RunConfig) -> Result<WindowConfig> {
    WindowConfig::new(cfg.set.base(), cfg.window.clone())
}

fn scan_options(cfg: &RunConfig) -> ScanOptions {
    ScanOptions {
        coprime: cfg.coprime,
        workers: cfg.workers,
        budget: cfg.budget,
        ..ScanOptions::default()
    }
}

fn level(cfg: &RunConfig, default: u32) -> u32 {
    cfg.n.unwrap_or(default)
}

fn layer(cfg: &RunConfig, n: u32) -> Result<Layer> {
    build_layer_with(&cfg.set, &cfg.psi, n, &window_config(cfg)?, cfg.coprime, DEFAULT_MAX_ITEMS, cfg.budget)
}

fn xi(cfg: &RunConfig) -> Result<SparseDigitNumber> {
    build_sparse_number(cfg.set.base(), cfg.coef, cfg.rule.clone(), cfg.s, cfg.budget)
}

fn point_cf(cfg: &RunConfig, depth: usize) -> Result<(ContinuedFraction, Value)> {
    let x = cfg.x.as_ref().ok_or_else(|| Error::invalid("this command needs --x"))?;
    match x {
        PointSpec::Exact(r) => Ok((continued_fraction_expand(&CfInput::Exact(r.clone()), depth, cfg.budget)?, json!(r))),
        PointSpec::Real(e) => Ok((continued_fraction_expand(&CfInput::Expr(e.clone()), depth, cfg.budget)?, to_value(e))),
        PointSpec::Xi => {
            let number = xi(cfg)?;
            let cf = continued_fraction_expand(&CfInput::Sparse(number.clone(), 0), depth, cfg.budget)?;
            Ok((cf, to_value(&number)))
        }
    }
}

fn cf_table(cf: &ContinuedFraction) -> Table {
    let mut t = Table::new(&["n", "a_n", "p_n", "q_n"]);
    for (i, (a, c)) in cf.quotients.iter().zip(&cf.convergents).enumerate() {
        t.push(vec![Cell::text(i + 1), Cell::text(a), Cell::text(&c.p), Cell::text(&c.q)]);
    }
    t
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<(Value, Table)> {
    match cmd {
        Command::Measure => {
            let mu = cantor_measure(&cfg.set, &cfg.window);
            let mut t = Table::new(&["window_lo", "window_hi", "measure"]);
            t.push(vec![Cell::Rat(cfg.window.lo().clone()), Cell::Rat(cfg.window.hi().clone()), Cell::measure(&mu)]);
            Ok((json!({"window": cfg.window, "measure": mu}), t))
        }
        Command::Layer => {
            let n = level(cfg, 2);
            let l = layer(cfg, n)?;
            let mu = layer_measure(&l);
            let comparator = match &cfg.psi.kind {
                PsiKind::Power { tau } if cfg.psi.truncation.is_none() => {
                    Some(layer_comparator(&cfg.set, tau, n, &window_config(cfg)?, cfg.budget)?)
                }
                _ => None,
            };
            let ratio = comparator
                .as_ref()
                .filter(|c| c.lo.is_positive())
                .map(|c| Interval::new(&mu.lo / &c.hi, &mu.hi / &c.lo));
            let mut t = Table::new(&["p", "center", "ball_lo", "ball_hi"]);
            for (i, p) in l.centers.iter().enumerate() {
                let c = l.center(i);
                let r = &l.radius.inner;
                t.push(vec![Cell::text(p), Cell::Rat(c.clone()), Cell::Rat(&c - r), Cell::Rat(&c + r)]);
            }
            Ok((json!({"layer": l, "measure": mu, "comparator": comparator, "ratio": ratio}), t))
        }
        Command::Pairwise => {
            let n = level(cfg, 2);
            let m = cfg.m.unwrap_or(1);
            if m == 0 || m >= n {
                return Err(Error::invalid(format!("pairwise needs 1 <= m < n, got m = {m}, n = {n}")));
            }
            let (a, b) = (layer(cfg, m)?, layer(cfg, n)?);
            let (mu_m, mu_n, mu_mn) = (layer_measure(&a), layer_measure(&b), pairwise_measure(&a, &b)?);
            let mut t = Table::new(&["m", "n", "mu_m", "mu_n", "mu_mn"]);
            t.push(vec![Cell::text(m), Cell::text(n), Cell::measure(&mu_m), Cell::measure(&mu_n), Cell::measure(&mu_mn)]);
            Ok((json!({"m": m, "n": n, "mu_m": mu_m, "mu_n": mu_n, "mu_mn": mu_mn}), t))
        }
        Command::QuasiScan => {
            let scan = quasi_independence_scan(&cfg.set, &cfg.psi, &window_config(cfg)?, cfg.n_max, scan_options(cfg))?;
            let mut t = Table::new(&["m", "n", "case", "mu_m", "mu_n", "mu_mn", "rho"]);
            for p in &scan.pairs {
                t.push(vec![
                    Cell::text(p.m),
                    Cell::text(p.n),
                    Cell::text(p.case.label()),
                    Cell::measure(&p.mu_m),
                    Cell::measure(&p.mu_n),
                    Cell::measure(&p.mu_mn),
                    Cell::opt_iv(&p.rho),
                ]);
            }
            Ok((to_value(&scan), t))
        }
        Command::Series => {
            let v = series_classify(&cfg.set, &cfg.psi, &cfg.f, cfg.n_max, cfg.budget)?;
            let mut t = Table::new(&["n", "partial_sum"]);
            for (i, s) in v.partial_sums.iter().enumerate() {
                t.push(vec![Cell::text(i + 1), Cell::Iv(s.clone())]);
            }
            Ok((to_value(&v), t))
        }
        Command::Tail => {
            let v = natural_cover_tail(&cfg.set, &cfg.psi, &cfg.f, cfg.n0, cfg.n_max, cfg.budget)?;
            let mut t = Table::new(&["k", "tail"]);
            for (i, s) in v.sequence.iter().enumerate() {
                t.push(vec![Cell::text(cfg.n0 as usize + i), Cell::Iv(s.clone())]);
            }
            Ok((to_value(&v), t))
        }
        Command::BcRatio => {
            let v = borel_cantelli_ratio(&cfg.set, &cfg.psi, &window_config(cfg)?, cfg.q, scan_options(cfg))?;
            let mut t = Table::new(&["Q", "ratio", "union_measure", "mu_window", "bound_holds"]);
            t.push(vec![
                Cell::text(v.q),
                Cell::Iv(v.ratio.clone()),
                Cell::measure(&v.union_measure),
                Cell::measure(&v.mu_window),
                Cell::text(v.bound_holds),
            ]);
            Ok((to_value(&v), t))
        }
        Command::DimEstimate => {
            let tau = match (&cfg.psi.kind, &cfg.psi.truncation) {
                (PsiKind::Power { tau }, None) => tau.as_rational(),
                _ => None,
            }
            .ok_or_else(|| Error::invalid("dim-estimate needs --psi pow:TAU with a rational TAU"))?;
            let levels: Vec<u32> = match cfg.n {
                Some(n) => vec![n],
                None => (1..=cfg.n_max).collect(),
            };
            let rows = levels
                .iter()
                .map(|&n| box_dimension_estimate(&cfg.set, &tau, n, cfg.coprime, cfg.budget))
                .collect::<Result<Vec<_>>>()?;
            let mut t = Table::new(&["n", "tau", "level", "count", "estimate", "target", "equals_target"]);
            for r in &rows {
                t.push(vec![
                    Cell::text(r.n),
                    Cell::Rat(r.tau.clone()),
                    Cell::text(r.level),
                    Cell::text(&r.count),
                    Cell::Iv(r.estimate.clone()),
                    Cell::Iv(r.target.clone()),
                    Cell::text(r.equals_target),
                ]);
            }
            Ok((json!({"estimates": rows}), t))
        }
        Command::XiBuild => {
            let x = xi(cfg)?;
            let membership = x.membership_in(&cfg.set);
            let mut t = Table::new(&["s", "tau_s", "p_s", "q_s"]);
            for (i, (e, tr)) in x.exponents.iter().zip(&x.truncations).enumerate() {
                t.push(vec![Cell::text(i + 1), Cell::text(e), Cell::text(&tr.p), Cell::text(&tr.q)]);
            }
            let depth = *x.exponents.last().expect("at least two terms");
            Ok((
                json!({"number": x, "enclosure": x.enclosure(), "membership": membership, "membership_depth": depth}),
                t,
            ))
        }
        Command::XiVerify => xi_verify(cfg),
        Command::Cf => {
            let (cf, x) = point_cf(cfg, cfg.depth as usize)?;
            let t = cf_table(&cf);
            Ok((json!({"x": x, "expansion": cf}), t))
        }
        Command::Exponent => {
            let depth = if matches!(cfg.x, Some(PointSpec::Xi)) { XI_CF_DEPTH } else { cfg.depth as usize };
            let (cf, x) = point_cf(cfg, depth)?;
            let est = irrationality_exponent_estimate(&cf)?;
            let mut t = Table::new(&["estimate", "witness_n", "window", "burn_in"]);
            t.push(vec![
                Cell::Iv(est.estimate.clone()),
                Cell::text(est.witness.n),
                Cell::text(est.window),
                Cell::text(est.burn_in),
            ]);
            Ok((json!({"x": x, "quotients_used": cf.len(), "estimate": est}), t))
        }
        Command::CfInterval => {
            let mut results = serde_json::Map::new();
            let mut t = Table::new(&["quotients", "lo", "hi", "lo_closed", "hi_closed", "disjoint"]);
            if let Some(q) = &cfg.quotients {
                let iv = cf_prefix_interval(q)?;
                let disjoint = iv.disjoint_from(&cfg.set, cfg.depth);
                t.push(vec![
                    Cell::text(q.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")),
                    Cell::Rat(iv.lo.clone()),
                    Cell::Rat(iv.hi.clone()),
                    Cell::text(iv.lo_closed),
                    Cell::text(iv.hi_closed),
                    Cell::text(disjoint),
                ]);
                results.insert("interval".into(), to_value(&iv));
                results.insert("disjoint".into(), json!(disjoint));
            }
            match &cfg.x {
                Some(PointSpec::Real(e)) => {
                    let v = exclusion_check(e, &cfg.set, cfg.depth, EXCLUSION_MAX_PREFIX, cfg.budget)?;
                    results.insert("verdict".into(), json!(v.verdict));
                    results.insert("exclusion".into(), to_value(&v));
                }
                Some(_) => return Err(Error::invalid("cf-interval --x takes an irrational constant such as golden")),
                None if cfg.quotients.is_none() => {
                    return Err(Error::invalid("cf-interval needs --quotients or --x"));
                }
                None => {}
            }
            results.insert("depth".into(), json!(cfg.depth));
            Ok((Value::Object(results), t))
        }
        Command::FullCover => {
            let levels: Vec<u32> = match cfg.n {
                Some(n) => vec![n],
                None => (1..=cfg.n_max).collect(),
            };
            let mut t = Table::new(&["n", "holds"]);
            let mut rows = Vec::new();
            for n in levels {
                let holds = full_cover_check(&cfg.set, n, &cfg.window)?;
                t.push(vec![Cell::text(n), Cell::text(holds)]);
                rows.push(json!({"n": n, "holds": holds}));
            }
            Ok((json!({"window": cfg.window, "checks": rows}), t))
        }
    }
}

fn xi_verify(cfg: &RunConfig) -> Result<(Value, Table)> {
    let x = xi(cfg)?;
    let summary = truncation_summary(&x)?;
    let cf = continued_fraction_expand(&CfInput::Sparse(x.clone(), 0), XI_CF_DEPTH, cfg.budget)?;
    let enclosure = x.enclosure();
    let mut legendre = Vec::new();
    for tr in &x.truncations {
        let verdict = legendre_is_convergent(&tr.p, &tr.q, &enclosure)?;
        legendre.push(json!({
            "legendre": verdict,
            "convergent_index": cf.position(&tr.p, &tr.q),
        }));
    }
    let next = (1..x.terms())
        .map(|s| next_convergent_check(&x, &cf, s))
        .collect::<Result<Vec<_>>>()?;
    let estimate = irrationality_exponent_estimate(&cf)?;
    let threshold = match &x.rule {
        ExponentRule::Power { tau, .. } => Some(exact_order_threshold_met_real(tau, cfg.budget)?),
        ExponentRule::Factorial => None,
    };
    let membership = x.membership_in(&cfg.set);
    let mut t = Table::new(&[
        "s",
        "growth",
        "growth_bounds",
        "gap_bounds",
        "order_bounds",
        "passed",
        "legendre",
        "convergent_index",
        "next_convergent_holds",
    ]);
    let opt = |b: Option<bool>| Cell::text(b.map_or(String::new(), |v| v.to_string()));
    for s in 1..=x.terms() {
        let check = summary.checks.iter().find(|c| c.s == s);
        let tr = &x.truncations[s - 1];
        let leg = legendre_is_convergent(&tr.p, &tr.q, &enclosure)?;
        let nx = next.iter().flatten().find(|c| c.s == s);
        t.push(vec![
            Cell::text(s),
            check.map_or_else(|| Cell::text(""), |c| Cell::Rat(c.growth.clone())),
            opt(check.and_then(|c| c.growth_bounds)),
            opt(check.map(|c| c.gap_bounds)),
            opt(check.and_then(|c| c.order_bounds)),
            opt(check.map(|c| c.passed)),
            Cell::text(if leg == LegendreVerdict::Yes { "yes" } else { "not implied" }),
            Cell::text(cf.position(&tr.p, &tr.q).map_or(String::new(), |i| i.to_string())),
            opt(nx.map(|c| c.holds)),
        ]);
    }
    let all_convergents = x.truncations.iter().all(|tr| cf.position(&tr.p, &tr.q).is_some());
    Ok((
        json!({
            "number": x,
            "membership": membership,
            "truncations": summary,
            "legendre": legendre,
            "all_truncations_convergent": all_convergents,
            "next_convergents": next,
            "quotients_certified": cf.certified_depth,
            "exponent_estimate": estimate,
            "exact_order_threshold_met": threshold,
            "enclosure_width": enclosure.width(),
        }),
        t,
    ))
}
