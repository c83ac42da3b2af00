//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cantor_approx::calibration;
use cantor_approx::cantor::{cantor_measure, full_cover_check, membership, Membership, MissingDigitSet, Point, RatInterval};
use cantor_approx::exact::{enclose_real, Interval};
use cantor_approx::explicit::{
    build_sparse_number, cf_prefix_interval, continued_fraction_expand, exclusion_check,
    irrationality_exponent_estimate, legendre_is_convergent, truncation_summary, CfInput, ContinuedFraction,
    ExponentRule, LegendreVerdict,
};
use cantor_approx::limsup::{
    borel_cantelli_ratio, box_dimension_estimate, build_layer, layer_comparator, layer_measure,
    quasi_independence_scan, series_classify, ApproxFunction, DimensionFunction, PairCase, ScanOptions, SymReal,
    Verdict, Prediction, WindowConfig,
};
use cantor_approx::{PrecisionBudget, Rational, RealExpr};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn k() -> MissingDigitSet {
    MissingDigitSet::middle_third()
}

fn budget() -> PrecisionBudget {
    PrecisionBudget::default()
}

fn gamma_f64() -> f64 {
    2f64.ln() / 3f64.ln()
}

/// Cantor function of the middle-third set at a rational `y` in `[0, 1]`,
/// read off the ternary digits: a digit 1 stops the sum, otherwise the
/// eventually periodic tail is summed as a geometric series.
fn cantor_function(y: &Rational) -> Rational {
    if y >= &Rational::one() {
        return Rational::one();
    }
    if !y.is_positive() {
        return Rational::zero();
    }
    let den = y.denom().clone();
    let mut num = y.numer().clone();
    let mut seen: Vec<BigInt> = Vec::new();
    let mut bits: Vec<u8> = Vec::new();
    loop {
        if let Some(start) = seen.iter().position(|r| r == &num) {
            let value = |bs: &[u8]| -> Rational {
                bs.iter().enumerate().fold(Rational::zero(), |acc, (i, &b)| {
                    acc + Rational::integer(b as i64) * Rational::frac(1, 2).pow(i as i64 + 1)
                })
            };
            let pre = value(&bits[..start]);
            let period = &bits[start..];
            let per = value(period);
            let scale = Rational::frac(1, 2).pow(start as i64);
            let geo = Rational::one() / (Rational::one() - Rational::frac(1, 2).pow(period.len() as i64));
            return pre + scale * per * geo;
        }
        seen.push(num.clone());
        let t = &num * 3;
        let d = &t / &den;
        num = t - &d * &den;
        if d == BigInt::one() {
            let mut v = Rational::zero();
            for (i, &b) in bits.iter().enumerate() {
                v = v + Rational::integer(b as i64) * Rational::frac(1, 2).pow(i as i64 + 1);
            }
            return v + Rational::frac(1, 2).pow(bits.len() as i64 + 1);
        }
        bits.push(if d == BigInt::from(2) { 1 } else { 0 });
        if num == BigInt::from(0) {
            let mut v = Rational::zero();
            for (i, &b) in bits.iter().enumerate() {
                v = v + Rational::integer(b as i64) * Rational::frac(1, 2).pow(i as i64 + 1);
            }
            return v;
        }
    }
}

/// Level-10 decomposition: full cells contribute `2^-10`, boundary cells
/// the scaled Cantor function.
fn brute_force_measure(a: &Rational, b: &Rational) -> Rational {
    let scale = Rational::integer(59049);
    let cell_mass = Rational::frac(1, 1024);
    let mut total = Rational::zero();
    for idx in 0u32..1024 {
        let mut kk = 0i64;
        for j in (0..10).rev() {
            kk = kk * 3 + if idx >> j & 1 == 1 { 2 } else { 0 };
        }
        let lo = Rational::frac(kk, 59049);
        let hi = Rational::frac(kk + 1, 59049);
        if b <= &lo || a >= &hi {
            continue;
        }
        if a <= &lo && &hi <= b {
            total = total + &cell_mass;
            continue;
        }
        let local = |x: &Rational| (x * &scale - Rational::integer(kk)).max(Rational::zero()).min(Rational::one());
        total = total + &cell_mass * (cantor_function(&local(b)) - cantor_function(&local(a)));
    }
    total
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240101);
    let set = k();
    for i in 0..100 {
        let mut end = || {
            let d: i64 = rng.gen_range(1..=59049);
            Rational::frac(rng.gen_range(0..=d), d)
        };
        let (x, y) = (end(), end());
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        let iv = RatInterval::new(a.clone(), b.clone()).map_err(err)?;
        let mu = cantor_measure(&set, &iv);
        let got = mu.value().ok_or_else(|| format!("interval {i}: measure not exact"))?;
        let want = brute_force_measure(&a, &b);
        ensure!(got == &want, "interval [{a}, {b}]: recursive {got} vs brute force {want}");
    }
    Ok("100 random intervals agree exactly".into())
}

fn criterion_2() -> Check {
    let set = k();
    let f = DimensionFunction::power("gamma/3".parse::<SymReal>().map_err(err)?);
    let psi1 = ApproxFunction::power(Rational::integer(3));
    let v1 = series_classify(&set, &psi1, &f, 50, budget()).map_err(err)?;
    for (i, s) in v1.partial_sums.iter().enumerate() {
        let n = Rational::integer(i as i64 + 1);
        ensure!(s.lo == n && s.hi == n, "psi1: S_{} = [{}, {}], expected {n}", i + 1, s.lo, s.hi);
    }
    ensure!(v1.verdict == Verdict::Divergent && v1.prediction == Prediction::MeasureFull, "psi1 verdict {:?}/{:?}", v1.verdict, v1.prediction);

    let psi2 = ApproxFunction::power_log(Rational::integer(3), "6/gamma".parse::<SymReal>().map_err(err)?);
    let v2 = series_classify(&set, &psi2, &f, 50, budget()).map_err(err)?;
    // S_N = Σ (n ln 3)^-2 with 1.0986 < ln 3 < 1.0987.
    let (ln_lo, ln_hi) = (Rational::frac(10986, 10000), Rational::frac(10987, 10000));
    let bound = Rational::frac(13631, 10000);
    let mut basel = Rational::zero();
    for (i, s) in v2.partial_sums.iter().enumerate() {
        basel = basel + Rational::integer(i as i64 + 1).pow(-2);
        let lo = &basel / (&ln_hi * &ln_hi);
        let hi = &basel / (&ln_lo * &ln_lo);
        ensure!(s.lo <= hi && s.hi >= lo, "psi2: S_{} = [{}, {}] misses the Basel comparison", i + 1, s.lo.to_decimal(6), s.hi.to_decimal(6));
        ensure!(s.hi <= bound, "psi2: S_{} exceeds {}", i + 1, bound.to_decimal(4));
    }
    ensure!(v2.verdict == Verdict::Convergent && v2.prediction == Prediction::MeasureZero, "psi2 verdict {:?}/{:?}", v2.verdict, v2.prediction);
    Ok(format!(
        "S_N = N for N <= 50 (Divergent/MeasureFull); psi2 sums <= {} (Convergent/MeasureZero)",
        bound.to_decimal(4)
    ))
}

fn criterion_3() -> Check {
    let set = k();
    let cfg = WindowConfig::unit(3);
    let tau = Rational::integer(2);
    let psi = ApproxFunction::power(tau.clone());
    for n in 1..=8u32 {
        let layer = build_layer(&set, &psi, n, &cfg, true).map_err(err)?;
        let mu = layer_measure(&layer);
        let want = Rational::frac(1, 2).pow(n as i64);
        ensure!(mu.value() == Some(&want), "n = {n}: mu = {:?}, expected {want}", mu.value());
        let cmp = layer_comparator(&set, &SymReal::rational(tau.clone()), n, &cfg, budget()).map_err(err)?;
        ensure!(cmp.contains(&want), "n = {n}: comparator [{}, {}] misses {want}", cmp.lo, cmp.hi);
    }
    Ok("mu(A*_n) = 2^-n = (psi(3^n) 3^n)^gamma for n = 1..8".into())
}

fn criterion_4() -> Check {
    let psi = ApproxFunction::power(Rational::integer(2));
    let scan = quasi_independence_scan(&k(), &psi, &WindowConfig::unit(3), 8, ScanOptions::default()).map_err(err)?;
    ensure!(scan.pairs.len() == 28, "expected 28 pairs, got {}", scan.pairs.len());
    let c_fix = calibration::committed().c_fix;
    let mut max_ii = Rational::zero();
    for p in &scan.pairs {
        let rho = p.rho.as_ref().ok_or_else(|| format!("({}, {}): rho undefined", p.m, p.n))?;
        ensure!(rho.is_point(), "({}, {}): rho not exact", p.m, p.n);
        match p.case {
            PairCase::Disjoint => ensure!(rho.lo.is_zero(), "({}, {}) case i: rho = {}", p.m, p.n, rho.lo),
            PairCase::Counting => max_ii = max_ii.max(rho.hi.clone()),
            PairCase::Unknown => return Err(format!("({}, {}): case not certified", p.m, p.n)),
        }
    }
    let first = scan.pairs.iter().find(|p| (p.m, p.n) == (1, 2)).expect("pair (1, 2)");
    ensure!(first.rho.as_ref().map(|r| r.lo.clone()) == Some(Rational::one()), "rho(1, 2) != 1");
    ensure!(max_ii <= c_fix, "max case ii rho {max_ii} exceeds C_fix {c_fix}");
    Ok(format!("case i rho = 0, max case ii rho = {max_ii} <= C_fix = {c_fix}, rho(1,2) = 1"))
}

fn criterion_5() -> Check {
    let psi = ApproxFunction::power(Rational::integer(2));
    let cfg = WindowConfig::unit(3);
    let two = borel_cantelli_ratio(&k(), &psi, &cfg, 2, ScanOptions::default()).map_err(err)?;
    // (1/2 + 1/4)^2 / (1/2 + 1/4 + 2 * 1/8)
    let want = Rational::frac(9, 16);
    ensure!(two.ratio.is_point() && two.ratio.lo == want, "R(2) = [{}, {}]", two.ratio.lo, two.ratio.hi);
    for q in 1..=8 {
        let r = borel_cantelli_ratio(&k(), &psi, &cfg, q, ScanOptions::default()).map_err(err)?;
        ensure!(r.ratio.hi <= r.union_measure.lo && r.bound_holds, "Q = {q}: R = {} > mu(union) = {}", r.ratio.hi, r.union_measure.lo);
    }
    Ok("R(2) = 9/16; R(Q) <= mu(union) for Q <= 8".into())
}

fn criterion_6() -> Check {
    let g = gamma_f64();
    let mut worst = 0f64;
    for tau in [2i64, 3] {
        for n in 2..=6 {
            let d = box_dimension_estimate(&k(), &Rational::integer(tau), n, true, budget()).map_err(err)?;
            let target = g / tau as f64;
            let dev = (d.estimate.midpoint().to_f64() - target).abs();
            ensure!(dev <= 0.02, "tau = {tau}, n = {n}: estimate off by {dev}");
            worst = worst.max(dev);
            if (tau, n) == (2, 2) {
                ensure!(d.count == BigInt::from(4) && d.level == 4 && d.equals_target, "tau = 2, n = 2: count {} at level {}", d.count, d.level);
            }
        }
    }
    Ok(format!("all within 0.02 of gamma/tau (worst {worst:.2e}); tau=2,n=2 exact with 4 intervals at level 4"))
}

fn criterion_7() -> Check {
    for n in 1..=8 {
        ensure!(full_cover_check(&k(), n, &RatInterval::unit()).map_err(err)?, "full cover fails at n = {n}");
    }
    Ok("full cover holds for n = 1..8".into())
}

fn xi_cf(tau: Rational, s: usize) -> Result<(cantor_approx::explicit::SparseDigitNumber, ContinuedFraction), String> {
    let x = build_sparse_number(3, 2, ExponentRule::tau(tau), s, budget()).map_err(err)?;
    let cf = continued_fraction_expand(&CfInput::Sparse(x.clone(), 0), 10_000, budget()).map_err(err)?;
    Ok((x, cf))
}

fn criterion_8() -> Check {
    let (x, cf) = xi_cf(Rational::integer(3), 5)?;
    ensure!(x.exponents == vec![3, 9, 27, 81, 243], "exponents {:?}", x.exponents);
    let m = membership(&Point::Enclosed(x.enclosure()), &k(), 243);
    ensure!(m == Membership::In, "membership at depth 243: {m:?}");
    let summary = truncation_summary(&x).map_err(err)?;
    for c in &summary.checks {
        ensure!(
            c.passed && c.growth_bounds == Some(true) && c.gap_bounds && c.order_bounds == Some(true),
            "s = {}: check failed {c:?}",
            c.s
        );
    }
    ensure!(summary.checks.iter().map(|c| c.s).eq(1..=4), "checks cover s = 1..4");
    let digits = x.truncations.last().expect("five").q.to_string().len();
    for (i, tr) in x.truncations.iter().enumerate() {
        let verdict = legendre_is_convergent(&tr.p, &tr.q, &x.enclosure()).map_err(err)?;
        ensure!(verdict == LegendreVerdict::Yes, "xi_{} not certified by Legendre", i + 1);
        // Direct check of |xi - p/q| < 1 / (2 q^2) from the tail bound.
        let tail = x.tail(i + 1).map_err(err)?;
        let q = Rational::integer(tr.q.clone());
        let half_q2 = Rational::one() / (Rational::integer(2) * &q * &q);
        ensure!(tail.lo.abs().max(tail.hi.abs()) < half_q2, "xi_{}: tail not below 1/(2q^2)", i + 1);
        ensure!(cf.position(&tr.p, &tr.q).is_some(), "xi_{} missing from the expansion", i + 1);
    }
    let est = irrationality_exponent_estimate(&cf).map_err(err)?;
    let (lo, hi) = (Rational::frac(29, 10), Rational::frac(31, 10));
    ensure!(est.estimate.lo >= lo && est.estimate.hi <= hi, "estimate {} outside [2.9, 3.1]", est.estimate.lo.to_decimal(4));
    Ok(format!(
        "In at depth 243; checks pass s = 1..4; 5 truncations are convergents (q_5 has {digits} digits); estimate {}",
        est.estimate.lo.to_decimal(4)
    ))
}

fn criterion_9() -> Check {
    let (x, cf) = xi_cf(Rational::frac(11, 5), 6)?;
    ensure!(x.exponents == vec![2, 4, 10, 23, 51, 113], "exponents {:?}", x.exponents);
    let est = irrationality_exponent_estimate(&cf).map_err(err)?;
    let (lo, hi) = (Rational::frac(21, 10), Rational::frac(294, 100));
    ensure!(est.estimate.lo >= lo && est.estimate.hi <= hi, "estimate {} outside [2.1, 2.94]", est.estimate.lo.to_decimal(4));
    Ok(format!("estimate {} in [2.1, 2.94]", est.estimate.lo.to_decimal(4)))
}

fn criterion_10() -> Check {
    let iv = cf_prefix_interval(&[BigInt::one(), BigInt::one()]).map_err(err)?;
    ensure!(
        iv.lo == Rational::frac(1, 2) && iv.hi == Rational::frac(2, 3) && iv.lo_closed && !iv.hi_closed,
        "prefix [1, 1] gives {}..{}",
        iv.lo,
        iv.hi
    );
    // Level-2 intervals of K: [0, 1/9], [2/9, 1/3], [2/3, 7/9], [8/9, 1].
    let level2 = [(0, 1), (2, 3), (6, 7), (8, 9)].map(|(a, b)| (Rational::frac(a, 9), Rational::frac(b, 9)));
    let hand = level2.iter().all(|(a, b)| b < &iv.lo || a >= &iv.hi);
    ensure!(hand && iv.disjoint_from(&k(), 2), "prefix interval meets a level-2 interval");
    let v = exclusion_check(&RealExpr::golden(), &k(), 2, 10, budget()).map_err(err)?;
    ensure!(v.verdict == "not in K", "verdict {:?}", v.verdict);
    Ok("[1/2, 2/3) misses level 2 of K; verdict \"not in K\"".into())
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut rat = || Rational::frac(rng.gen_range(-500..=500), rng.gen_range(1..=500));
    for _ in 0..500 {
        let (a, b, c) = (rat(), rat(), rat());
        ensure!(&a + &b == &b + &a && &a * &b == &b * &a, "commutativity fails at {a}, {b}");
        ensure!((&a + &b) + &c == &a + (&b + &c) && (&a * &b) * &c == &a * (&b * &c), "associativity fails");
        ensure!(&a * (&b + &c) == &a * &b + &a * &c, "distributivity fails at {a}, {b}, {c}");
        ensure!((&a - &a).is_zero(), "a - a != 0");
        if !a.is_zero() {
            ensure!(&a * a.recip().map_err(err)? == Rational::one(), "a / a != 1");
        }
    }

    let truths: Vec<(RealExpr, Rational)> = vec![
        (RealExpr::rational(Rational::frac(4, 9)).sqrt(), Rational::frac(2, 3)),
        (RealExpr::integer(7).sqrt().powi(2), Rational::integer(7)),
        (RealExpr::rational(Rational::frac(5, 3)).ln().exp(), Rational::frac(5, 3)),
        (RealExpr::log_ratio(Rational::integer(8), Rational::integer(2)), Rational::integer(3)),
    ];
    for (e, t) in &truths {
        let mut enc = enclose_real(e, &Rational::frac(1, 1000), budget()).map_err(err)?;
        for bits in [20i64, 60, 200] {
            let next = enc.refine(&Rational::frac(1, 2).pow(bits), budget()).map_err(err)?;
            ensure!(enc.lo <= next.lo && next.hi <= enc.hi && next.contains(t), "{e}: enclosures not nested around {t}");
            enc = next;
        }
    }

    let mut numbers: Vec<CfInput> = [(2, 27), (355, 1000), (13, 21), (1, 7), (89, 144), (5, 17), (999, 1000), (1, 2), (22, 71), (123, 457)]
        .into_iter()
        .map(|(p, q)| CfInput::Exact(Rational::frac(p, q)))
        .collect();
    for e in [
        RealExpr::golden(),
        RealExpr::gamma(),
        RealExpr::integer(2).sqrt() - RealExpr::integer(1),
        RealExpr::integer(3).sqrt() - RealExpr::integer(1),
        RealExpr::integer(7).sqrt() - RealExpr::integer(2),
        RealExpr::integer(2).ln(),
        RealExpr::integer(1).exp() - RealExpr::integer(2),
    ] {
        numbers.push(CfInput::Expr(e));
    }
    for tau in [Rational::integer(3), Rational::frac(5, 2), Rational::frac(11, 5)] {
        let x = build_sparse_number(3, 2, ExponentRule::tau(tau), 4, budget()).map_err(err)?;
        numbers.push(CfInput::Sparse(x, 0));
    }
    ensure!(numbers.len() == 20, "expected 20 test numbers");
    for x in &numbers {
        let cf = continued_fraction_expand(x, 25, budget()).map_err(err)?;
        let enclosure = match x {
            CfInput::Exact(r) => Interval::point(r.clone()),
            CfInput::Expr(e) => e.eval(512).map_err(err)?,
            CfInput::Sparse(s, _) => s.enclosure(),
        };
        ensure!(
            cf.recurrence_holds() && cf.determinant_holds() && cf.denominators_increasing() && cf.sandwich_holds(&enclosure).map_err(err)?,
            "invariants fail for {x:?}"
        );
    }

    let g = gamma_f64();
    let taus = [Rational::integer(1), Rational::frac(3, 2), Rational::integer(2), Rational::frac(5, 2), Rational::integer(3)];
    let mut points = 0;
    for tau in &taus {
        let mut grid: Vec<(SymReal, bool)> = Vec::new();
        for c in [Rational::frac(1, 2), Rational::frac(3, 4), Rational::one(), Rational::frac(5, 4), Rational::integer(2)] {
            let s = &SymReal::gamma() * &(&c / tau);
            grid.push((s, c > Rational::one()));
        }
        for s in [Rational::frac(1, 10), Rational::frac(1, 5), Rational::frac(3, 10), Rational::frac(1, 2), Rational::frac(4, 5)] {
            let converges = s.to_f64() * tau.to_f64() > g;
            grid.push((SymReal::rational(s), converges));
        }
        for (s, converges) in grid {
            let v = series_classify(&k(), &ApproxFunction::power(tau.clone()), &DimensionFunction::power(s.clone()), 4, budget())
                .map_err(err)?;
            let want = if converges { Verdict::Convergent } else { Verdict::Divergent };
            ensure!(v.verdict == want, "s = {s}, tau = {tau}: {:?}, closed form {want:?}", v.verdict);
            points += 1;
        }
    }
    Ok(format!("algebra laws x500, 4 nested enclosures, CF invariants on 20 numbers, {points}-point series grid"))
}

fn criterion_12() -> Check {
    let validator = common::validator();
    for cmd in common::SUBCOMMANDS {
        for output in ["json", "csv"] {
            let a = common::run_fixture(cmd, output);
            let b = common::run_fixture(cmd, output);
            ensure!(a.status.success(), "{cmd} --output {output} exited {:?}: {}", a.status.code(), String::from_utf8_lossy(&a.stderr));
            ensure!(a.stdout == b.stdout, "{cmd} --output {output}: outputs differ between runs");
            if output == "json" {
                let doc: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(err)?;
                let bad = common::violations(&validator, &doc);
                ensure!(bad.is_empty(), "{cmd}: schema violations {bad:?}");
            }
        }
    }
    Ok("14 subcommands x {json, csv} byte-identical; JSON validates".into())
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 12] = [
        (1, "exact-measure oracle", Duration::from_secs(60), criterion_1),
        (2, "series dichotomy inputs", Duration::from_secs(10), criterion_2),
        (3, "layer measure instance", Duration::from_secs(60), criterion_3),
        (4, "quasi-independence scan", Duration::from_secs(300), criterion_4),
        (5, "second-moment ratio", Duration::from_secs(120), criterion_5),
        (6, "covering exponents", Duration::from_secs(120), criterion_6),
        (7, "full-cover identity", Duration::from_secs(60), criterion_7),
        (8, "xi(3) at desk scale", Duration::from_secs(120), criterion_8),
        (9, "xi(11/5) band", Duration::from_secs(120), criterion_9),
        (10, "golden ratio exclusion", Duration::from_secs(1), criterion_10),
        (11, "property suites", Duration::from_secs(120), criterion_11),
        (12, "CLI determinism and schema", Duration::from_secs(600), criterion_12),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
