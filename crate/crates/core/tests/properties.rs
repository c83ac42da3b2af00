use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use cantor_approx::cantor::{
    cantor_measure, in_level, membership, Membership, MissingDigitSet, Point, RatInterval,
};
use cantor_approx::exact::{enclose_real, Interval};
use cantor_approx::explicit::{cf_prefix_interval, legendre_is_convergent, rational_expansion, LegendreVerdict};
use cantor_approx::limsup::{build_layer, layer_measure, pairwise_measure, ApproxFunction, WindowConfig};
use cantor_approx::{PrecisionBudget, Rational, RealExpr};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::frac(n, d))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..5_000).prop_flat_map(|d| (0..=d, Just(d))).prop_map(|(n, d)| Rational::frac(n, d))
}

fn open_unit_rational() -> impl Strategy<Value = Rational> {
    (2i64..5_000).prop_flat_map(|d| (1..d, Just(d))).prop_map(|(n, d)| Rational::frac(n, d))
}

fn sorted(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn rationals_are_canonical(n in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..50) {
        let r = Rational::frac(n * k, d * k);
        prop_assert!(r.denom() > &BigInt::from(0));
        prop_assert!(r.numer().gcd(r.denom()) == BigInt::from(1) || r.is_zero());
        prop_assert_eq!(r, Rational::frac(n, d));
    }

    #[test]
    fn ordering_matches_difference(a in rational(), b in rational()) {
        prop_assert_eq!(a < b, (&b - &a).is_positive());
        prop_assert_eq!(a.cmp(&b), (a.to_f64()).partial_cmp(&b.to_f64()).unwrap());
    }

    #[test]
    fn floor_and_ceil_bracket(a in rational()) {
        let f = Rational::integer(a.floor());
        let c = Rational::integer(a.ceil());
        prop_assert!(f <= a && a <= c);
        prop_assert!(&c - &f <= Rational::one());
    }

    #[test]
    fn enclosures_contain_exact_values(p in 1i64..200, q in 1i64..200) {
        let r = Rational::frac(p, q);
        let e = RealExpr::rational(&r * &r).sqrt();
        let enc = enclose_real(&e, &Rational::frac(1, 1 << 30), PrecisionBudget::default()).unwrap();
        prop_assert!(enc.contains(&r));
        let finer = enc.refine(&Rational::frac(1, 1 << 50), PrecisionBudget::default()).unwrap();
        prop_assert!(enc.lo <= finer.lo && finer.hi <= enc.hi && finer.contains(&r));
    }

    #[test]
    fn measure_is_additive(a in unit_rational(), b in unit_rational(), c in unit_rational()) {
        let k = MissingDigitSet::middle_third();
        let mut v = [a, b, c];
        v.sort();
        let [a, b, c] = v;
        let mu = |x: &Rational, y: &Rational| cantor_measure(&k, &RatInterval::new(x.clone(), y.clone()).unwrap()).value().unwrap().clone();
        prop_assert_eq!(mu(&a, &b) + mu(&b, &c), mu(&a, &c));
        prop_assert!(mu(&a, &c) <= Rational::one());
    }

    #[test]
    fn measure_is_self_similar(a in unit_rational(), b in unit_rational()) {
        let k = MissingDigitSet::middle_third();
        let (a, b) = sorted(a, b);
        let mu = |x: Rational, y: Rational| cantor_measure(&k, &RatInterval::new(x, y).unwrap()).value().unwrap().clone();
        let third = Rational::frac(1, 3);
        let left = mu(&a * &third, &b * &third);
        let right = mu(&a * &third + Rational::frac(2, 3), &b * &third + Rational::frac(2, 3));
        let whole = mu(a, b);
        prop_assert_eq!(&left * Rational::integer(2), whole.clone());
        prop_assert_eq!(right * Rational::integer(2), whole);
    }

    #[test]
    fn b_adic_membership_reads_digits(digits in proptest::collection::vec(0u32..3, 1..12)) {
        let k = MissingDigitSet::middle_third();
        let n = digits.len() as u32;
        let num = digits.iter().fold(0i64, |acc, &d| acc * 3 + d as i64);
        let x = Rational::frac(num, 3i64.pow(n));
        // A last nonzero digit 1 can be rewritten as 0222...
        let end = digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
        let t = &digits[..end];
        let expected = t.iter().position(|&d| d == 1).is_none_or(|i| i + 1 == t.len());
        prop_assert_eq!(membership(&Point::Exact(x.clone()), &k, 40) == Membership::In, expected);
        prop_assert_eq!(in_level(&x, &k, n), expected);
    }

    #[test]
    fn rational_cf_reconstructs(x in open_unit_rational()) {
        let cf = rational_expansion(&x, 64).unwrap();
        prop_assert!(cf.terminated);
        prop_assert_eq!(cf.convergents.last().unwrap().value(), x.clone());
        prop_assert!(cf.recurrence_holds() && cf.determinant_holds() && cf.denominators_increasing());
        prop_assert!(cf.sandwich_holds(&Interval::point(x.clone())).unwrap());
        for c in &cf.convergents {
            let v = legendre_is_convergent(&c.p, &c.q, &Interval::point(x.clone()));
            if let Ok(LegendreVerdict::Yes) = v {
                prop_assert!(cf.position(&c.p, &c.q).is_some());
            }
        }
        let prefix = cf_prefix_interval(&cf.quotients[..1]).unwrap();
        prop_assert!(prefix.contains(&x));
    }

    #[test]
    fn legendre_never_lies(x in open_unit_rational(), p in 0i64..60, q in 1i64..60) {
        let g = BigInt::from(p).gcd(&BigInt::from(q));
        prop_assume!(g == BigInt::from(1));
        let (p, q) = (BigInt::from(p), BigInt::from(q));
        if let Ok(LegendreVerdict::Yes) = legendre_is_convergent(&p, &q, &Interval::point(x.clone())) {
            let cf = rational_expansion(&x, 64).unwrap();
            let r = Rational::new(p.clone(), q.clone()).unwrap();
            prop_assert!(cf.position(&p, &q).is_some() || r == x || (q == BigInt::from(1)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn layer_overlaps_are_bounded(m in 1u32..5, gap in 1u32..4, tau in 1i64..4) {
        let k = MissingDigitSet::middle_third();
        let cfg = WindowConfig::unit(3);
        let psi = ApproxFunction::power(Rational::integer(tau));
        let a = build_layer(&k, &psi, m, &cfg, true).unwrap();
        let b = build_layer(&k, &psi, m + gap, &cfg, true).unwrap();
        let (ma, mb) = (layer_measure(&a), layer_measure(&b));
        let both = pairwise_measure(&a, &b).unwrap();
        prop_assert!(both.hi <= ma.lo.clone().min(mb.lo.clone()));
        prop_assert!(ma.hi <= Rational::one() && mb.hi <= Rational::one());
    }
}
