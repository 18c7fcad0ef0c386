//! Containment and inclusion monotonicity of the interval kernel against an
//! exact rational oracle.

mod common;

use common::{decimal_rational, rational};
use num_rational::BigRational;
use proptest::prelude::*;
use segcert::Interval;

fn real() -> impl Strategy<Value = f64> {
    prop_oneof![
        1 => Just(0.0),
        2 => -4.0..4.0f64,
        6 => (any::<bool>(), 1.0..2.0f64, -80..80i32).prop_map(|(neg, m, e)| {
            let x = m * 2f64.powi(e);
            if neg { -x } else { x }
        }),
    ]
}

fn interval() -> impl Strategy<Value = Interval> {
    (real(), real()).prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}

/// A point of `x`: an endpoint or an interior convex combination.
fn member(x: Interval, t: f64) -> f64 {
    if t < 0.2 {
        x.lo()
    } else if t > 0.8 {
        x.hi()
    } else {
        (x.lo() + t * (x.hi() - x.lo())).clamp(x.lo(), x.hi())
    }
}

/// A subinterval of `x`.
fn inner(x: Interval, t: f64, u: f64) -> Interval {
    let a = member(x, t);
    let b = member(x, u);
    Interval::new(a.min(b), a.max(b)).unwrap()
}

fn holds(x: &Interval, q: &BigRational) -> bool {
    rational(x.lo()) <= *q && *q <= rational(x.hi())
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

fn apply(op: Op, a: Interval, b: Interval) -> Option<Interval> {
    match op {
        Op::Add => Some(a + b),
        Op::Sub => Some(a - b),
        Op::Mul => Some(a * b),
        Op::Div => a.checked_div(&b).ok(),
    }
}

fn exact(op: Op, x: &BigRational, y: &BigRational) -> Option<BigRational> {
    match op {
        Op::Add => Some(x + y),
        Op::Sub => Some(x - y),
        Op::Mul => Some(x * y),
        Op::Div => (*y != BigRational::from_integer(0.into())).then(|| x / y),
    }
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![Just(Op::Add), Just(Op::Sub), Just(Op::Mul), Just(Op::Div)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25_000))]

    #[test]
    fn binary_ops_contain_exact_results(op in op(), a in interval(), b in interval(), t in 0.0..1.0f64, u in 0.0..1.0f64) {
        let x = member(a, t);
        let y = member(b, u);
        if let Some(z) = apply(op, a, b) {
            let q = exact(op, &rational(x), &rational(y)).expect("divisor excludes zero");
            prop_assert!(holds(&z, &q), "{op:?} {a:?} {b:?} at ({x}, {y}) -> {z:?}");
        } else {
            prop_assert!(matches!(op, Op::Div) && b.contains_zero());
        }
    }

    #[test]
    fn binary_ops_are_inclusion_monotone(
        op in op(), a in interval(), b in interval(),
        t in (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64),
    ) {
        let a2 = inner(a, t.0, t.1);
        let b2 = inner(b, t.2, t.3);
        if let (Some(big), Some(small)) = (apply(op, a, b), apply(op, a2, b2)) {
            prop_assert!(small.is_subset(&big), "{op:?}: {small:?} not in {big:?}");
        }
    }

    #[test]
    fn unary_ops_contain_exact_results(a in interval(), t in 0.0..1.0f64, p in 1u32..7) {
        let x = member(a, t);
        let q = rational(x);
        prop_assert!(holds(&a.square(), &(&q * &q)));
        prop_assert!(a.square().is_subset(&(a * a)));
        prop_assert!(a.square().lo() >= 0.0);
        let mut pow = BigRational::from_integer(1.into());
        for _ in 0..p {
            pow *= &q;
        }
        prop_assert!(holds(&a.pow_int(p), &pow), "{a:?}^{p}");
        prop_assert!(holds(&a.abs(), &rational(x.abs())));
        prop_assert!(holds(&-a, &-q.clone()));
    }

    #[test]
    fn sqrt_encloses_exact_root(a in interval(), t in 0.0..1.0f64) {
        let a = a.abs();
        let x = member(a, t);
        let r = a.sqrt().unwrap();
        let q = rational(x);
        let lo = rational(r.lo());
        let hi = rational(r.hi());
        prop_assert!(r.lo() >= 0.0);
        prop_assert!(&lo * &lo <= q && q <= &hi * &hi, "sqrt {a:?} -> {r:?}");
    }

    #[test]
    fn decimal_literals_are_tightly_enclosed(neg in any::<bool>(), int in 0u64..1_000_000, frac in 0u64..1_000_000_000, exp in -30i32..30) {
        let text = format!("{}{int}.{frac:09}e{exp}", if neg { "-" } else { "" });
        let x = Interval::from_decimal(&text).unwrap();
        let q = decimal_rational(&text);
        prop_assert!(holds(&x, &q), "{text} -> {x:?}");
        prop_assert!(x.is_point() || x.lo().next_up() == x.hi(), "{text} not tight: {x:?}");
    }
}

#[test]
fn two_pi_encloses_high_precision_value() {
    let two_pi = Interval::two_pi();
    let pi = decimal_rational("3.14159265358979323846264338327950288419716939937510582097494459");
    let q = &pi + &pi;
    assert!(holds(&two_pi, &q));
    assert_eq!(two_pi.lo().next_up(), two_pi.hi());
}

#[test]
fn exact_decimals_are_points() {
    for text in ["0.5", "1.5", "-2.25", "3", "1e3", "0.125e1"] {
        let x = Interval::from_decimal(text).unwrap();
        assert!(x.is_point(), "{text}");
        assert_eq!(rational(x.lo()), decimal_rational(text));
    }
}
