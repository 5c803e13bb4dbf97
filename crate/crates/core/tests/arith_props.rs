use std::collections::HashMap;

use proptest::prelude::*;
use quadric_mirror::arith::{int, LaurentPolynomial as LP, Monomial, RationalFunction as RF, Substitution, Symbol};

const VARS: [&str; 5] = ["x", "y", "z", "u", "v"];

fn laurent(max_terms: usize) -> impl Strategy<Value = LP> {
    laurent_in(max_terms, 3)
}

fn laurent_in(max_terms: usize, e: i64) -> impl Strategy<Value = LP> {
    let term = (prop::collection::vec(-e..=e, 5), -9i64..=9);
    prop::collection::vec(term, 0..=max_terms).prop_map(|ts| {
        LP::from_terms(ts.into_iter().map(|(exps, c)| {
            let m = Monomial::from_pairs(VARS.iter().map(|v| Symbol::new(v)).zip(exps));
            (m, int(c))
        }))
    })
}

fn nonzero(max_terms: usize) -> impl Strategy<Value = LP> {
    laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational() -> impl Strategy<Value = RF> {
    (laurent(3), nonzero(2)).prop_map(|(n, d)| RF::ratio(n, d))
}

// small images keep composed substitutions cheap
fn small_rational() -> impl Strategy<Value = RF> {
    (laurent_in(2, 1), laurent_in(2, 1).prop_filter("nonzero", |p| !p.is_zero())).prop_map(|(n, d)| RF::ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn distributive(a in laurent(4), b in laurent(4), c in laurent(4)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn ring_axioms(a in laurent(4), b in laurent(4), c in laurent(4)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a - &a, LP::zero());
        prop_assert_eq!(&a * &LP::one(), a.clone());
    }

    #[test]
    fn pow_is_repeated_product(a in laurent(3), n in 0u32..=6) {
        let mut prod = LP::one();
        for _ in 0..n {
            prod = &prod * &a;
        }
        prop_assert_eq!(a.pow(n), prod);
    }

    #[test]
    fn leibniz(f in rational(), g in rational(), i in 0usize..5) {
        let x = Symbol::new(VARS[i]);
        let lhs = (&f * &g).partial(&x);
        let rhs = &(&f.partial(&x) * &g) + &(&f * &g.partial(&x));
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn rf_equal_is_an_equivalence(f in rational(), h in nonzero(2), k in nonzero(2)) {
        let (n, d) = f.clone().into_parts();
        let g = RF::ratio(&n * &h, &d * &h);
        let e = RF::ratio(&n * &k, &d * &k);
        prop_assert!(f.equals(&f));
        prop_assert_eq!(f.equals(&g), g.equals(&f));
        prop_assert!(f.equals(&g) && g.equals(&e) && f.equals(&e));
    }

    #[test]
    fn substitution_composes(f in small_rational(), r1 in small_rational(), r2 in small_rational()) {
        // m1: x -> r1, m2: y -> r2 restricted to the variables other than y
        let y = Symbol::new("y");
        let r2 = r2.substitute(&[(y.clone(), RF::from_int(3))].into_iter().collect()).unwrap();
        let m1: Substitution = [(Symbol::new("x"), r1.clone())].into_iter().collect();
        let m2: Substitution = [(y.clone(), r2)].into_iter().collect();
        let Ok(step1) = f.substitute(&m1) else { return Ok(()) };
        let Ok(two_steps) = step1.substitute(&m2) else { return Ok(()) };
        let Ok(r1_after) = r1.substitute(&m2) else { return Ok(()) };
        let mut comp = m2.clone();
        comp.insert(Symbol::new("x"), r1_after);
        let Ok(one_step) = f.substitute(&comp) else { return Ok(()) };
        prop_assert!(two_steps.equals(&one_step));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(3), b in laurent(3), vals in prop::collection::vec(1i64..=7, 5)) {
        let point: HashMap<Symbol, _> = VARS.iter().map(|v| Symbol::new(v)).zip(vals.into_iter().map(int)).collect();
        let ev = |p: &LP| RF::from(p).eval_rational(&point).unwrap().unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a) * ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), ev(&a) + ev(&b));
    }
}
