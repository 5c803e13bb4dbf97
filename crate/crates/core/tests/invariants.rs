//! Structural invariants of each module, over the stated parameter ranges.

use proptest::prelude::*;
use quadric_mirror::arith::{int, LaurentPolynomial as LP, RationalFunction as RF, Symbol};
use quadric_mirror::cohomology::{self, CohVector, Quadric, SchubertClass};
use quadric_mirror::critical::{self, RootElement};
use quadric_mirror::flat_sections;
use quadric_mirror::lg_zoo::{self, a_sym, b_sym, MapKind};
use quadric_mirror::lie_matrix;
use quadric_mirror::quiver;

fn q_power(coef: &LP) -> i64 {
    let (m, _) = coef.single_term().expect("monomial coefficient");
    m.exponent(&Symbol::new(cohomology::Q))
}

proptest! {
    #[test]
    fn chevalley_degree_bookkeeping(n in 3usize..=12, idx in 0usize..14) {
        let qd = Quadric::new(n).unwrap();
        let basis = qd.basis();
        let c = basis[idx % basis.len()];
        for (j, coef) in cohomology::quantum_chevalley(n, c).unwrap().iter() {
            let d = q_power(coef);
            prop_assert_eq!(qd.grading(*j) as i64 + d * n as i64, qd.grading(c) as i64 + 1);
        }
    }
}

fn classical_sigma1(n: usize, v: &CohVector) -> CohVector {
    let mut out = CohVector::zero();
    for (c, coef) in v.iter() {
        for (j, t) in cohomology::quantum_chevalley(n, *c).unwrap().iter() {
            if q_power(t) == 0 {
                out.add_to(*j, &(coef * t));
            }
        }
    }
    out
}

#[test]
fn classical_limit_is_nilpotent() {
    for n in 3..=12 {
        let mut v = CohVector::basis(SchubertClass::Standard(0));
        for _ in 0..n {
            v = classical_sigma1(n, &v);
        }
        if n % 2 == 1 {
            assert!(!v.is_zero(), "N={}", n);
        }
        assert!(classical_sigma1(n, &v).is_zero(), "N={}", n);
    }
}

#[test]
fn j_function_fundamental_component() {
    let hbar = Symbol::new(cohomology::HBAR);
    for n in 3..=6 {
        let j = cohomology::j_function(n, 4).unwrap();
        for d in 0..=4 {
            let got = cohomology::drop_log(&j.terms[d].get(SchubertClass::Standard(0)));
            let mono = quadric_mirror::arith::Monomial::from_pairs([(hbar.clone(), -((d * n) as i64))]);
            let want = LP::term(mono, cohomology::hypergeometric_coefficient(n, d));
            assert_eq!(got, want, "N={} d={}", n, d);
        }
    }
}

#[test]
fn dubrovin_connection_flat() {
    for n in 3..=6 {
        assert!(cohomology::connection_flatness_certificate(n, 4).unwrap(), "N={}", n);
    }
}

#[test]
fn pullbacks_over_range() {
    for n in 3..=11 {
        if n % 2 == 0 && n > 10 {
            continue;
        }
        for kind in MapKind::available(n) {
            lg_zoo::verify_pullback(kind, n).unwrap_or_else(|e| panic!("N={} {}: {}", n, kind.label(), e));
        }
    }
}

#[test]
fn odd_maps_compose() {
    for m in 2..=5 {
        let n = 2 * m - 1;
        let via = lg_zoo::coordinate_map(MapKind::CanToPrz, n)
            .unwrap()
            .then(&lg_zoo::coordinate_map(MapKind::PrzToGiv, n).unwrap())
            .unwrap();
        let direct = lg_zoo::coordinate_map(MapKind::CanToGiv, n).unwrap();
        assert_eq!(via.images.len(), direct.images.len());
        for (s, f) in &direct.images {
            assert!(via.images[s].equals(f), "N={} {}", n, s);
        }
    }
}

#[test]
fn delta_telescopes_on_torus() {
    for m in 3..=6 {
        let n = 2 * m - 2;
        for l in 0..=m - 2 {
            let got = lg_zoo::to_lusztig_torus(&RF::from(lg_zoo::delta_affine(n, l)), n).unwrap();
            let mut want = LP::one();
            for i in 1..=m - 2 {
                let a = LP::var(&a_sym(i));
                want = &want * &if i <= l { a.pow(2) } else { a };
            }
            want = &(&want * &LP::named("c")) * &LP::named("d");
            for i in l + 1..=m - 2 {
                want = &want * &LP::var(&b_sym(i));
            }
            assert!(got.equals(&RF::from(want)), "m={} l={}", m, l);
        }
    }
}

#[test]
fn givental_constraints_hold_for_even_images() {
    for m in 3..=6 {
        let n = 2 * m - 2;
        let map = lg_zoo::coordinate_map(MapKind::PrzToCan, n)
            .unwrap();
        let giv = lg_zoo::coordinate_map(MapKind::PrzToGiv, n).unwrap();
        let model = lg_zoo::givental_model(n).unwrap();
        for c in &model.constraints {
            assert!(giv.pull_back(&RF::from(c)).unwrap().is_zero(), "N={}", n);
        }
        // the quadric relation also pulls back to zero through the even map
        let rel = lg_zoo::quadric_relation(n).unwrap();
        let rel = RF::from(lg_zoo::dehomogenize(&rel));
        assert!(map.pull_back(&rel).unwrap().is_zero(), "N={}", n);
    }
}

#[test]
fn quiver_and_exchange() {
    for n in 3..=12 {
        let w = quiver::superpotential_from_quiver(&quiver::quadric_quiver(n).unwrap()).unwrap();
        assert!(w.equals(&lg_zoo::lusztig_model(n).unwrap().superpotential), "N={}", n);
    }
    for m in 3..=6 {
        quiver::verify_exchange_relations(m).unwrap();
        assert!(quiver::last_exchange_minus_quadric(m).unwrap().is_zero(), "m={}", m);
    }
}

#[test]
fn critical_invariants() {
    for n in 3..=8 {
        critical::verify_criticality(n).unwrap();
        let set = critical::closed_form_critical_points(n).unwrap();
        assert_eq!(set.count(), Quadric::new(n).unwrap().basis().len());
        if n % 2 == 1 {
            let q = RootElement::scalar(LP::named("q"));
            for d in critical::deltas_at_main(n).unwrap() {
                assert!(d.equals(&q), "N={}", n);
            }
        }
    }
}

#[test]
fn lie_matrix_conventions() {
    for m in 3..=5 {
        let u = lie_matrix::factored_u2(m).unwrap();
        assert!(lie_matrix::is_orthogonal(&u, m).unwrap());
        for s in m + 1..=2 * m - 3 {
            let mut vars = vec![Symbol::new("d")];
            vars.extend((2 * m - 1 - s..=m - 2).map(b_sym));
            assert_eq!(lie_matrix::column_entry(m, s).unwrap(), LP::product(&vars));
        }
    }
}

#[test]
fn beta_zero_is_gw() {
    for n in 3..=6 {
        let beta = flat_sections::beta_recursion(n, 5).unwrap();
        for k in 1..=5 {
            assert_eq!(beta.get(SchubertClass::Standard(0), k), flat_sections::gw_invariant(n, k).unwrap());
        }
    }
    assert_eq!(flat_sections::gw_invariant(3, 1).unwrap(), int(2));
}
