//! Invariants checked on generated inputs.

use expd_core::cuttings::{verify_cutting, CuttingProvider, GreedyCutter, IntervalCutter, IntervalFamily};
use expd_core::dsl::{parse, Poly, RelationExpr, Var};
use expd_core::es::{cylindrical_witness, delta_degree, DerivedG, DEFAULT_BUDGET};
use expd_core::zarankiewicz::{certified_count, exponent_params, find_kst};
use expd_core::{FiniteRelation2, FiniteRelation3, Rational, Subset, Universe};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    let leaf = prop_oneof![
        prop_oneof![Just(Var::X), Just(Var::Y), Just(Var::Z)].prop_map(Poly::Var),
        (0i64..50).prop_map(|i| Poly::Int(BigInt::from(i))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Mul(Box::new(a), Box::new(b))),
            (inner, 1u32..4).prop_map(|(a, e)| Poly::Pow(Box::new(a), e)),
        ]
    })
}

fn expr() -> impl Strategy<Value = RelationExpr> {
    (poly(), poly(), proptest::option::of(2i64..100)).prop_map(|(lhs, rhs, m)| RelationExpr {
        lhs,
        rhs,
        modulus: m.map(BigInt::from),
    })
}

fn rel2() -> impl Strategy<Value = FiniteRelation2> {
    (1usize..12, 1usize..12).prop_flat_map(|(m, n)| {
        proptest::collection::vec((0..m, 0..n), 0..60).prop_map(move |pairs| {
            FiniteRelation2::build(Universe::new("U", m), Universe::new("V", n), &pairs).unwrap()
        })
    })
}

fn rel3() -> impl Strategy<Value = FiniteRelation3> {
    (1usize..7, 1usize..7, 1usize..7).prop_flat_map(|(a, b, c)| {
        proptest::collection::vec((0..a, 0..b, 0..c), 0..50).prop_map(move |t| {
            let t: Vec<[usize; 3]> = t.into_iter().map(|(x, y, z)| [x, y, z]).collect();
            FiniteRelation3::build(Universe::new("X", a), Universe::new("Y", b), Universe::new("Z", c), &t)
                .unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn mask(n: usize) -> impl Strategy<Value = Vec<bool>> {
    proptest::collection::vec(any::<bool>(), n)
}

fn subset(u: &Universe, keep: &[bool]) -> Subset {
    Subset::from_indices(u, (0..u.size).filter(|&i| keep[i])).unwrap()
}

proptest! {
    #[test]
    fn printing_is_a_parse_fixpoint(e in expr()) {
        let printed = e.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    #[test]
    fn binary_counts_survive_relabeling(
        (rel, pu, pv, ka, kb) in rel2().prop_flat_map(|r| {
            let (m, n) = (r.u().size, r.v().size);
            (Just(r), permutation(m), permutation(n), mask(m), mask(n))
        })
    ) {
        let moved = rel.relabel(&pu, &pv).unwrap();
        let (a, b) = (subset(rel.u(), &ka), subset(rel.v(), &kb));
        let a2 = Subset::from_indices(moved.u(), a.iter().map(|i| pu[i])).unwrap();
        let b2 = Subset::from_indices(moved.v(), b.iter().map(|j| pv[j])).unwrap();
        prop_assert_eq!(rel.count_grid(&a, &b).unwrap(), moved.count_grid(&a2, &b2).unwrap());
        prop_assert_eq!(find_kst(&rel, 2, 2).is_some(), find_kst(&moved, 2, 2).is_some());
    }

    #[test]
    fn ternary_invariants_survive_twists(
        (f, p0, p1, p2) in rel3().prop_flat_map(|f| {
            let [a, b, c] = f.universes().clone().map(|u| u.size);
            (Just(f), permutation(a), permutation(b), permutation(c))
        })
    ) {
        let g = f.relabel([&p0, &p1, &p2]).unwrap();
        prop_assert_eq!(f.count_full(), g.count_full());
        prop_assert_eq!(delta_degree(&f, 3).unwrap(), delta_degree(&g, 3).unwrap());
        prop_assert_eq!(
            DerivedG::new(&f, DEFAULT_BUDGET).unwrap().len(),
            DerivedG::new(&g, DEFAULT_BUDGET).unwrap().len()
        );
        prop_assert_eq!(
            cylindrical_witness(&f, 2).unwrap().is_some(),
            cylindrical_witness(&g, 2).unwrap().is_some()
        );
    }

    #[test]
    fn kst_witnesses_are_complete_blocks(rel in rel2(), s in 1usize..4, t in 1usize..4) {
        if let Some(w) = find_kst(&rel, s, t) {
            prop_assert_eq!(w.s_side.len(), s);
            prop_assert_eq!(w.t_side.len(), t);
            prop_assert!(w.holds_in(&rel));
        }
    }

    #[test]
    fn returned_covers_always_verify(rel in rel2(), keep in mask(12), r in 1u64..6) {
        let a = Subset::from_indices(rel.u(), (0..rel.u().size).filter(|&i| keep[i])).unwrap();
        let greedy = GreedyCutter { cap_cells: 6, d: 2 };
        if let Some(cover) = greedy.cover(&rel, &a, r) {
            prop_assert!(verify_cutting(&rel, &a, r, &cover).unwrap().valid);
        }
    }

    #[test]
    fn interval_covers_verify(count in 1usize..80, points in 1usize..200, seed in any::<u64>(), r in 1u64..20) {
        let rel = IntervalFamily::random(count, points, seed).relation();
        let a = rel.u().full();
        let cover = IntervalCutter.cover(&rel, &a, r).unwrap();
        let rep = verify_cutting(&rel, &a, r, &cover).unwrap();
        prop_assert!(rep.valid);
        prop_assert!(rep.cell_count as u64 <= 2 * r);
    }

    #[test]
    fn certificates_bound_the_exact_count(rel in rel2(), ka in mask(12), kb in mask(12), r in 2u64..5) {
        let a = Subset::from_indices(rel.u(), (0..rel.u().size).filter(|&i| ka[i])).unwrap();
        let b = Subset::from_indices(rel.v(), (0..rel.v().size).filter(|&j| kb[j])).unwrap();
        let params = exponent_params(2, 2, 2, Rational::new(1, 12)).unwrap();
        let cutter = GreedyCutter { cap_cells: 12, d: 2 };
        let cert = certified_count(&rel, &a, &b, &params, &cutter, r, 1).unwrap();
        prop_assert!(cert.total >= rel.count_grid(&a, &b).unwrap() as u64);
        prop_assert!(cert.is_consistent());
    }
}
