mod common;

use common::*;
use gf2dav_core::zerosum::{reducibility_witness, small_davenport, small_davenport_direct, DEFAULT_BUDGET};
use gf2dav_core::{
    davenport_group, davenport_semigroup, Elem, GroupTable, Poly, ProductTable, Provenance, SearchOptions, Seq,
    ZeroSumError,
};
use proptest::prelude::*;

fn search_only() -> SearchOptions {
    SearchOptions::default()
}

fn case(max_degree: u32, max_len: usize) -> impl Strategy<Value = (Poly, Vec<u32>)> {
    (
        (2u64..1 << (max_degree + 1)).prop_map(Poly::from_bits),
        prop::collection::vec(any::<u32>(), 0..=max_len),
    )
}

fn setup((f, raw): (Poly, Vec<u32>)) -> (gf2dav_core::RingCtx, Vec<Elem>) {
    let ctx = ring(&f);
    let t = raw.iter().map(|&r| Elem::from_bits(r % ctx.size() as u32)).collect();
    (ctx, t)
}

#[test]
fn semigroup_search_matches_naive_enumeration() {
    for f in moduli(3) {
        let ctx = ring(&f);
        let d = davenport_semigroup(&ctx, DEFAULT_BUDGET).unwrap();
        assert_eq!(Some(d.value), naive_davenport_semigroup(&ctx, 9), "f = {f}");
        assert_eq!(d.provenance, Provenance::Search);
    }
}

#[test]
fn extremal_sequences_are_irreducible() {
    for f in moduli(4) {
        let ctx = ring(&f);
        let d = davenport_semigroup(&ctx, DEFAULT_BUDGET).unwrap();
        assert_eq!(d.extremal.len(), d.value - 1);
        assert!(!brute_reducible(&ctx, d.extremal.terms()), "f = {f}: {}", d.extremal);

        let u = GroupTable::unit_group(&ctx);
        let du = davenport_group(&u, search_only()).unwrap();
        assert_eq!(du.extremal.len(), du.value - 1);
        let idx: Vec<usize> = du.extremal.iter().map(|e| u.index_of(e).unwrap()).collect();
        assert!(!brute_has_zero_sum(&u, &idx), "f = {f}: {}", du.extremal);
    }
}

#[test]
fn group_search_matches_naive_enumeration() {
    let mut groups = 0;
    for f in moduli(4) {
        let u = GroupTable::unit_group(&ring(&f));
        for h in u.subgroups() {
            for g in [u.subgroup(&h).unwrap(), u.quotient(&h).unwrap()] {
                if g.order() > 8 {
                    continue;
                }
                let d = davenport_group(&g, search_only()).unwrap().value;
                assert_eq!(Some(d), naive_davenport_group(&g, g.order()), "f = {f}, |G| = {}", g.order());
                groups += 1;
            }
        }
    }
    assert!(groups > 50);
}

#[test]
fn units_never_exceed_semigroup() {
    // the six irreducible quintics take most of the time in unoptimized builds
    for f in moduli(5) {
        let ctx = ring(&f);
        if ctx.factorization().is_irreducible() && ctx.degree() == 5 {
            continue;
        }
        let du = davenport_group(&GroupTable::unit_group(&ctx), search_only()).unwrap().value;
        let ds = davenport_semigroup(&ctx, DEFAULT_BUDGET).unwrap().value;
        assert!(du <= ds, "f = {f}: D(U) = {du} > D(S) = {ds}");
    }
}

#[test]
fn small_davenport_is_one_less() {
    for f in moduli(3) {
        let ctx = ring(&f);
        let d = small_davenport(&ctx, DEFAULT_BUDGET).unwrap();
        assert_eq!(small_davenport_direct(&ctx, d + 2), d, "f = {f}");
    }
}

#[test]
fn substitution_x_plus_one_preserves_constants() {
    for f in moduli(4) {
        let g = f.compose_x_plus_one();
        let (cf, cg) = (ring(&f), ring(&g));
        let ds = |c| davenport_semigroup(c, DEFAULT_BUDGET).unwrap().value;
        let du = |c| davenport_group(&GroupTable::unit_group(c), search_only()).unwrap().value;
        assert_eq!((ds(&cf), du(&cf)), (ds(&cg), du(&cg)), "f = {f}, g = {g}");
    }
}

#[test]
fn budget_exhaustion_reports_a_lower_bound() {
    let ctx = ring(&"x^4+x+1".parse().unwrap());
    match davenport_semigroup(&ctx, 1000) {
        Err(ZeroSumError::BudgetExceeded { budget, lower_bound }) => {
            assert_eq!(budget, 1000);
            assert!((1..=15).contains(&lower_bound));
        }
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
    let u = GroupTable::unit_group(&ctx);
    let tight = SearchOptions { budget: 10, cyclic_fast_path: false };
    assert!(matches!(davenport_group(&u, tight), Err(ZeroSumError::BudgetExceeded { .. })));
    let fast = davenport_group(&u, SearchOptions { budget: 10, cyclic_fast_path: true }).unwrap();
    assert_eq!((fast.value, fast.provenance), (15, Provenance::Formula));
    assert_eq!(fast.extremal.len(), 14);
}

proptest! {
    #[test]
    fn table_matches_subset_enumeration(c in case(4, 10)) {
        let (ctx, t) = setup(c);
        let table = ProductTable::build(&ctx, &Seq::new(t.clone()));
        let (all, proper) = brute_subset_products(&ctx, &t);
        prop_assert_eq!(table.all().iter().collect::<Vec<_>>(), all.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(table.proper().iter().collect::<Vec<_>>(), proper.into_iter().collect::<Vec<_>>());
        prop_assert_eq!(table.is_reducible(), brute_reducible(&ctx, &t));
    }

    #[test]
    fn reconstructions_reach_their_targets(c in case(4, 10)) {
        let (ctx, t) = setup(c);
        let table = ProductTable::build(&ctx, &Seq::new(t.clone()));
        for e in table.all().iter() {
            let idx = table.reconstruct_all(e).unwrap();
            prop_assert_eq!(ctx.product(idx.iter().map(|&i| t[i])), e);
            prop_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        }
        for e in table.proper().iter() {
            let idx = table.reconstruct_proper(e).unwrap();
            prop_assert!(idx.len() < t.len());
            prop_assert_eq!(ctx.product(idx.iter().map(|&i| t[i])), e);
        }
    }

    #[test]
    fn reducibility_is_monotone(c in case(4, 8), extra in any::<u32>()) {
        let (ctx, t) = setup(c);
        let mut longer = t.clone();
        longer.push(Elem::from_bits(extra % ctx.size() as u32));
        if brute_reducible(&ctx, &t) {
            prop_assert!(brute_reducible(&ctx, &longer));
            prop_assert!(ProductTable::build(&ctx, &Seq::new(longer)).is_reducible());
        }
    }

    #[test]
    fn witnesses_are_proper_with_equal_product(c in case(4, 10)) {
        let (ctx, t) = setup(c);
        let t = Seq::new(t);
        match reducibility_witness(&ctx, &t) {
            Some(w) => {
                prop_assert!(w.len() < t.len() && w.is_subsequence_of(&t));
                prop_assert_eq!(w.product(&ctx), t.product(&ctx));
            }
            None => prop_assert!(!brute_reducible(&ctx, t.terms())),
        }
    }
}
