mod common;

use std::collections::BTreeSet;

use common::*;
use gf2dav_core::{Elem, Poly, RingCtx, RingError};
use proptest::prelude::*;

fn modulus_upto(max_degree: u32) -> impl Strategy<Value = Poly> {
    (2u64..1 << (max_degree + 1)).prop_map(Poly::from_bits)
}

fn ring_and_elems(max_degree: u32, count: usize) -> impl Strategy<Value = (Poly, Vec<u32>)> {
    (modulus_upto(max_degree), prop::collection::vec(any::<u32>(), count))
}

/// Reduces the raw draws into the residue range of `f`.
fn setup((f, raw): (Poly, Vec<u32>)) -> (RingCtx, Vec<Elem>) {
    let ctx = ring(&f);
    let es = raw.iter().map(|&r| Elem::from_bits(r % ctx.size() as u32)).collect();
    (ctx, es)
}

#[test]
fn unit_count_matches_euler_formula() {
    for f in moduli(5) {
        let ctx = ring(&f);
        assert_eq!(ctx.units().len(), euler_phi(&ctx), "f = {f}");
    }
}

#[test]
fn units_are_the_invertible_elements() {
    for f in moduli(4) {
        let ctx = ring(&f);
        assert_eq!(ctx.units().members(), brute_units(&ctx).as_slice(), "f = {f}");
        for a in ctx.elements() {
            match ctx.inverse(a) {
                Ok(b) => assert_eq!(ctx.mul(a, b), Elem::ONE),
                Err(e) => assert_eq!(e, RingError::NotAUnit(a)),
            }
        }
    }
}

#[test]
fn every_stabilizer_is_a_subgroup() {
    for f in moduli(5) {
        let ctx = ring(&f);
        for c in ctx.elements() {
            let st = ctx.stabilizer(c);
            assert!(st.is_subgroup(&ctx), "f = {f}, c = {c}");
        }
        assert_eq!(ctx.stabilizer(Elem::ZERO).len(), ctx.units().len());
        assert_eq!(ctx.stabilizer(Elem::ONE).len(), 1);
    }
}

#[test]
fn h_equivalence_is_profile_equality() {
    for f in moduli(4) {
        let ctx = ring(&f);
        for a in ctx.elements() {
            for b in ctx.elements() {
                let mutual = ctx.leq_h_by_scan(a, b) && ctx.leq_h_by_scan(b, a);
                assert_eq!(ctx.h_equiv(a, b), mutual, "f = {f}, ({a}, {b})");
                assert_eq!(ctx.h_equiv(a, b), ctx.profile(a) == ctx.profile(b));
                if ctx.h_equiv(a, b) {
                    assert_eq!(ctx.stabilizer(a), ctx.stabilizer(b));
                }
            }
        }
    }
}

/// Pairs `a <_H b` whose stabilizers differ although the positivity test
/// returns zero or less. These are logged, not asserted: the test is only a
/// sufficient condition.
#[test]
fn strict_containment_beyond_the_positivity_test() {
    let mut logged = 0;
    for f in moduli(5) {
        let ctx = ring(&f);
        for a in ctx.elements() {
            for b in ctx.elements() {
                if !ctx.lt_h(a, b) {
                    continue;
                }
                let strict = ctx.stabilizer(b).len() < ctx.stabilizer(a).len();
                let cond = ctx.separation_condition(a, b);
                if cond > 0 {
                    assert!(strict, "f = {f}: condition {cond} > 0 but St({b}) = St({a})");
                } else if strict {
                    logged += 1;
                    println!("f = {f}: St({b}) < St({a}) with condition {cond}");
                }
            }
        }
    }
    println!("{logged} strict pairs not detected by the positivity test");
}

proptest! {
    #[test]
    fn multiplication_agrees_with_polynomial_arithmetic(case in ring_and_elems(12, 3)) {
        let (ctx, es) = setup(case);
        let f = *ctx.modulus();
        let (a, b, c) = (es[0], es[1], es[2]);
        let expected = (a.theta() * b.theta()).rem(&f).unwrap();
        prop_assert_eq!(ctx.mul(a, b).theta(), expected);
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.pow(a, 3), ctx.product([a, a, a]));
        prop_assert_eq!(ctx.pow(a, 0), Elem::ONE);
    }

    #[test]
    fn leq_h_profile_matches_scan(case in ring_and_elems(6, 2)) {
        let (ctx, es) = setup(case);
        prop_assert_eq!(ctx.leq_h(es[0], es[1]), ctx.leq_h_by_scan(es[0], es[1]));
    }

    #[test]
    fn crt_lift_contract(case in ring_and_elems(8, 1), mask in any::<u8>()) {
        let (ctx, es) = setup(case);
        let a = es[0];
        let r = ctx.factor_count();
        let j: BTreeSet<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        let needs_lift = (0..r).filter(|i| !j.contains(i)).any(|i| a.theta().is_divisible_by(ctx.factor(i)));
        match ctx.crt_lift(a, &j) {
            Ok(l) => {
                prop_assert!(!needs_lift);
                prop_assert!(ctx.is_unit(l));
                for i in 0..r {
                    let q = &ctx.prime_powers()[i];
                    let want = if j.contains(&i) { Poly::ONE } else { a.theta() };
                    prop_assert!((l.theta() + want).is_divisible_by(q), "component {}", i);
                }
            }
            Err(e) => {
                prop_assert!(needs_lift);
                let is_precondition = matches!(e, RingError::LiftPrecondition { .. });
                prop_assert!(is_precondition);
            }
        }
    }

    #[test]
    fn profile_reads_gcd_with_modulus(case in ring_and_elems(10, 1)) {
        let (ctx, es) = setup(case);
        let a = es[0];
        let g = ctx.gcd_with_modulus(a);
        let rebuilt = ctx
            .profile(a)
            .alphas
            .iter()
            .enumerate()
            .fold(Poly::ONE, |acc, (i, &k)| (0..k).fold(acc, |acc, _| acc * *ctx.factor(i)));
        prop_assert_eq!(rebuilt, g);
        prop_assert_eq!(ctx.is_unit(a), g.is_one());
    }
}
