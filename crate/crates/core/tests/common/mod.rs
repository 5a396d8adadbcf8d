//! Brute-force oracles shared by the integration tests. Nothing here uses the
//! product tables or pruned searches it is checking.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gf2dav_core::{Elem, GroupTable, Poly, RingCtx};
use rand::Rng;

/// Every nonconstant modulus of degree `1..=max_degree`, in bit order.
pub fn moduli(max_degree: usize) -> Vec<Poly> {
    (2u64..1 << (max_degree + 1)).map(Poly::from_bits).collect()
}

pub fn ring(f: &Poly) -> RingCtx {
    RingCtx::new(*f).expect("nonconstant modulus")
}

/// All nondecreasing index sequences of length `len` over `0..n`.
pub fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, len, 0, &mut Vec::new(), &mut out);
    out
}

/// Products over all subsets and over proper subsets, by enumerating masks.
pub fn brute_subset_products(ctx: &RingCtx, t: &[Elem]) -> (BTreeSet<Elem>, BTreeSet<Elem>) {
    let n = t.len();
    let full = (1u32 << n) - 1;
    let mut all = BTreeSet::new();
    let mut proper = BTreeSet::new();
    for mask in 0..=full {
        let p = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Elem::ONE, |acc, i| ctx.mul(acc, t[i]));
        all.insert(p);
        if mask != full {
            proper.insert(p);
        }
    }
    (all, proper)
}

pub fn brute_reducible(ctx: &RingCtx, t: &[Elem]) -> bool {
    let sigma = t.iter().fold(Elem::ONE, |acc, &e| ctx.mul(acc, e));
    brute_subset_products(ctx, t).1.contains(&sigma)
}

/// Smallest `l <= max_len` such that every sequence of length `l` over `S_R`
/// is reducible, found by testing every multiset with [`brute_reducible`].
pub fn naive_davenport_semigroup(ctx: &RingCtx, max_len: usize) -> Option<usize> {
    let elems: Vec<Elem> = ctx.elements().collect();
    (1..=max_len).find(|&len| {
        multisets(elems.len(), len)
            .iter()
            .all(|m| brute_reducible(ctx, &m.iter().map(|&i| elems[i]).collect::<Vec<_>>()))
    })
}

/// Whether some nonempty subsequence multiplies to the identity.
pub fn brute_has_zero_sum(g: &GroupTable, t: &[usize]) -> bool {
    let n = t.len();
    (1u32..(1 << n)).any(|mask| {
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(g.identity(), |acc, i| g.op(acc, t[i]))
            == g.identity()
    })
}

/// Smallest `l <= max_len` such that every length-`l` sequence over `g` has a
/// nonempty zero-sum subsequence.
pub fn naive_davenport_group(g: &GroupTable, max_len: usize) -> Option<usize> {
    (1..=max_len).find(|&len| multisets(g.order(), len).iter().all(|m| brute_has_zero_sum(g, m)))
}

pub fn random_seq(rng: &mut impl Rng, ctx: &RingCtx, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| Elem::from_bits(rng.gen_range(0..ctx.size() as u32)))
        .collect()
}

/// `|U(F_2[x]/(f))|` from the factorization: `∏ (2^{d n} − 2^{d (n−1)})`.
pub fn euler_phi(ctx: &RingCtx) -> usize {
    ctx.factorization()
        .factors()
        .iter()
        .map(|(p, n)| {
            let d = p.degree().unwrap() as u32;
            (1usize << (d * n)) - (1usize << (d * (n - 1)))
        })
        .product()
}

/// Units found by searching for an inverse, not by a gcd test.
pub fn brute_units(ctx: &RingCtx) -> Vec<Elem> {
    ctx.elements()
        .filter(|&a| ctx.elements().any(|b| ctx.mul(a, b) == Elem::ONE))
        .collect()
}

/// `D(U)` by testing every multiset of units for a nonempty subset with
/// product `1`.
pub fn naive_davenport_units(ctx: &RingCtx, max_len: usize) -> Option<usize> {
    let units = brute_units(ctx);
    (1..=max_len).find(|&len| {
        multisets(units.len(), len).iter().all(|m| {
            (1u32..1 << len).any(|mask| {
                (0..len)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(Elem::ONE, |acc, i| ctx.mul(acc, units[m[i]]))
                    == Elem::ONE
            })
        })
    })
}

/// `δ_f` from evaluating `f` at 0 and 1.
pub fn naive_delta(f: &Poly) -> usize {
    let at_zero = f.coeff(0);
    let at_one = f.weight() % 2 == 1;
    usize::from(!at_zero) + usize::from(!at_one)
}
