//! Reducing a long sequence to a proper subsequence with the same product.
//!
//! Pipeline for a sequence `T` over `R = GF(2)[x]/(f)`:
//!
//! 1. pick a subsequence `V` whose product is H-equivalent to `σ(T)`, each
//!    term strictly lowering the Green class of the running product;
//! 2. form the stabilizer chain `K_0 ⊆ K_1 ⊆ … ⊆ K_t` of the prefix products;
//! 3. let `J` be the factors whose full prime power divides `σ(T)`;
//! 4. replace each remaining term by its CRT lift, a unit that agrees with the
//!    term away from `J` and is `1` on `J`;
//! 5. find a nonempty `W` among the remaining terms whose lifted product lies
//!    in `K_t`, and drop it.
//!
//! When `|T| ≥ D(U) + δ_f` step 5 always succeeds for a shortest `V`. A greedy
//! `V` is used here, so the result is checked, and an exact subset-product
//! search is the fallback.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gf2poly::{self, Poly, PolyError};
use crate::ring::{Elem, ElemSet, RingCtx, UnitSet};
use crate::zerosum::{self, ProductTable, Seq};

/// `δ_f`: how many of `x`, `x+1` divide `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaClass {
    pub value: u8,
    /// `gcd(x(x+1), f)`.
    pub gcd_with_x_x1: Poly,
}

pub fn delta_f(f: &Poly) -> Result<DeltaClass, PolyError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(PolyError::Constant(*f));
    }
    let g = gf2poly::gcd(&(Poly::X * Poly::X_PLUS_ONE), f)?;
    let value = if g.is_one() {
        0
    } else if g == Poly::X || g == Poly::X_PLUS_ONE {
        1
    } else {
        2
    };
    Ok(DeltaClass { value, gcd_with_x_x1: g })
}

/// Greedy `V`, as positions into `t` in chain order.
///
/// Each step takes the unused term that strictly raises the gcd profile of
/// the running product by the largest total amount; ties go to the smaller
/// element, then the earlier position.
pub fn select_v_indices(ctx: &RingCtx, t: &Seq) -> Vec<usize> {
    let target = ctx.profile(t.product(ctx));
    let mut used = vec![false; t.len()];
    let mut order = Vec::new();
    let mut cur = Elem::ONE;
    let mut cur_profile = ctx.profile(cur);
    while cur_profile != target {
        let mut pick: Option<(u32, Elem, usize)> = None;
        for (i, a) in t.iter().enumerate().filter(|(i, _)| !used[*i]) {
            let p = ctx.profile(ctx.mul(cur, a));
            if p == cur_profile {
                continue;
            }
            let gain = p.total() - cur_profile.total();
            let better = match pick {
                None => true,
                Some((g, e, _)) => gain > g || (gain == g && a < e),
            };
            if better {
                pick = Some((gain, a, i));
            }
        }
        let (_, a, i) = pick.expect("an unused term always makes progress below the target");
        used[i] = true;
        order.push(i);
        cur = ctx.mul(cur, a);
        cur_profile = ctx.profile(cur);
    }
    order
}

pub fn select_v(ctx: &RingCtx, t: &Seq) -> Seq {
    t.select(&select_v_indices(ctx, t))
}

/// Largest input accepted by [`shortest_v`].
pub const SHORTEST_V_MAX_LEN: usize = 20;

/// A globally shortest `V` by exhaustive search over subsets in order of size.
/// Returns `None` for inputs longer than [`SHORTEST_V_MAX_LEN`].
pub fn shortest_v(ctx: &RingCtx, t: &Seq) -> Option<Seq> {
    let n = t.len();
    if n > SHORTEST_V_MAX_LEN {
        return None;
    }
    let target = ctx.profile(t.product(ctx));
    for k in 0..=n {
        let found = subsets_of_size(n, k).find(|&mask| {
            let p = ctx.product((0..n).filter(|i| mask >> i & 1 == 1).map(|i| t.terms()[i]));
            ctx.profile(p) == target
        });
        if let Some(mask) = found {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            return Some(t.select(&idx));
        }
    }
    unreachable!("the full sequence always qualifies")
}

/// Bitmasks over `n` bits with exactly `k` set, ascending (Gosper's hack).
fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit = 1u64 << n;
    let mut next = if k == 0 { Some(0u64) } else { Some((1u64 << k) - 1) };
    std::iter::from_fn(move || {
        let cur = next.filter(|&c| c < limit)?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur as u32)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerChain {
    /// `K_0 = {1}` then `K_i = St(a_1 ⋯ a_i)`.
    pub chain: Vec<UnitSet>,
    /// `M`: the steps `i` with `K_i ⊊ K_{i+1}`.
    pub strict_steps: Vec<usize>,
}

pub fn stabilizer_chain(ctx: &RingCtx, v: &Seq) -> StabilizerChain {
    let mut chain = vec![UnitSet::from_elems(ctx.size(), [Elem::ONE])];
    let mut prefix = Elem::ONE;
    for a in v.iter() {
        prefix = ctx.mul(prefix, a);
        chain.push(ctx.stabilizer(prefix));
    }
    let strict_steps = (0..v.len())
        .filter(|&i| chain[i].len() < chain[i + 1].len())
        .collect();
    StabilizerChain { chain, strict_steps }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionPath {
    ProofPath,
    DpFallback,
}

impl fmt::Display for ReductionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionPath::ProofPath => "proof-path",
            ReductionPath::DpFallback => "dp-fallback",
        })
    }
}

/// Everything the reduction computed, for reporting and checking.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub input: Seq,
    pub v: Seq,
    pub j: BTreeSet<usize>,
    pub chain: Vec<UnitSet>,
    pub strict_steps: Vec<usize>,
    pub delta: DeltaClass,
    /// Whether `|M| ≥ |V| − δ_f` held for this `V`.
    pub counting_holds: bool,
    /// `(a, ã)` for each term outside `V`.
    pub lifted: Vec<(Elem, Elem)>,
    /// The removed terms.
    pub w: Seq,
    pub result: Seq,
    pub path: ReductionPath,
}

/// Proof that no proper subsequence has the same product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityCertificate {
    pub sequence: Seq,
    pub sigma: Elem,
    /// Every product over a proper subsequence; `sigma` is not among them.
    pub proper_products: ElemSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("sequence {} is irreducible: its product {} is not reached by any proper subsequence", .0.sequence, .0.sigma)]
    Irreducible(Box<IrreducibilityCertificate>),
}

pub fn reduce_sequence(ctx: &RingCtx, t: &Seq) -> Result<ReductionTrace, ReduceError> {
    let delta = delta_f(ctx.modulus()).expect("ring modulus is nonconstant");
    let sigma = t.product(ctx);

    let v_idx = select_v_indices(ctx, t);
    let v = t.select(&v_idx);
    let StabilizerChain { chain, strict_steps } = stabilizer_chain(ctx, &v);
    let counting_holds = strict_steps.len() + delta.value as usize >= v.len();

    let theta = sigma.theta();
    let j: BTreeSet<usize> = (0..ctx.factor_count())
        .filter(|&i| theta.is_divisible_by(&ctx.prime_powers()[i]))
        .collect();

    let in_v: BTreeSet<usize> = v_idx.iter().copied().collect();
    let rest_idx: Vec<usize> = (0..t.len()).filter(|i| !in_v.contains(i)).collect();
    // The lift precondition holds whenever σ(V) and σ(T) share a profile, so an
    // error here means the greedy V went wrong and the fallback takes over.
    let lifted: Result<Vec<(Elem, Elem)>, _> = rest_idx
        .iter()
        .map(|&i| ctx.crt_lift(t.terms()[i], &j).map(|l| (t.terms()[i], l)))
        .collect();

    let k_t = chain.last().expect("chain holds K_0");
    let proof = lifted.as_ref().ok().and_then(|lifted| {
        let lifted_seq: Seq = lifted.iter().map(|&(_, l)| l).collect();
        zerosum::subset_indices_with_product_in(ctx, &lifted_seq, k_t)
            .map(|w| w.iter().map(|&k| rest_idx[k]).collect::<Vec<usize>>())
            .filter(|w| !w.is_empty() && t.without(w).product(ctx) == sigma)
    });
    let lifted = lifted.unwrap_or_default();

    let (removed, path) = match proof {
        Some(w) => (w, ReductionPath::ProofPath),
        None => {
            let table = ProductTable::build(ctx, t);
            let keep = match table.reconstruct_proper(sigma).filter(|_| table.is_reducible()) {
                Some(keep) => keep,
                None => {
                    return Err(ReduceError::Irreducible(Box::new(IrreducibilityCertificate {
                        sequence: t.clone(),
                        sigma,
                        proper_products: table.proper().clone(),
                    })))
                }
            };
            let keep: BTreeSet<usize> = keep.into_iter().collect();
            let removed: Vec<usize> = (0..t.len()).filter(|i| !keep.contains(i)).collect();
            (removed, ReductionPath::DpFallback)
        }
    };

    let result = t.without(&removed);
    assert!(
        !removed.is_empty() && result.product(ctx) == sigma,
        "reduction produced a subsequence with a different product"
    );
    Ok(ReductionTrace {
        input: t.clone(),
        v,
        j,
        chain,
        strict_steps,
        delta,
        counting_holds,
        lifted,
        w: t.select(&removed),
        result,
        path,
    })
}
