//! Optional property suites run by `verify` over every modulus it covered.

use gf2dav_core::zerosum::small_davenport_direct;
use gf2dav_core::{
    davenport_group, reduce_sequence, Elem, GroupTable, ProductTable, ReductionPath, RingCtx, SearchOptions, Seq,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::VerifyRecord;

/// Random sequences per modulus in the reduction suite.
pub const REDUCE_SAMPLES: usize = 100;
/// The direct small-Davenport computation enumerates every multiset, so it
/// is only run up to this degree.
pub const SMALL_DAVENPORT_MAX_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Quotient,
    UnitsBound,
    GreenOrder,
    SmallDavenport,
    Reduce,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Quotient, Suite::UnitsBound, Suite::GreenOrder, Suite::SmallDavenport, Suite::Reduce];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quotient => "quotient",
            Suite::UnitsBound => "units-bound",
            Suite::GreenOrder => "green-order",
            Suite::SmallDavenport => "small-davenport",
            Suite::Reduce => "reduce",
        }
    }
}

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub skipped: usize,
    pub proof_path: usize,
    /// Sequences sampled with length in `D_U..D_U + delta`, and how many of
    /// them were reducible. Reported, not checked.
    pub band_sampled: usize,
    pub band_reducible: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.proof_path += other.proof_path;
        self.band_sampled += other.band_sampled;
        self.band_reducible += other.band_reducible;
        self.failures.extend(other.failures);
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }
}

pub fn run(suite: Suite, ctx: &RingCtx, rec: &VerifyRecord, opts: SearchOptions) -> Tally {
    match suite {
        Suite::Quotient => quotient(ctx, rec, opts),
        Suite::UnitsBound => {
            let mut t = Tally::default();
            t.check(rec.d_u <= rec.d_s, || format!("f = {}: D_U > D_S", rec.f));
            t
        }
        Suite::GreenOrder => green_order(ctx),
        Suite::SmallDavenport => small_davenport(ctx, rec),
        Suite::Reduce => reduce(ctx, rec),
    }
}

fn quotient(ctx: &RingCtx, rec: &VerifyRecord, opts: SearchOptions) -> Tally {
    let mut t = Tally::default();
    let u = GroupTable::unit_group(ctx);
    for h in u.subgroups() {
        let dh = u.subgroup(&h).ok().and_then(|g| davenport_group(&g, opts).ok());
        let dq = u.quotient(&h).ok().and_then(|g| davenport_group(&g, opts).ok());
        match (dh, dq) {
            (Some(dh), Some(dq)) => t.check(rec.d_u + 1 >= dh.value + dq.value, || {
                format!(
                    "f = {}, |H| = {}: D(U) = {}, D(U/H) = {}, D(H) = {}",
                    rec.f,
                    h.len(),
                    rec.d_u,
                    dq.value,
                    dh.value
                )
            }),
            _ => t.skipped += 1,
        }
    }
    t
}

fn green_order(ctx: &RingCtx) -> Tally {
    let mut t = Tally::default();
    let f = ctx.modulus();
    let stabs: Vec<_> = ctx.elements().map(|a| ctx.stabilizer(a)).collect();
    for a in ctx.elements() {
        for b in ctx.elements() {
            let (pa, pb) = (ctx.profile(a), ctx.profile(b));
            let (sa, sb) = (&stabs[a.index()], &stabs[b.index()]);
            let le = ctx.leq_h_by_scan(a, b);
            let ge = ctx.leq_h_by_scan(b, a);
            t.check(!le || (sb.is_subset(sa) && pb.dominated_by(&pa)), || {
                format!("f = {f}: {a} <=_H {b} without stabilizer containment or profile dominance")
            });
            t.check(pa != pb || (le && ge), || format!("f = {f}: equal profiles but {a}, {b} not H-equivalent"));
            if le && !ge && ctx.separation_condition(a, b) > 0 {
                let scanned = ctx.find_separating_unit(a, b);
                t.check(scanned.is_some(), || format!("f = {f}: no unit separates {a} from {b}"));
                let built = ctx.construct_separating_unit(a, b);
                t.check(
                    built.is_some_and(|(d, _)| ctx.is_unit(d) && ctx.mul(d, a) == a && ctx.mul(d, b) != b),
                    || format!("f = {f}: constructed witness fails for ({a}, {b}): {built:?}"),
                );
            }
        }
    }
    t
}

fn small_davenport(ctx: &RingCtx, rec: &VerifyRecord) -> Tally {
    let mut t = Tally::default();
    if ctx.degree() > SMALL_DAVENPORT_MAX_DEGREE {
        t.skipped += 1;
        return t;
    }
    let direct = small_davenport_direct(ctx, rec.d_s + 1);
    t.check(direct + 1 == rec.d_s, || format!("f = {}: direct d = {direct}, D_S = {}", rec.f, rec.d_s));
    t
}

fn reduce(ctx: &RingCtx, rec: &VerifyRecord) -> Tally {
    let mut t = Tally::default();
    let bits = ctx.modulus().to_u64().expect("verify moduli fit in a word");
    let mut rng = ChaCha8Rng::seed_from_u64(0x6766_3264_6176 ^ bits);
    let len = rec.d_u + rec.delta as usize;
    for _ in 0..REDUCE_SAMPLES {
        let s: Seq = (0..len)
            .map(|_| Elem::from_bits(rng.gen_range(0..ctx.size() as u32)))
            .collect();
        match reduce_sequence(ctx, &s) {
            Ok(trace) => {
                let r = &trace.result;
                let ok = r.len() < s.len() && r.is_subsequence_of(&s) && r.product(ctx) == s.product(ctx);
                t.check(ok, || format!("f = {}: bad reduction of {s} to {r}", rec.f));
                t.proof_path += usize::from(trace.path == ReductionPath::ProofPath);
            }
            Err(e) => t.check(false, || format!("f = {}: {e}", rec.f)),
        }
    }
    for band_len in rec.d_u..len {
        for _ in 0..REDUCE_SAMPLES {
            let s: Seq = (0..band_len)
                .map(|_| Elem::from_bits(rng.gen_range(0..ctx.size() as u32)))
                .collect();
            t.band_sampled += 1;
            t.band_reducible += usize::from(ProductTable::build(ctx, &s).is_reducible());
        }
    }
    t
}
