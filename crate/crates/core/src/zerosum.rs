//! Davenport constants of `S_R` and of finite abelian groups by exact search.
//!
//! Reducibility is decided with an incremental subset-product table: appending
//! a term `a` maps `(all, proper)` to `(all ∪ all·a, all ∪ proper·a)`, and `T`
//! is reducible iff `σ(T) ∈ proper`. Because appending a term preserves
//! reducibility, the depth-first search over nondecreasing multisets prunes
//! any reducible node together with its whole subtree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::ring::{Elem, ElemSet, RingCtx, UnitSet};

/// Default DFS node budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZeroSumError {
    #[error("search budget of {budget} nodes exhausted; best lower bound D >= {lower_bound}")]
    BudgetExceeded { budget: u64, lower_bound: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
}

/// A finite sequence of ring elements. Equality is multiset equality; the
/// stored order is kept because some callers build chains along it.
#[derive(Clone, Debug, Default, Eq)]
pub struct Seq {
    terms: Vec<Elem>,
}

impl Seq {
    pub fn new(terms: Vec<Elem>) -> Self {
        Seq { terms }
    }

    pub fn empty() -> Self {
        Seq::default()
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.terms.iter().copied()
    }

    pub fn push(&mut self, e: Elem) {
        self.terms.push(e);
    }

    /// `σ(T)`; the empty product is 1.
    pub fn product(&self, ctx: &RingCtx) -> Elem {
        ctx.product(self.iter())
    }

    /// Multiplicity map `a -> v_a(T)`.
    pub fn counts(&self) -> BTreeMap<Elem, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.terms {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    pub fn is_subsequence_of(&self, other: &Seq) -> bool {
        let theirs = other.counts();
        self.counts()
            .iter()
            .all(|(e, n)| theirs.get(e).is_some_and(|m| m >= n))
    }

    /// Terms at the given positions, in the given order.
    pub fn select(&self, indices: &[usize]) -> Seq {
        Seq::new(indices.iter().map(|&i| self.terms[i]).collect())
    }

    /// The sequence with the given positions removed.
    pub fn without(&self, indices: &[usize]) -> Seq {
        let drop: BTreeSet<usize> = indices.iter().copied().collect();
        Seq::new(
            self.terms
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, &e)| e)
                .collect(),
        )
    }

    /// `T · W^{[-1]}` as multisets. Returns `None` unless `w` divides `self`.
    pub fn remove_multiset(&self, w: &Seq) -> Option<Seq> {
        let mut left = self.terms.clone();
        for e in w.iter() {
            let i = left.iter().position(|&x| x == e)?;
            left.remove(i);
        }
        Some(Seq::new(left))
    }

    pub fn sorted(&self) -> Seq {
        let mut t = self.terms.clone();
        t.sort_unstable();
        Seq::new(t)
    }
}

impl PartialEq for Seq {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.sorted().terms == other.sorted().terms
    }
}

impl FromIterator<Elem> for Seq {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        Seq::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug)]
enum Reach {
    Empty,
    Append { term: usize, pred: Elem },
}

#[derive(Clone, Copy, Debug)]
enum ProperReach {
    /// Already a full-subset product before the newest term, which is left out.
    Prefix,
    Append { term: usize, pred: Elem },
}

/// Subset products of a sequence, split into all subsets and proper subsets,
/// with one predecessor record per reached product.
#[derive(Clone, Debug)]
pub struct ProductTable {
    terms: Vec<Elem>,
    all: ElemSet,
    proper: ElemSet,
    all_from: Vec<Option<Reach>>,
    proper_from: Vec<Option<ProperReach>>,
    sigma: Elem,
}

impl ProductTable {
    pub fn new(ctx: &RingCtx) -> Self {
        let size = ctx.size();
        let mut all = ElemSet::new(size);
        all.insert(Elem::ONE);
        let mut all_from = vec![None; size];
        all_from[Elem::ONE.index()] = Some(Reach::Empty);
        ProductTable {
            terms: Vec::new(),
            all,
            proper: ElemSet::new(size),
            all_from,
            proper_from: vec![None; size],
            sigma: Elem::ONE,
        }
    }

    pub fn build(ctx: &RingCtx, t: &Seq) -> Self {
        let mut table = ProductTable::new(ctx);
        for e in t.iter() {
            table.push(ctx, e);
        }
        table
    }

    pub fn push(&mut self, ctx: &RingCtx, a: Elem) {
        let k = self.terms.len();
        let old_all: Vec<Elem> = self.all.iter().collect();
        let old_proper: Vec<Elem> = self.proper.iter().collect();
        for &s in &old_all {
            if self.proper.insert(s) {
                self.proper_from[s.index()] = Some(ProperReach::Prefix);
            }
        }
        for &p in &old_proper {
            let q = ctx.mul(p, a);
            if self.proper.insert(q) {
                self.proper_from[q.index()] = Some(ProperReach::Append { term: k, pred: p });
            }
        }
        for &s in &old_all {
            let q = ctx.mul(s, a);
            if self.all.insert(q) {
                self.all_from[q.index()] = Some(Reach::Append { term: k, pred: s });
            }
        }
        self.terms.push(a);
        self.sigma = ctx.mul(self.sigma, a);
    }

    pub fn terms(&self) -> &[Elem] {
        &self.terms
    }

    /// Products over every subset, including the empty and the full one.
    pub fn all(&self) -> &ElemSet {
        &self.all
    }

    /// Products over proper subsets.
    pub fn proper(&self) -> &ElemSet {
        &self.proper
    }

    pub fn sigma(&self) -> Elem {
        self.sigma
    }

    pub fn is_reducible(&self) -> bool {
        self.proper.contains(self.sigma)
    }

    /// Positions of a subset multiplying to `e`, ascending.
    pub fn reconstruct_all(&self, e: Elem) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = e;
        loop {
            match self.all_from.get(cur.index()).copied().flatten()? {
                Reach::Empty => break,
                Reach::Append { term, pred } => {
                    out.push(term);
                    cur = pred;
                }
            }
        }
        out.reverse();
        Some(out)
    }

    /// Positions of a proper subset multiplying to `e`, ascending.
    pub fn reconstruct_proper(&self, e: Elem) -> Option<Vec<usize>> {
        let mut tail = Vec::new();
        let mut cur = e;
        loop {
            match self.proper_from.get(cur.index()).copied().flatten()? {
                ProperReach::Prefix => break,
                ProperReach::Append { term, pred } => {
                    tail.push(term);
                    cur = pred;
                }
            }
        }
        let mut out = self.reconstruct_all(cur)?;
        tail.reverse();
        out.extend(tail);
        Some(out)
    }
}

/// A proper subsequence with the same product, or `None` iff `t` is irreducible.
pub fn reducibility_witness(ctx: &RingCtx, t: &Seq) -> Option<Seq> {
    reducibility_witness_indices(ctx, t).map(|idx| t.select(&idx))
}

/// Positions of a proper subsequence with the same product.
pub fn reducibility_witness_indices(ctx: &RingCtx, t: &Seq) -> Option<Vec<usize>> {
    let table = ProductTable::build(ctx, t);
    if !table.is_reducible() {
        return None;
    }
    table.reconstruct_proper(table.sigma())
}

/// Where a Davenport value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Search,
    /// `D(C_m) = m`, used only after the search budget ran out.
    Formula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Search => "search",
            Provenance::Formula => "formula",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DavenportValue {
    pub value: usize,
    /// A longest irreducible (zero-sum-free, for groups) sequence.
    pub extremal: Seq,
    pub provenance: Provenance,
    /// DFS nodes visited.
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub cyclic_fast_path: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            cyclic_fast_path: false,
        }
    }
}

struct Exhausted;

struct SemigroupSearch<'a> {
    ctx: &'a RingCtx,
    frames: Vec<(ElemSet, ElemSet)>,
    path: Vec<Elem>,
    best: Vec<Elem>,
    nodes: u64,
    budget: u64,
}

impl SemigroupSearch<'_> {
    fn descend(&mut self, start: u32, sigma: Elem) -> Result<(), Exhausted> {
        let depth = self.path.len();
        let size = self.ctx.size();
        if self.frames.len() <= depth + 1 {
            self.frames.push((ElemSet::new(size), ElemSet::new(size)));
        }
        for e in (start..size as u32).map(Elem::from_bits) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Exhausted);
            }
            let sigma2 = self.ctx.mul(sigma, e);
            let (head, tail) = self.frames.split_at_mut(depth + 1);
            let (all, proper) = &head[depth];
            let (next_all, next_proper) = &mut tail[0];
            if all.contains(sigma2) {
                continue;
            }
            next_proper.copy_from(all);
            for p in proper.iter() {
                next_proper.insert(self.ctx.mul(p, e));
            }
            if next_proper.contains(sigma2) {
                continue;
            }
            next_all.copy_from(all);
            for s in all.iter() {
                next_all.insert(self.ctx.mul(s, e));
            }
            self.path.push(e);
            if self.path.len() > self.best.len() {
                self.best = self.path.clone();
            }
            let r = self.descend(e.bits(), sigma2);
            self.path.pop();
            r?;
        }
        Ok(())
    }
}

/// `D(S_R)`: one more than the longest irreducible sequence.
pub fn davenport_semigroup(ctx: &RingCtx, budget: u64) -> Result<DavenportValue, ZeroSumError> {
    let size = ctx.size();
    let mut root_all = ElemSet::new(size);
    root_all.insert(Elem::ONE);
    let mut search = SemigroupSearch {
        ctx,
        frames: vec![(root_all, ElemSet::new(size))],
        path: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget,
    };
    match search.descend(0, Elem::ONE) {
        Ok(()) => Ok(DavenportValue {
            value: search.best.len() + 1,
            extremal: Seq::new(search.best),
            provenance: Provenance::Search,
            nodes: search.nodes,
        }),
        Err(Exhausted) => Err(ZeroSumError::BudgetExceeded {
            budget,
            lower_bound: search.best.len() + 1,
        }),
    }
}

/// `d(S_R) = D(S_R) − 1`.
pub fn small_davenport(ctx: &RingCtx, budget: u64) -> Result<usize, ZeroSumError> {
    davenport_semigroup(ctx, budget).map(|d| d.value - 1)
}

/// `d(S_R)` straight from its definition: the largest, over all sequences of
/// length at most `max_len`, of the smallest subset size that reproduces the
/// full product. Enumerates every multiset without pruning.
pub fn small_davenport_direct(ctx: &RingCtx, max_len: usize) -> usize {
    fn walk(ctx: &RingCtx, start: u32, sigma: Elem, min_size: &mut Vec<Vec<u32>>, depth: usize, max_len: usize, best: &mut usize) {
        let need = min_size[depth][sigma.index()] as usize;
        *best = (*best).max(need);
        if depth == max_len {
            return;
        }
        if min_size.len() <= depth + 1 {
            min_size.push(vec![u32::MAX; ctx.size()]);
        }
        for e in (start..ctx.size() as u32).map(Elem::from_bits) {
            let (head, tail) = min_size.split_at_mut(depth + 1);
            let (cur, next) = (&head[depth], &mut tail[0]);
            next.copy_from_slice(cur);
            for (s, &k) in cur.iter().enumerate() {
                if k != u32::MAX {
                    let q = ctx.mul(Elem::from_bits(s as u32), e).index();
                    next[q] = next[q].min(k + 1);
                }
            }
            walk(ctx, e.bits(), ctx.mul(sigma, e), min_size, depth + 1, max_len, best);
        }
    }
    let mut min_size = vec![vec![u32::MAX; ctx.size()]];
    min_size[0][Elem::ONE.index()] = 0;
    let mut best = 0;
    walk(ctx, 0, Elem::ONE, &mut min_size, 0, max_len, &mut best);
    best
}

/// A finite abelian group given by its multiplication table over a list of
/// ring elements (units, or coset representatives of a quotient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    elements: Vec<Elem>,
    table: Vec<u32>,
    identity: usize,
    universe: usize,
}

impl GroupTable {
    /// `U(S_R)`.
    pub fn unit_group(ctx: &RingCtx) -> Self {
        Self::from_elements(ctx, ctx.units().iter()).expect("the unit group is a group")
    }

    /// The group formed by `elems` under ring multiplication.
    pub fn from_elements(ctx: &RingCtx, elems: impl IntoIterator<Item = Elem>) -> Result<Self, ZeroSumError> {
        let set = UnitSet::from_elems(ctx.size(), elems);
        let elements = set.members().to_vec();
        let m = elements.len();
        let index = |e: Elem| elements.binary_search(&e).ok();
        let mut table = vec![0u32; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                let p = ctx.mul(a, b);
                table[i * m + j] = index(p)
                    .ok_or_else(|| ZeroSumError::NotAGroup(format!("{a} * {b} = {p} leaves the set")))?
                    as u32;
            }
        }
        let identity = index(Elem::ONE).ok_or_else(|| ZeroSumError::NotAGroup("1 is missing".into()))?;
        let g = GroupTable {
            elements,
            table,
            identity,
            universe: ctx.size(),
        };
        g.check_inverses().map_err(ZeroSumError::NotAGroup)?;
        Ok(g)
    }

    fn check_inverses(&self) -> Result<(), String> {
        match (0..self.order()).find(|&i| (0..self.order()).all(|j| self.op(i, j) != self.identity)) {
            Some(i) => Err(format!("{} has no inverse", self.elements[i])),
            None => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j] as usize
    }

    pub fn index_of(&self, e: Elem) -> Option<usize> {
        self.elements.binary_search(&e).ok()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.op(cur, i);
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.generator().is_some()
    }

    /// An element of full order, if any.
    pub fn generator(&self) -> Option<usize> {
        (0..self.order()).find(|&i| self.element_order(i) == self.order())
    }

    fn indices_of(&self, k: &UnitSet) -> Result<Vec<usize>, ZeroSumError> {
        k.iter()
            .map(|e| {
                self.index_of(e)
                    .ok_or_else(|| ZeroSumError::NotASubgroup(format!("{e} is not in the group")))
            })
            .collect()
    }

    /// The subgroup `h` as a group in its own right.
    pub fn subgroup(&self, h: &UnitSet) -> Result<GroupTable, ZeroSumError> {
        let idx = self.indices_of(h)?;
        let m = idx.len();
        let local = |g: usize| idx.binary_search(&g).ok();
        let identity = local(self.identity).ok_or_else(|| ZeroSumError::NotASubgroup("1 is missing".into()))?;
        let mut table = vec![0u32; m * m];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                table[a * m + b] = local(self.op(i, j)).ok_or_else(|| {
                    ZeroSumError::NotASubgroup(format!("not closed at {} * {}", self.elements[i], self.elements[j]))
                })? as u32;
            }
        }
        let g = GroupTable {
            elements: idx.iter().map(|&i| self.elements[i]).collect(),
            table,
            identity,
            universe: self.universe,
        };
        g.check_inverses().map_err(ZeroSumError::NotASubgroup)?;
        Ok(g)
    }

    /// `G/K`, each coset represented by its smallest member.
    pub fn quotient(&self, k: &UnitSet) -> Result<GroupTable, ZeroSumError> {
        self.subgroup(k)?;
        let kidx = self.indices_of(k)?;
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in &kidx {
                coset_of[self.op(g, h)] = reps.len();
            }
            reps.push(g);
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (a, &i) in reps.iter().enumerate() {
            for (b, &j) in reps.iter().enumerate() {
                table[a * m + b] = coset_of[self.op(i, j)] as u32;
            }
        }
        Ok(GroupTable {
            elements: reps.iter().map(|&i| self.elements[i]).collect(),
            table,
            identity: coset_of[self.identity],
            universe: self.universe,
        })
    }

    /// Every subgroup, each as the set of its elements.
    pub fn subgroups(&self) -> Vec<UnitSet> {
        let close = |gens: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut out: BTreeSet<usize> = BTreeSet::from([self.identity]);
            let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
            while let Some(x) = queue.pop_front() {
                for &g in gens {
                    let y = self.op(x, g);
                    if out.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            out
        };
        let trivial = BTreeSet::from([self.identity]);
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in (0..self.order()).filter(|g| !h.contains(g)) {
                let mut gens = h.clone();
                gens.insert(g);
                let bigger = close(&gens);
                if seen.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        seen.into_iter()
            .map(|h| UnitSet::from_elems(self.universe, h.into_iter().map(|i| self.elements[i])))
            .collect()
    }
}

/// `G/K`.
pub fn quotient_group(g: &GroupTable, k: &UnitSet) -> Result<GroupTable, ZeroSumError> {
    g.quotient(k)
}

struct GroupSearch<'a> {
    g: &'a GroupTable,
    frames: Vec<Vec<bool>>,
    path: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl GroupSearch<'_> {
    /// `frames[depth]` holds the products of nonempty subsets of `path`.
    fn descend(&mut self, start: usize) -> Result<(), Exhausted> {
        let depth = self.path.len();
        let m = self.g.order();
        if self.frames.len() <= depth + 1 {
            self.frames.push(vec![false; m]);
        }
        for e in start..m {
            if e == self.g.identity {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Exhausted);
            }
            let (head, tail) = self.frames.split_at_mut(depth + 1);
            let (cur, next) = (&head[depth], &mut tail[0]);
            // identity ∈ sums·e  iff  e⁻¹ ∈ sums
            if (0..m).any(|s| cur[s] && self.g.op(s, e) == self.g.identity) {
                continue;
            }
            next.copy_from_slice(cur);
            next[e] = true;
            for s in (0..m).filter(|&s| cur[s]) {
                next[self.g.op(s, e)] = true;
            }
            self.path.push(e);
            if self.path.len() > self.best.len() {
                self.best = self.path.clone();
            }
            let r = self.descend(e);
            self.path.pop();
            r?;
        }
        Ok(())
    }
}

/// `D(G)`: one more than the longest zero-sum-free sequence.
pub fn davenport_group(g: &GroupTable, opts: SearchOptions) -> Result<DavenportValue, ZeroSumError> {
    let mut search = GroupSearch {
        g,
        frames: vec![vec![false; g.order()]],
        path: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        budget: opts.budget,
    };
    let to_seq = |idx: &[usize]| idx.iter().map(|&i| g.elements[i]).collect::<Seq>();
    match search.descend(0) {
        Ok(()) => Ok(DavenportValue {
            value: search.best.len() + 1,
            extremal: to_seq(&search.best),
            provenance: Provenance::Search,
            nodes: search.nodes,
        }),
        Err(Exhausted) => match g.generator().filter(|_| opts.cyclic_fast_path) {
            Some(gen) => Ok(DavenportValue {
                value: g.order(),
                extremal: to_seq(&vec![gen; g.order() - 1]),
                provenance: Provenance::Formula,
                nodes: search.nodes,
            }),
            None => Err(ZeroSumError::BudgetExceeded {
                budget: opts.budget,
                lower_bound: search.best.len() + 1,
            }),
        },
    }
}

/// Positions of a nonempty subsequence whose product lies in `k`.
pub fn subset_indices_with_product_in(ctx: &RingCtx, terms: &Seq, k: &UnitSet) -> Option<Vec<usize>> {
    let size = ctx.size();
    let mut reached = ElemSet::new(size);
    let mut from: Vec<Option<(usize, Option<Elem>)>> = vec![None; size];
    let rebuild = |from: &[Option<(usize, Option<Elem>)>], mut e: Elem| {
        let mut out = Vec::new();
        while let Some((term, pred)) = from[e.index()] {
            out.push(term);
            match pred {
                Some(p) => e = p,
                None => break,
            }
        }
        out.reverse();
        out
    };
    for (i, a) in terms.iter().enumerate() {
        let old: Vec<Elem> = reached.iter().collect();
        let candidates = std::iter::once((a, None)).chain(old.into_iter().map(|s| (ctx.mul(s, a), Some(s))));
        for (q, pred) in candidates {
            if reached.insert(q) {
                from[q.index()] = Some((i, pred));
                if k.contains(q) {
                    return Some(rebuild(&from, q));
                }
            }
        }
    }
    None
}

/// A nonempty subsequence of `terms` whose product lies in `k`.
pub fn subset_with_product_in(ctx: &RingCtx, terms: &Seq, k: &UnitSet) -> Option<Seq> {
    subset_indices_with_product_in(ctx, terms, k).map(|idx| terms.select(&idx))
}
