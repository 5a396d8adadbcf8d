//! The quotient ring `R = GF(2)[x]/(f)` as a finite commutative monoid under
//! multiplication.
//!
//! Elements are canonical residues (degree `< deg f`) whose coefficient mask
//! doubles as a dense index in `[0, 2^n)`, so sets of elements are flat
//! bitsets. The monoid is written multiplicatively: its identity is the
//! residue `1` and its absorbing element is `0`.
//!
//! Green's preorder is decided from gcd profiles: `a <=_H b` iff the
//! exponent vector of `gcd(θ_b, f)` is dominated componentwise by that of
//! `gcd(θ_a, f)`. The definitional scan survives as [`RingCtx::leq_h_by_scan`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2poly::{self, clmul64, Factorization, Poly, PolyError};

/// Largest modulus degree accepted by [`RingCtx::new`].
pub const MAX_RING_DEGREE: usize = 20;

/// Moduli up to this degree get a precomputed multiplication table.
const TABLE_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("modulus degree {0} exceeds the supported maximum {MAX_RING_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("element {0:#x} is not a residue of this ring (mixed contexts?)")]
    MixedContext(u32),
    #[error("{0} is not a unit")]
    NotAUnit(Elem),
    #[error("factor index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("CRT lift precondition violated: factor {factor} divides {elem} but index {index} is not in J")]
    LiftPrecondition { index: usize, factor: Poly, elem: Elem },
}

/// A canonical residue of `R`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// The element with this coefficient mask; not reduced.
    pub const fn from_bits(bits: u32) -> Elem {
        Elem(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// The canonical representative θ.
    pub fn theta(self) -> Poly {
        Poly::from_bits(self.0 as u64)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.theta().fmt(f)
    }
}

/// A set of ring elements as a flat bitset over the `2^n` residues.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElemSet {
    words: Vec<u64>,
    universe: usize,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, e: Elem) -> bool {
        let (w, b) = (e.index() / 64, e.index() % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        e.index() < self.universe && self.words[e.index() / 64] & (1 << (e.index() % 64)) != 0
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn copy_from(&mut self, other: &ElemSet) {
        self.words.copy_from_slice(&other.words);
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(Elem((i * 64) as u32 + b))
            })
        })
    }
}

/// Exponent vector of `gcd(θ_a, f)` against the factorization of `f`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GcdProfile {
    pub alphas: Vec<u32>,
}

impl GcdProfile {
    pub fn is_zero(&self) -> bool {
        self.alphas.iter().all(|&a| a == 0)
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &GcdProfile) -> bool {
        self.alphas.iter().zip(&other.alphas).all(|(a, b)| a <= b)
    }

    pub fn total(&self) -> u32 {
        self.alphas.iter().sum()
    }
}

impl fmt::Display for GcdProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.alphas.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A set of units, kept sorted, with O(1) membership.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitSet {
    members: Vec<Elem>,
    mask: ElemSet,
}

impl UnitSet {
    pub fn from_elems(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut mask = ElemSet::new(universe);
        for e in elems {
            mask.insert(e);
        }
        UnitSet {
            members: mask.iter().collect(),
            mask,
        }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.mask.contains(e)
    }

    pub fn is_subset(&self, other: &UnitSet) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().copied()
    }

    pub fn as_elem_set(&self) -> &ElemSet {
        &self.mask
    }

    /// Contains 1 and is closed under multiplication and inversion.
    pub fn is_subgroup(&self, ctx: &RingCtx) -> bool {
        self.contains(Elem::ONE)
            && self.members.iter().all(|&a| {
                ctx.inverse(a).is_ok_and(|inv| self.contains(inv))
                    && self.members.iter().all(|&b| self.contains(ctx.mul(a, b)))
            })
    }
}

/// Which constructive argument produced a separating unit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeparationCase {
    /// A factor other than `x`, `x+1` loses multiplicity; `h = f / f_i^{α_i}`
    /// and the unit is `h+1` or `x*h+1`.
    OtherFactor { index: usize },
    /// `x` or `x+1` loses multiplicity with room to spare; `h = f / f_i^{β_i+1}`
    /// and the unit is `h+1`.
    LinearFactor { index: usize },
}

/// The modulus `f` and everything derived from it.
pub struct RingCtx {
    modulus: Poly,
    mask: u64,
    degree: usize,
    factorization: Factorization,
    prime_powers: Vec<Poly>,
    cofactors: Vec<Poly>,
    idempotents: Vec<Elem>,
    table: Option<Vec<u32>>,
    units: OnceLock<UnitSet>,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingCtx")
            .field("modulus", &self.modulus)
            .field("factorization", &self.factorization)
            .finish_non_exhaustive()
    }
}

impl RingCtx {
    pub fn new(f: Poly) -> Result<Self, RingError> {
        let degree = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(PolyError::Constant(f).into()),
        };
        if degree > MAX_RING_DEGREE {
            return Err(RingError::DegreeTooLarge(degree));
        }
        let mask = f.to_u64().expect("degree checked");
        let factorization = gf2poly::factor(&f)?;
        let prime_powers: Vec<Poly> = factorization
            .factors()
            .iter()
            .map(|(p, n)| (0..*n).fold(Poly::ONE, |acc, _| acc * *p))
            .collect();
        let cofactors: Vec<Poly> = prime_powers
            .iter()
            .map(|q| f.divrem(q).map(|(c, _)| c))
            .collect::<Result<_, _>>()?;
        // e_i = c_i * (c_i^{-1} mod q_i): 1 at the i-th prime power, 0 at the others.
        let idempotents = prime_powers
            .iter()
            .zip(&cofactors)
            .map(|(q, c)| {
                let (g, s, _) = gf2poly::ext_gcd(c, q)?;
                debug_assert!(g.is_one());
                let e = (s * *c).rem(&f)?;
                Ok(Elem(e.to_u64().expect("reduced below degree 20") as u32))
            })
            .collect::<Result<_, PolyError>>()?;
        let mut ctx = RingCtx {
            modulus: f,
            mask,
            degree,
            factorization,
            prime_powers,
            cofactors,
            idempotents,
            table: None,
            units: OnceLock::new(),
        };
        if degree <= TABLE_DEGREE {
            let size = ctx.size();
            let mut table = vec![0u32; size * size];
            for a in 0..size {
                for b in a..size {
                    let p = ctx.reduce_product(a as u32, b as u32);
                    table[a * size + b] = p;
                    table[b * size + a] = p;
                }
            }
            ctx.table = Some(table);
        }
        Ok(ctx)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// `n = deg f`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `|R| = 2^n`.
    pub fn size(&self) -> usize {
        1 << self.degree
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// Number of distinct irreducible factors `r`.
    pub fn factor_count(&self) -> usize {
        self.factorization.len()
    }

    /// `f_i^{n_i}` for each factor.
    pub fn prime_powers(&self) -> &[Poly] {
        &self.prime_powers
    }

    /// `f / f_i^{n_i}` for each factor.
    pub fn cofactors(&self) -> &[Poly] {
        &self.cofactors
    }

    /// Multiplicity `n_i` of the i-th factor.
    pub fn exponent(&self, i: usize) -> u32 {
        self.factorization.factors()[i].1
    }

    pub fn factor(&self, i: usize) -> &Poly {
        &self.factorization.factors()[i].0
    }

    /// Index of `x` in the factorization, if `x | f`.
    pub fn x_index(&self) -> Option<usize> {
        self.factorization.index_of(&Poly::X)
    }

    /// Index of `x+1` in the factorization, if `(x+1) | f`.
    pub fn x_plus_one_index(&self) -> Option<usize> {
        self.factorization.index_of(&Poly::X_PLUS_ONE)
    }

    /// Reduces an arbitrary polynomial into `R`.
    pub fn elem(&self, p: &Poly) -> Elem {
        let r = p.rem(&self.modulus).expect("modulus is nonzero");
        Elem(r.to_u64().expect("residue fits in a word") as u32)
    }

    /// Accepts a residue only if it is canonical for this ring.
    pub fn check(&self, e: Elem) -> Result<Elem, RingError> {
        if e.index() < self.size() {
            Ok(e)
        } else {
            Err(RingError::MixedContext(e.0))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size() as u32).map(Elem)
    }

    fn reduce_product(&self, a: u32, b: u32) -> u32 {
        let mut r = clmul64(a as u64, b as u64) as u64;
        let n = self.degree as u32;
        while r >> n != 0 {
            let d = 63 - r.leading_zeros();
            r ^= self.mask << (d - n);
        }
        r as u32
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.index() < self.size() && b.index() < self.size());
        match &self.table {
            Some(t) => Elem(t[a.index() * self.size() + b.index()]),
            None => Elem(self.reduce_product(a.0, b.0)),
        }
    }

    /// [`RingCtx::mul`] with residue validation.
    pub fn try_mul(&self, a: Elem, b: Elem) -> Result<Elem, RingError> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let (mut base, mut acc) = (a, Elem::ONE);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Product of a list of elements; the empty product is 1.
    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(Elem::ONE, |acc, e| self.mul(acc, e))
    }

    /// `gcd(θ_a, f)`; equals `f` for the zero element.
    pub fn gcd_with_modulus(&self, a: Elem) -> Poly {
        gf2poly::gcd(&a.theta(), &self.modulus).expect("modulus is nonzero")
    }

    pub fn profile(&self, a: Elem) -> GcdProfile {
        let g = self.gcd_with_modulus(a);
        GcdProfile {
            alphas: self
                .factorization
                .factors()
                .iter()
                .map(|(p, _)| gf2poly::multiplicity_unchecked(p, &g))
                .collect(),
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.gcd_with_modulus(a).is_one()
    }

    pub fn inverse(&self, u: Elem) -> Result<Elem, RingError> {
        let (g, s, _) = gf2poly::ext_gcd(&u.theta(), &self.modulus)?;
        if !g.is_one() {
            return Err(RingError::NotAUnit(u));
        }
        Ok(self.elem(&s))
    }

    /// The unit group, sorted by index.
    pub fn units(&self) -> &UnitSet {
        self.units.get_or_init(|| {
            UnitSet::from_elems(self.size(), self.elements().filter(|&a| self.is_unit(a)))
        })
    }

    /// Green's preorder: `a = b` or `a = b*c` for some `c`.
    pub fn leq_h(&self, a: Elem, b: Elem) -> bool {
        self.profile(b).dominated_by(&self.profile(a))
    }

    /// Definitional form of [`RingCtx::leq_h`]: scans all `2^n` multipliers.
    pub fn leq_h_by_scan(&self, a: Elem, b: Elem) -> bool {
        a == b || self.elements().any(|c| self.mul(b, c) == a)
    }

    /// Green's congruence `H`.
    pub fn h_equiv(&self, a: Elem, b: Elem) -> bool {
        self.profile(a) == self.profile(b)
    }

    /// `a <_H b`.
    pub fn lt_h(&self, a: Elem, b: Elem) -> bool {
        let (pa, pb) = (self.profile(a), self.profile(b));
        pb.dominated_by(&pa) && pa != pb
    }

    /// `St(c) = {u in U : u*c = c}`.
    pub fn stabilizer(&self, c: Elem) -> UnitSet {
        UnitSet::from_elems(
            self.size(),
            self.units().iter().filter(|&u| self.mul(u, c) == c),
        )
    }

    /// The unit `ã` with `ã ≡ a (mod f_i^{n_i})` for `i ∉ J` and `ã ≡ 1 (mod f_j^{n_j})`
    /// for `j ∈ J`.
    pub fn crt_lift(&self, a: Elem, j: &BTreeSet<usize>) -> Result<Elem, RingError> {
        let r = self.factor_count();
        if let Some(&bad) = j.iter().find(|&&i| i >= r) {
            return Err(RingError::IndexOutOfRange(bad));
        }
        let theta = a.theta();
        for i in (0..r).filter(|i| !j.contains(i)) {
            if theta.is_divisible_by(self.factor(i)) {
                return Err(RingError::LiftPrecondition {
                    index: i,
                    factor: *self.factor(i),
                    elem: a,
                });
            }
        }
        Ok((0..r).fold(Elem::ZERO, |acc, i| {
            let local = if j.contains(&i) { Elem::ONE } else { a };
            Elem(acc.0 ^ self.mul(self.idempotents[i], local).0)
        }))
    }

    /// Some unit `d` with `d*a = a` and `d*b != b`, by exhaustive scan.
    pub fn find_separating_unit(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.units()
            .iter()
            .find(|&d| self.mul(d, a) == a && self.mul(d, b) != b)
    }

    /// The left side of the strict-containment test for a pair `a <=_H b`:
    /// `Σ_{i≥3}(α_i−β_i) + Σ_{i∈{1,2}} (α_i−β_i)(2n_i−1−α_i−β_i)`, where indices
    /// 1, 2 are the factors `x`, `x+1`. Absent linear factors contribute zero.
    pub fn separation_condition(&self, a: Elem, b: Elem) -> i64 {
        let (pa, pb) = (self.profile(a), self.profile(b));
        let linear = [self.x_index(), self.x_plus_one_index()];
        (0..self.factor_count())
            .map(|i| {
                let (al, be) = (pa.alphas[i] as i64, pb.alphas[i] as i64);
                if linear.contains(&Some(i)) {
                    let n = self.exponent(i) as i64;
                    (al - be) * (2 * n - 1 - al - be)
                } else {
                    al - be
                }
            })
            .sum()
    }

    /// The explicit witness from the strict-containment argument, for `a <_H b`.
    ///
    /// Returns `None` if neither case hypothesis holds. The returned unit is
    /// not re-checked against `St(a) \ St(b)`; callers validating the
    /// construction do that themselves.
    pub fn construct_separating_unit(&self, a: Elem, b: Elem) -> Option<(Elem, SeparationCase)> {
        if !self.lt_h(a, b) {
            return None;
        }
        let (pa, pb) = (self.profile(a), self.profile(b));
        let linear = [self.x_index(), self.x_plus_one_index()];
        let f = self.modulus;
        let power = |i: usize, k: u32| (0..k).fold(Poly::ONE, |acc, _| acc * *self.factor(i));

        let other = (0..self.factor_count())
            .find(|&i| !linear.contains(&Some(i)) && pa.alphas[i] > pb.alphas[i]);
        if let Some(i) = other {
            let h = f.divrem(&power(i, pa.alphas[i])).ok()?.0;
            let d1 = self.elem(&(h + Poly::ONE));
            let d = if self.is_unit(d1) {
                d1
            } else {
                self.elem(&(Poly::X * h + Poly::ONE))
            };
            return Some((d, SeparationCase::OtherFactor { index: i }));
        }

        let lin = linear.iter().flatten().copied().find(|&i| {
            let (al, be, n) = (pa.alphas[i] as i64, pb.alphas[i] as i64, self.exponent(i) as i64);
            (al - be) * (2 * n - 1 - al - be) > 0
        })?;
        let h = f.divrem(&power(lin, pb.alphas[lin] + 1)).ok()?.0;
        Some((self.elem(&(h + Poly::ONE)), SeparationCase::LinearFactor { index: lin }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> RingCtx {
        RingCtx::new(s.parse().unwrap()).unwrap()
    }

    fn e(c: &RingCtx, s: &str) -> Elem {
        c.elem(&s.parse().unwrap())
    }

    #[test]
    fn rejects_constant_and_oversized_moduli() {
        assert!(matches!(RingCtx::new(Poly::ONE), Err(RingError::Poly(PolyError::Constant(_)))));
        assert!(matches!(RingCtx::new(Poly::ZERO), Err(RingError::Poly(PolyError::Constant(_)))));
        let big = Poly::monomial(21).unwrap() + Poly::ONE;
        assert_eq!(RingCtx::new(big).unwrap_err(), RingError::DegreeTooLarge(21));
    }

    #[test]
    fn mul_examples() {
        let r = ctx("x^2+x");
        assert_eq!(r.mul(e(&r, "x"), e(&r, "x+1")), Elem::ZERO);
        let r = ctx("x^2+x+1");
        assert_eq!(r.mul(e(&r, "x"), e(&r, "x+1")), Elem::ONE);
        for a in r.elements() {
            assert_eq!(r.mul(Elem::ONE, a), a);
        }
        assert_eq!(r.try_mul(Elem::from_bits(4), Elem::ONE), Err(RingError::MixedContext(4)));
    }

    #[test]
    fn table_and_direct_paths_agree() {
        // Degree 9 skips the table; compare against Poly arithmetic.
        let r = ctx("x^9+x^4+1");
        let f = *r.modulus();
        for (a, b) in [(0x1ffu32, 0x155u32), (0x80, 0x3), (0x100, 0x100)] {
            let want = (Poly::from_bits(a as u64) * Poly::from_bits(b as u64)).rem(&f).unwrap();
            assert_eq!(r.mul(Elem(a), Elem(b)).theta(), want);
        }
    }

    #[test]
    fn profile_examples() {
        let r = ctx("x^4+x^2");
        assert_eq!(r.profile(e(&r, "x^2+x")).alphas, vec![1, 1]);
        assert!(r.profile(Elem::ONE).is_zero());
        assert_eq!(r.profile(Elem::ZERO).alphas, vec![2, 2]);
    }

    #[test]
    fn unit_examples() {
        let r = ctx("x^2+x+1");
        assert!(r.elements().skip(1).all(|a| r.is_unit(a)));
        let r = ctx("x^2+x");
        assert!(!r.is_unit(e(&r, "x")));
        assert!(r.is_unit(Elem::ONE));
    }

    #[test]
    fn inverse_examples() {
        let r = ctx("x^2+x+1");
        assert_eq!(r.inverse(e(&r, "x")).unwrap(), e(&r, "x+1"));
        assert_eq!(r.inverse(Elem::ONE).unwrap(), Elem::ONE);
        let r = ctx("x^3+x+1");
        assert_eq!(r.inverse(e(&r, "x")).unwrap(), e(&r, "x^2+1"));
        let r = ctx("x^2");
        assert_eq!(r.inverse(e(&r, "x")), Err(RingError::NotAUnit(e(&r, "x"))));
    }

    #[test]
    fn green_preorder_examples() {
        let r = ctx("x^2+x");
        assert!(r.leq_h(Elem::ZERO, e(&r, "x")));
        assert!(!r.leq_h(e(&r, "x"), e(&r, "x+1")));
        assert!(!r.leq_h_by_scan(e(&r, "x"), e(&r, "x+1")));
        assert!(!r.h_equiv(e(&r, "x"), e(&r, "x+1")));
        for a in r.elements() {
            assert!(r.leq_h(a, Elem::ONE));
            assert!(r.h_equiv(a, a));
        }
        let r = ctx("x^2+x+1");
        assert!(r.h_equiv(e(&r, "x"), e(&r, "x+1")));
    }

    #[test]
    fn stabilizer_examples() {
        let r = ctx("x^2");
        assert_eq!(r.stabilizer(Elem::ONE).members(), &[Elem::ONE]);
        assert_eq!(&r.stabilizer(Elem::ZERO), r.units());
        assert_eq!(r.stabilizer(e(&r, "x")).members(), &[Elem::ONE, e(&r, "x+1")]);
    }

    #[test]
    fn crt_lift_examples() {
        let r = ctx("x^3+x^2+x");
        assert_eq!(r.factorization().factors()[0].0, Poly::X);
        let all: BTreeSet<usize> = (0..r.factor_count()).collect();
        assert_eq!(r.crt_lift(e(&r, "x"), &all).unwrap(), Elem::ONE);
        let u = e(&r, "x^2+x+1");
        // x^2+x+1 is 1 mod x and 0 mod x^2+x+1: not a unit.
        assert!(!r.is_unit(u));
        let unit = r.units().members()[1];
        assert_eq!(r.crt_lift(unit, &BTreeSet::new()).unwrap(), unit);

        // a = x: 0 mod x, x mod (x^2+x+1). Lift at J = {x}.
        let lifted = r.crt_lift(e(&r, "x"), &BTreeSet::from([0])).unwrap();
        let brute: Vec<Elem> = r
            .elements()
            .filter(|c| {
                c.theta().rem(&Poly::X).unwrap() == Poly::ONE
                    && c.theta().rem(&"x^2+x+1".parse().unwrap()).unwrap() == Poly::X
            })
            .collect();
        assert_eq!(brute, vec![lifted]);
        assert_eq!(lifted, e(&r, "x^2+1"));

        assert!(matches!(
            r.crt_lift(e(&r, "x"), &BTreeSet::new()),
            Err(RingError::LiftPrecondition { index: 0, .. })
        ));
        assert_eq!(r.crt_lift(Elem::ONE, &BTreeSet::from([5])), Err(RingError::IndexOutOfRange(5)));
    }

    #[test]
    fn separating_unit_examples() {
        let r = ctx("x^2");
        assert_eq!(r.find_separating_unit(Elem::ZERO, e(&r, "x")), None);

        let r = ctx("x^3");
        let (a, b) = (Elem::ZERO, e(&r, "x"));
        let d = r.find_separating_unit(a, b).unwrap();
        assert!(r.is_unit(d) && r.mul(d, a) == a && r.mul(d, b) != b);
        let named = e(&r, "x^2+x+1");
        assert!(r.is_unit(named) && r.mul(named, a) == a && r.mul(named, b) != b);

        for a in r.elements() {
            assert_eq!(r.find_separating_unit(a, a), None);
        }
    }

    #[test]
    fn constructed_witness_linear_case() {
        // f = x^3, a = 0 (α = 3), b = x (β = 1): (3-1)(6-1-3-1) = 2 > 0.
        let r = ctx("x^3");
        let (a, b) = (Elem::ZERO, e(&r, "x"));
        assert_eq!(r.separation_condition(a, b), 2);
        let (d, case) = r.construct_separating_unit(a, b).unwrap();
        assert_eq!(case, SeparationCase::LinearFactor { index: 0 });
        // h = x^3 / x^2 = x, d = x + 1.
        assert_eq!(d, e(&r, "x+1"));
        assert!(r.is_unit(d) && r.mul(d, b) != b);
    }

    #[test]
    fn constructed_witness_other_factor_case() {
        let r = ctx("x^4+x^3+x^2");
        // f = x^2 (x^2+x+1); a = x^2+x+1 has α = (0, 1), b = 1.
        let (a, b) = (e(&r, "x^2+x+1"), Elem::ONE);
        let (d, case) = r.construct_separating_unit(a, b).unwrap();
        assert_eq!(case, SeparationCase::OtherFactor { index: 1 });
        assert!(r.is_unit(d) && r.mul(d, a) == a && r.mul(d, b) != b);
    }

    #[test]
    fn degree_one_modulus() {
        let r = ctx("x");
        assert_eq!(r.size(), 2);
        assert_eq!(r.units().members(), &[Elem::ONE]);
        assert_eq!(r.stabilizer(Elem::ZERO).members(), &[Elem::ONE]);
        assert_eq!(r.profile(Elem::ZERO).alphas, vec![1]);
    }

    #[test]
    fn elem_set_basics() {
        let mut s = ElemSet::new(100);
        assert!(s.insert(Elem(70)));
        assert!(!s.insert(Elem(70)));
        s.insert(Elem(3));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![Elem(3), Elem(70)]);
        assert_eq!(s.len(), 2);
        assert!(!s.contains(Elem(200)));
    }
}
