//! Exact Davenport constants for the multiplicative semigroup of `GF(2)[x]/(f)`.
//!
//! The semigroup is written multiplicatively throughout: its identity is the
//! residue `1`, a sequence's "sum" is its product, and a zero-sum sequence is
//! one whose product is `1`.
//!
//! - [`gf2poly`]: arithmetic, gcd and trial-division factorization in `GF(2)[x]`.
//! - [`ring`]: residues mod `f`, gcd profiles, Green's relations, stabilizers, CRT lifts.
//! - [`zerosum`]: subset-product tables and pruned searches for `D(S_R)` and `D(G)`.
//! - [`reduce`]: the constructive reduction of a long sequence to a proper
//!   subsequence with the same product.

pub mod gf2poly;
pub mod reduce;
pub mod ring;
pub mod zerosum;

pub use gf2poly::{Factorization, Poly, PolyError};
pub use reduce::{delta_f, reduce_sequence, DeltaClass, ReduceError, ReductionPath, ReductionTrace};
pub use ring::{Elem, ElemSet, GcdProfile, RingCtx, RingError, UnitSet};
pub use zerosum::{
    davenport_group, davenport_semigroup, DavenportValue, GroupTable, ProductTable, Provenance,
    SearchOptions, Seq, ZeroSumError,
};
