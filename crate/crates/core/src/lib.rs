//! Exact counting of restricted multisets.
//!
//! A symmetric set `X ⊆ D^k` determines the multisets obtained by forgetting
//! the order of its tuples. This crate counts those multisets (optionally with
//! bounded multiplicities, or with a prescribed number of distinct elements)
//! by summing fixed-point counts over the `p(k)` cycle types of `S_k` rather
//! than over the `2^(k choose 2)` terms of classical inclusion-exclusion.
//!
//! Every number is an exact integer or rational; divisions that must be exact
//! are checked and reported as [`Error::Integrity`] when they are not.
//!
//! Modules:
//! - [`combinatorics`]: cycle types, class sizes, Stirling numbers, cycle index
//! - [`poly`]: dense polynomials and truncated power series over `Q`
//! - [`lattice`]: the set-partition lattice and its Möbius function
//! - [`sieve`]: sieve weights and the counting formulas
//! - [`brute`]: enumeration oracles and inclusion-exclusion
//! - [`field`]: arithmetic in `F_{p^a}`
//! - [`apps`]: partitions over finite fields, necklaces, zero-sum multisets
//! - [`identities`]: self-checking identity suites
//! - [`io`]: the JSON file format for explicit sets

pub mod apps;
pub mod brute;
pub mod combinatorics;
mod error;
pub mod field;
pub mod identities;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod ring;
pub mod sieve;

pub use combinatorics::CycleType;
pub use error::{Error, Result};
pub use field::{FieldSpec, FqElement};
pub use lattice::SetPartition;
pub use poly::Polynomial;
pub use ring::{CyclicGroupRing, ExactRing};
pub use sieve::{ExplicitSet, SymmetricFunction, SymmetricSet};
