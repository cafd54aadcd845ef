//! Wave-graph bases for the invariants of `Sp(2n)` acting on tensor powers of
//! its defining representation `V = span(p_1..p_n, q_1..q_n)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: S-tris board states and the multiplicity recurrence.
//! - [`words`]: symplectic lattice words, patterns and the `lat` map.
//! - [`graphs`]: symplectic wave graphs and their bijections with words and walks.
//! - [`tensors`]: exact sparse tensors, the shuffle wedge product and `t_G`.
//! - [`verify`]: invariance under `sp(2n)`, a brute-force kernel oracle and
//!   basis certification.
//!
//! All arithmetic is exact. Counts are `u128`, tensor coefficients are
//! arbitrary-precision integers.

pub mod error;
pub mod graphs;
pub mod partitions;
pub mod tensors;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use graphs::{Edge, Walk, WaveGraph};
pub use partitions::Partition;
pub use tensors::{BasisVector, Monomial, Permutation, SparseTensor};
pub use verify::{CertificationReport, CertifyOptions, LieGenerator, Verdict};
pub use words::{AlternationClass, LatticeWord, Letter, Pattern};
