//! Exact-arithmetic machinery for deciding when a lens space `L(p,q)` can
//! sit inside a definite 4-manifold, at the level of integral lattices.
//!
//! The pipeline: expand `p/q` as a negative continued fraction
//! ([`contfrac`]), realize the string and its point-rule dual as tridiagonal
//! plumbing lattices ([`lattice`]), enumerate embeddings of the dual lattice
//! into standard diagonal lattices up to signed coordinate permutations
//! ([`embedder`]), and assemble the obstruction and filling-form procedures
//! on top ([`lensspace`]).  Everything is exact integer arithmetic; there is
//! no floating point anywhere.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `lenslat` binary exposes the same operations as subcommands.

pub mod cli;
pub mod contfrac;
pub mod embedder;
pub mod lattice;
pub mod lensspace;

mod error;

pub use error::{Error, Result};
