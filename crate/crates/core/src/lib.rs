//! Generic Cayley graphs `Cay(Gᵐ, 𝒮)` of small finite groups, where `𝒮` is the
//! set of *interval elements* `(e,…,e,x,…,x,e,…,e)` with `x ≠ e`.
//!
//! The crate is `no_std` (with `alloc`). It builds the graphs, computes exact
//! spectra and regularity data, ranks the 0/1 trace system with exact
//! arithmetic, classifies maximal cliques through the identity, and builds,
//! counts and compares graph automorphisms.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod clique;
pub mod error;
pub mod graph;
pub mod group;
pub mod morphisms;
pub mod simple;
pub mod spectral;
pub mod trace;

pub use error::{Error, Result};
