//! Covering arrays on graphs.
//!
//! A covering array on a graph `G` with alphabet `Z_g` is a `|V(G)| x n`
//! array whose rows at adjacent vertices are *qualitatively independent*:
//! every ordered symbol pair appears in some column. This crate builds such
//! arrays from smaller pieces and verifies them exhaustively:
//!
//! - [`graph`]: labelled simple graphs, generators, colouring, cliques.
//! - [`products`]: Cartesian, direct, strong and lexicographic products.
//! - [`factorization`]: prime factorization over the Cartesian product,
//!   with a certified reconstruction check and a brute-force oracle.
//! - [`algebra`]: finite fields, strength-2 orthogonal arrays (prime-power
//!   and composite), finite groups and Cayley graphs.
//! - [`ca`]: the covering-array type, the qualitative-independence
//!   verifier, standardization, and a generic per-clique construction.
//! - [`constructions`]: product-concatenation and Cayley-translation
//!   constructions; every output is re-verified before it is returned.
//! - [`approx`]: the factor-then-lift approximation pipeline with its
//!   ratio certificate.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion
//! `graphca` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod approx;
pub mod ca;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod graph;
pub mod products;

pub use error::Error;
