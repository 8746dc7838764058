//! Two-level Construction D′ lattices built from quasi-cyclic LDPC codes and
//! single-parity-check product codes.
//!
//! The crate is `no_std` and only needs an allocator. It covers the whole
//! algorithmic chain:
//!
//! * [`gf2`]: bit-packed binary matrices, rank, null spaces and an
//!   approximate-triangular coset solver used by the encoders.
//! * [`qc`]: prototype matrices, circulant expansion, 802.16e shift scaling,
//!   4-cycle detection and random prototype search.
//! * [`codes`]: SPC product codes, the staircase block, and the nested
//!   level-0/level-1 parity-check pairs.
//! * [`lattice`]: the congruence family, membership, dimensions, volume and
//!   coding gain.
//! * [`codec`]: sequential encoding with the syndrome column and dummy bit,
//!   sum-product decoding and multistage lattice decoding.
//! * [`wmin`]: exact and probabilistic minimum-distance tools.
#![no_std]

extern crate alloc;

pub mod codec;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod qc;
pub mod wmin;

pub use error::{Error, Result};
