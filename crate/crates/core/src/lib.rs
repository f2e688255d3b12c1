//! Exact and numerical machinery for studying how cycles, coverings and
//! curvature interact on finite simple graphs.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches a
//! filesystem, a terminal or a serialization format lives in the companion
//! `gaincurv-toolkit` crate.
//!
//! Module map:
//!
//! * [`graph`]: simple graphs, spanning trees, circuit enumeration, theta graphs.
//! * [`algebra`]: exact linear algebra over Q and F_p, Bareiss determinants,
//!   Smith normal form over Z.
//! * [`cycle_space`]: cycle vectors, cycle matrices, determinants of circuit
//!   sets and the usual cycle-basis classes.
//! * [`group`], [`gain`], [`cover`]: gain functions, derived coverings and
//!   circuit lifting.
//! * [`path_homology`]: the Omega chain complex of the doubled digraph and
//!   its first homology, plus clique homology for comparison.
//! * [`curvature`]: Bakry-Emery Gamma / Gamma_2 forms and pointwise curvature.
//! * [`fundamental_group`]: presentations, loop rewriting, abelianization and
//!   coset enumeration.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod cover;
pub mod curvature;
pub mod cycle_space;
mod error;
pub mod fundamental_group;
pub mod gain;
pub mod graph;
pub mod group;
pub mod path_homology;

pub use error::{Error, Result};
