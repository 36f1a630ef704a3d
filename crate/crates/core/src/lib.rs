//! Decorated-tree Hopf algebras, comodules and Bogoliubov-type recursions.
//!
//! Trees carry node decorations in `ℕ^{d+1}` and typed, differentiated edges.
//! The crate provides the positive coproducts and antipodes, the target
//! algebras used by characters, the three Birkhoff-type recursions, canonical
//! models built from Gaussian kernels, and an undeformed negative
//! (extraction–contraction) side.

pub mod birkhoff;
pub mod error;
pub mod hopf;
pub mod linear;
pub mod models;
pub mod multiindex;
pub mod negative;
pub mod suites;
pub mod targets;
pub mod trees;

pub use error::{Error, Result};
pub use linear::{LinComb, Q};
