//! Odd-cycle structure in small graphs.
//!
//! The crate builds the extremal constructions `T*(r, n)` and `T**(r, n)`,
//! computes odd girth, cycle spectra, longest odd cycles, chord structure on
//! odd cycles, starters, and the bipartization numbers `d2` / `gamma2`, and
//! runs exhaustive or seeded-sampled verification sweeps over small graph
//! families.
//!
//! All graphs have at most [`N_MAX`] vertices and use one `u64` adjacency row
//! per vertex.

pub mod bipartization;
pub mod budget;
pub mod constructions;
pub mod cycles;
mod error;
pub mod graph;
pub mod harness;
pub mod par;
pub mod starters;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, N_MAX};
