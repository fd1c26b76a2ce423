//! Entanglement-to-geometry toolkit.
//!
//! Finite-dimensional states over an explicit tensor product structure,
//! von Neumann entropies and mutual informations, mutual-information graphs
//! re-weighted into emergent distances, plus the perturbation and
//! decoherence channels that change those distances.

// Range checks are written as `!(x >= lo)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod error;
pub mod geometry;
pub mod hilbert;
pub mod infotheory;
pub mod linalg;
pub mod scenarios;

pub use error::{Error, Result};
pub use num_complex::Complex64;
