//! Filtered geometric complexes on finite dissimilarity data, their
//! persistent homology, diagram distances, and checks of the stability
//! and duality results that relate them.

pub mod bottleneck;
pub mod builders;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod field;
pub mod interleaving;
pub mod metric;
pub mod naive;
pub mod persistence;
pub mod suite;

pub use error::{Error, Result};
