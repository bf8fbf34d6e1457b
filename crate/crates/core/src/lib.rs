//! Exact-arithmetic BGG machinery on flat parabolic models.

pub mod bgg;
pub mod error;
pub mod exact;
pub mod flat;
pub mod homology;
pub mod io;
pub mod lie;

pub use error::{Error, Result};
