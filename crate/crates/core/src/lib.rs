//! Exact homological algebra over a small catalog of commutative rings.

pub mod classes;
pub mod cohomology;
pub mod complex;
pub mod dimension;
pub mod error;
pub mod extint;
pub mod fixtures;
pub mod homcx;
pub mod matrix;
pub mod module;
pub mod resolution;
pub mod ring;
pub mod snf;
pub mod structure;
pub mod suites;
mod zlattice;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{make_ring, ring_profile, GorensteinProfile, Ring, RingHandle, RingSpec};
pub use extint::ExtInt;
