//! Numerical laboratory for pointwise limits of holomorphic sequences.
//!
//! The crate builds sequences that converge pointwise but not locally
//! uniformly, then locates where the limit is holomorphic: Baire level sets,
//! tail Cauchy deviations, contour and area integral reproduction, growth and
//! derivative bounds, and their two-variable and harmonic counterparts.

pub mod cauchy;
pub mod cli;
pub mod error;
pub mod export;
pub mod geometry;
pub mod harmonic;
pub mod osgood;
pub mod realanalytic;
pub mod runge;
pub mod scv;
pub mod sequence;

pub use error::{Error, Result};
