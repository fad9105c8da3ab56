//! Computational layer for Khovanov-homology based link detection: planar
//! diagrams, Jones and Alexander polynomials, Khovanov homology over Z/2 and
//! Z, forest-of-unknots detection, and the word problem in the path
//! right-angled Artin group.

pub mod braid_alexander;
pub mod detection;
pub mod diagrams;
pub mod error;
pub mod jones;
pub mod khovanov;
pub mod polynomials;
pub mod raag;
mod states;

pub use error::{Error, Result};
