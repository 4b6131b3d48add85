//! Lengths, length spectra and Jordan–Dedekind behaviour of triangulated
//! categories in settings where the lattice of thick subcategories, or
//! enough of it, can be computed exactly.
//!
//! * [`linalg`]: exact fields, matrices, cochain complexes.
//! * [`lattice`]: finite lattices, maximal chains, length reports.
//! * [`hereditary`]: Dynkin quiver representations, semibricks, thick lattices.
//! * [`algebra`]: monomial path algebras, resolutions, hom complexes.
//! * [`toric`]: smooth complete toric surfaces.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod hereditary;
pub mod lattice;
pub mod linalg;
pub mod toric;

pub use error::{Error, Result};
