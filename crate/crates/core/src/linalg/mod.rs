//! Exact field arithmetic, dense matrices and cochain complexes.
//!
//! Everything downstream counts dimensions, so every routine here is exact:
//! rationals by default, residues modulo an odd prime on request.

mod complex;
mod field;
mod matrix;

pub use complex::CochainComplex;
pub(crate) use complex::sign;
pub use field::{FieldElem, FieldKind, DEFAULT_PRIME};
pub use matrix::{echelon_basis, ExactMatrix, Vector};
