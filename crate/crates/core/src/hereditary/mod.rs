//! Representations of acyclic quivers and, for Dynkin quivers, the full
//! lattice of thick subcategories of `D^b(kQ)`.
//!
//! Conventions: an arrow `s → t` acts as a map `M_s → M_t`; `P_v` is
//! spanned by the paths starting at `v`, so `S_v` is its top. An
//! exceptional sequence `(E_1, ..., E_n)` has `Hom^*(E_j, E_i) = 0` for
//! `j > i`.

mod category;
mod quiver;
pub(crate) mod rep;

pub use category::{
    enumerate_indecomposables, is_exceptional_sequence, orbit_category_report, verify_jd_theorem,
    DynkinCategory, JdVerification, ThickLattice, MONO_TRIALS,
};
pub use quiver::{DynkinType, Quiver, QuiverDoc};
pub use rep::{cokernel, ext1_dim, hom_basis, hom_dim, is_mono, QuiverRep, RepMorphism};
