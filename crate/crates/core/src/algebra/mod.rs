//! Finite-dimensional monomial path algebras, optionally graded.
//!
//! Modules are right modules written as representations (arrow `s → t`
//! acts `M_s → M_t`), so `P_v = e_v A` has basis the paths starting at
//! `v` and `Hom(P_a, P_b)` has basis the paths from `b` to `a`.

mod complex;
mod endo;
mod families;
mod module;
mod monomial;

pub use complex::{
    default_window, detect_sphere_like, hom_complex_dims, hom_euler_pairing, hom_support,
    is_exceptional_complexes, profile_of, Entry, ProjComplex, SphereLikeProfile, Summand,
};
pub use endo::{EndomorphismAlgebra, ModuleMap, Presentation};
pub use families::{
    a_p, b_d, family_length_report, graded_kronecker, kplus_check, kplus_complex,
    kronecker_pair_profile, lambda_rnm, r_d, Family, Lambda,
};
pub use module::{
    minimal_projective_resolution, module_hom_basis, module_hom_dim, FDModule, Resolution,
    StepCertificate,
};
pub use monomial::{AlgebraDoc, MonomialAlgebra, Path, DEFAULT_MAX_PATHS};
