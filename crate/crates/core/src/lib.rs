//! Exact vector and covector calculus on finite-dimensional associative algebras.
//!
//! Given an algebra `A` with center `Z` and a Z-submodule `V` of its
//! derivations, this crate computes the covector bimodule `V† = hom_Z(V, A)`,
//! the Z-valued dual `V*`, the second dual `V†† = hom_A(V†, A)` and the
//! canonical embedding `V → V††`, and decides reflexivity of `V`. Projective
//! modules are certified by an explicit dual basis, from which every element
//! of `V††` is lifted back to a derivation. All arithmetic is exact.

pub mod algebra;
pub mod bidual;
pub mod cli;
pub mod derivations;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod presets;

pub use algebra::{Algebra, Center, Element};
pub use bidual::{
    dual_basis_certificate, embed, ghost_covectors, lift, reflexivity_report, second_dual, BidualElement, BidualSpace,
    DualBasisCertificate, ReflexivityReport,
};
pub use derivations::{derivations, inner_derivation, leibniz_defect, z_action, z_closure, Derivation, VModule};
pub use duality::{bimodule_act, couple, differential, dual, right_kernel, star_dual, Covector, CovectorSpace};
pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Subspace};
pub use presets::Preset;
