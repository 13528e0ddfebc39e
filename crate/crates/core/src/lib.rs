//! Voicing-reflection groups over Z/n.
//!
//! The central object is the group 𝒥 generated by the three voicing
//! reflections U, V, W acting on ordered triples of pitch classes, together
//! with its extension Σ₃⋉𝒥 by the permutation matrices. Elements are carried
//! in normal form and matrices are derived views, so products and inverses
//! are constant time. On top of that the crate provides structural
//! computations (centers, centralizers, orders of GL/SL), the triadic model
//! with uniform triadic transformations and their linear representation, and
//! a small solver for transformational analysis of chord progressions.
//!
//! ```
//! use jgroup_core::prelude::*;
//!
//! let n = Modulus::TWELVE;
//! let vw = word_to_element(&[GeneratorTag::V, GeneratorTag::W], n);
//! assert_eq!(vw.to_string(), "(UV)^11 (UW)^1");
//! assert_eq!(vw.order(), 12);
//! ```

pub mod analysis;
pub mod closure;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod modring;
pub mod notation;
pub mod structure;
pub mod triadic;
pub mod voicing;

pub use error::{Error, Result};

/// The types and functions most programs need.
pub mod prelude {
    pub use crate::analysis::{
        export_network, find_affine_morphisms, orbit_of_element, rich, rich_element, solve_step, solve_uniform,
        verify_morphism_commutation, MorphismSearch, Progression, UniformSolution,
    };
    pub use crate::error::{Error, Result};
    pub use crate::extension::{CosetTag, ExtElement, GroupSelector};
    pub use crate::linalg::{AffineMap, Mat3, Perm3, Vec3};
    pub use crate::modring::{Modulus, Residue};
    pub use crate::triadic::{HookElement, Mode, TriadId, Utt, UttSign};
    pub use crate::voicing::{word_to_element, GeneratorTag, JElement};
}
