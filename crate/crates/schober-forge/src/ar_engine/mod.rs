//! Exact representation theory of Dynkin quivers and the AR quiver with mesh
//! relations of the morphism category `Fun([1], proj I)`.
//!
//! `P_i` has basis the paths starting at `i`, so `Hom(P_i, P_j)` has basis the
//! paths `j ⇝ i`. All computations are over `Q`.

mod arquiver;
mod morcat;
mod rep;

pub use arquiver::{ar_quiver_mor, ArArrow, ArQuiver, Mesh, MeshTerm};
pub use morcat::{mor_hom, mor_indecomposables, Family, MorMap, MorObject};
pub use rep::{
    coxeter_minus, ext1_dim, indecomposable_reps, minimal_presentation, proj_map, proj_sum, projective_rep, rep_hom,
    Presentation, RepMap, Representation, Shape,
};
