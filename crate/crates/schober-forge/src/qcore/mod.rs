//! Quivers, ice quivers, paths, potentials, amalgamation and interchange formats.

mod ice;
pub mod io;
mod iso;
mod path;
mod potential;
mod quiver;
pub mod random;

pub use ice::{amalgamate, amalgamate_with, disjoint_union, glue_within, GluePotential, IceQuiverWP, QPMatching, Renaming};
pub use io::{export_dot, export_json, import_json};
pub use iso::{quiver_isomorphic, IsoWitness};
pub use path::{compose_paths, Path, PathSum};
pub use potential::{canonical_rotation, cyclic_derivative, necklace_sum, CyclicWord, Potential};
pub use quiver::{is_dual_label, Arrow, IceQuiver, Quiver, Vertex};
