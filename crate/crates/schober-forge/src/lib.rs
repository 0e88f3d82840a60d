//! Exact computations with ice quivers with potential, their Ginzburg dg
//! categories, Auslander–Reiten theory of morphism categories of Dynkin
//! projectives, and gluing of triangle pieces along ribbon graphs.

pub mod ar_engine;
pub mod cli;
pub mod clustercalc;
pub mod error;
pub mod linalg;
pub mod dgpres;
pub mod dynkin;
pub mod ginzburg;
pub mod qcore;
pub mod surface;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
