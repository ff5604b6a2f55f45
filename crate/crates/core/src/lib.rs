//! Exact computations with finitely generated graded modules over an exterior
//! algebra `R = Λ(x_0, …, x_n)` over a prime field.
//!
//! Modules are right modules stored as per-degree action matrices (row
//! vectors); see [`gmod::GradedModule`].

pub mod constructions;
pub mod error;
pub mod exterior;
pub mod gmod;
pub mod homalg;
pub mod homology;
pub mod linalg;
pub mod modfile;
pub mod verify;

pub use error::{Error, Result};
pub use gmod::{GradedModule, ModuleMap};
pub use linalg::{Fp, Mat, Subspace};
