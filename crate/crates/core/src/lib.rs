//! Exact construction and verification of Lie algebras graded by the weight
//! systems `Θ_3` and `Θ_4`.

pub mod coords;
pub mod error;
pub mod expr;
pub mod frak;
pub mod graded;
pub mod hom;
pub mod linalg;
pub mod module;
pub mod mutation;
pub mod par;
pub mod sl;
pub mod tensor;

pub use error::{Error, Result};
