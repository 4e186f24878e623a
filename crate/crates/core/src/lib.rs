pub mod aut;
pub mod curve;
pub mod error;
pub mod field;
pub mod galois;
pub mod group;
pub mod plane;
pub mod projective;

pub use error::{Error, Result};
pub use field::{Fe, Tower};
