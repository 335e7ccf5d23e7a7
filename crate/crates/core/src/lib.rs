//! Exact arithmetic over finite fields and Galois-point analysis of plane
//! curves and rational covers of the projective line.

pub mod covers;
pub mod curve;
pub mod error;
pub mod field;
pub mod galois;
pub mod poly;
pub mod report;
pub mod text;

pub use error::{Error, Result};
pub use field::{Fe, Field, FieldElement, GaloisField};
