//! Univariate and bivariate polynomials over an abstract [`Field`](crate::field::Field).

pub mod bifactor;
mod bivar;
mod charpoly;
pub mod factor;
pub mod funfield;
pub mod resultant;
mod uni;

pub use bivar::BiPoly;
pub use charpoly::charpoly;
pub use factor::{factor, roots, Factorization};
pub use funfield::{function_field_factor, FunFieldPoly, RatFunc};
pub use resultant::{resultant_uni, resultant_y};
pub use uni::UniPoly;
