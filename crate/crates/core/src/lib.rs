//! Generalized τ-Li coefficients λ_F(n, τ) for products of shifted Riemann
//! zeta functions, computed from zero tables with certified error intervals
//! and from closed arithmetic formulas.

pub mod analysis;
pub mod arithmetic;
pub mod bounds;
mod error;
pub mod model;
pub mod output;
pub mod precision;
pub mod report;
pub mod special;
pub mod zeros;
pub mod zerosum;

pub use error::{Error, Result};
pub use precision::Precision;
