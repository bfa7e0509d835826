//! Riemann-Roch spaces of plane projective curves over finite fields.

pub mod cli;
pub mod codes;
pub mod divisors;
pub mod error;
pub mod gf;
pub mod lifting;
pub mod linalg;
pub mod newton;
pub mod places;
pub mod polyring;
pub mod riemannroch;

pub use error::{Error, Result};
