//! Eigenvalues of the opposition relation on flags of finite projective and
//! polar spaces, the resulting Delsarte–Hoffman bounds for EKR-sets of
//! flags, and a brute-force geometry oracle that checks them exactly.

pub mod budget;
pub mod chars;
pub mod error;
pub mod geometry;
pub mod hecke;
pub mod weyl;

pub use budget::Budget;
pub use error::{Error, Result};
