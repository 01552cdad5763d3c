//! Executable checks for model structures on finite categories, dg algebras
//! and dg categories.

pub mod cat;
pub mod catmodel;
pub mod complexes;
pub mod dg;
pub mod dgalg;
pub mod dgcat;
pub mod lifting;
pub mod linalg;
pub mod polyring;
pub mod scalar;

pub use num_rational::BigRational;
pub use scalar::Scalar;

/// Exact rationals, the default ground field.
pub type Q = BigRational;
pub type QMatrix = linalg::Matrix<Q>;
pub type FMatrix = linalg::Matrix<f64>;
