//! Numerical building blocks used by the semiclassical and oracle modules.

pub mod fit;
pub mod quadrature;
pub mod richardson;
pub mod roots;
pub mod tridiagonal;
