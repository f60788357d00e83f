//! Integer and modular polynomial machinery backing the exact algebra:
//! univariate and bivariate polynomials over Z, modular gcds and
//! factorization over Q.

pub mod bipoly;
pub mod factor;
pub mod fp;
pub mod gcd;
pub mod intpoly;
pub mod modpoly;
pub mod zfactor;

pub use bipoly::IntBiPoly;
