//! Coefficient arithmetic: exact rationals and dense polynomials in `k`.

mod kpoly;
mod rational;

pub use kpoly::KPoly;
pub use rational::Rational;
