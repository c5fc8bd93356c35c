//! Exact arithmetic: rationals, polynomials, resultants and algebraic towers.

pub mod bivariate;
pub mod extnat;
pub mod modp;
pub mod parse;
pub mod rational;
pub mod ring;
pub mod squarefree;
pub mod tower;
pub mod unipoly;

pub use bivariate::Poly;
pub use extnat::ExtNat;
pub use rational::Rational;
pub use ring::{GcdRing, Ring};
pub use unipoly::UniPoly;
