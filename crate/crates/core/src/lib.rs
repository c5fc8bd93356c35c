//! Jacobian Newton diagrams of plane map germs.

pub mod algebra;
pub mod corpus;
pub mod equisingularity;
pub mod error;
pub mod jacobian;
pub mod local;
pub mod newton;
pub mod puiseux;

pub use algebra::{parse::parse_polynomial, ExtNat, Poly, Rational};
pub use error::{Error, Result};
pub use newton::{Elementary, Inclination, NewtonDiagram};
