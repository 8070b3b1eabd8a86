pub mod catalog;
pub mod check;
pub mod classification;
pub mod curvature;
pub mod deformations;
pub mod error;
pub mod geometry;
pub mod nullity;
pub mod parser;
pub mod report;
pub mod structure;
pub mod symbolic;

pub use error::{Error, Result};
pub use symbolic::{Context, Ctx, Generator, Polynomial, Rational, Scalar, ScalarField};
