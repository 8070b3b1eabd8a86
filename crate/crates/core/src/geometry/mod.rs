//! Tensor calculus on a coordinate chart.

pub mod connection;
pub mod curvature;
pub mod forms;
pub mod lie;
pub mod linalg;
pub mod frames;
pub mod signature;
pub mod tensor;

pub use connection::{bracket, Connection};
pub use tensor::TensorField;
