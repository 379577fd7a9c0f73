//! Generalized complex deformation calculations on nilmanifold frames.

#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod courant;
pub mod deformation;
pub mod error;
pub mod exterior;
pub mod frame;
pub mod linalg;
pub mod pipeline;
pub mod scalar;
pub mod workspace;

pub use error::{Error, Result};
