//! Conjugate solution pairs coupled by first-order systems, from harmonic
//! conjugates to electromagnetic plane waves, with numerical validation of
//! every closed form against grid-sampled residuals.

pub mod classical;
pub mod cli;
pub mod conductor;
pub mod config;
pub mod csvio;
pub mod error;
pub mod fields;
pub mod grid;
pub mod medium;
pub mod report;
pub mod residual;
pub mod vacuum;
pub mod vec3;

pub use error::{Error, Result};
pub use num_complex::Complex64;
