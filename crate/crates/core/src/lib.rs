//! Random hyperbolic graph laboratory.
//!
//! Points are drawn on a hyperbolic disk of radius `R = 2 ln n + C` with
//! radial density `α sinh(αr)/(cosh(αR) - 1)` and uniform angles; two points
//! are joined when their hyperbolic distance is at most `R`. The crate covers
//! sampling, exact graph construction, measures of disk regions, structural
//! analysis and a determinized exploration procedure that searches for paths
//! toward the center of the disk.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod explorer;
pub mod geometry;
pub mod graph;
pub mod measure;
pub mod report;
pub mod sampler;

pub use error::{Error, Result};
pub use geometry::{ModelParams, PolarPoint};
pub use graph::{Builder, Graph};
pub use sampler::{SampleModel, SampleSet};

/// Crate version recorded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
