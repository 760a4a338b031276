//! Axial curvatures of corank-1 map germs `(R^n, 0) -> (R^(n+k), 0)`.

pub mod analysis;
pub mod classify;
pub mod curvatures;
pub mod error;
pub mod fixtures;
pub mod frames;
pub mod jetcore;
pub mod linalg;
pub mod locus;
pub mod report;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use analysis::Analysis;
