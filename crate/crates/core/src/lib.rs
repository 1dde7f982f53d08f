//! Exact verification toolkit for free-boundary q-Whittaker and
//! Hall–Littlewood processes, their contour-integral formulas, and the
//! quasi-open six-vertex and boson lattice models.

pub mod cli;
pub mod contour;
pub mod fbprocess;
pub mod lattice;
pub mod qpartition;
pub mod report;
pub mod series;

pub use report::{Status, VerificationReport};
