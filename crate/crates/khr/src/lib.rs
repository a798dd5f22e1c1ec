//! Knot homology computation engine: reduced Khovanov homology over exact
//! fields, classical invariants, unoriented skein triangles with their
//! induced maps, Floer-side rank windows, and exhaustive enumeration of
//! spectral-sequence differential patterns under grading and mark
//! constraints.

pub mod classical;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod field;
pub mod floer;
pub mod homology;
pub mod knotspec;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod skein;
pub mod sseq;

pub use diagram::PlanarDiagram;
pub use error::{Error, Result};
pub use knotspec::{diagram_for, parse_knot_spec, KnotSpec};

/// Default cap on crossing count for cube construction; override with the
/// KHR_CROSSING_CAP environment variable.
pub const DEFAULT_CROSSING_CAP: usize = 20;

pub fn crossing_cap() -> usize {
    std::env::var("KHR_CROSSING_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CROSSING_CAP)
}
