//! Limit shapes and arctic curves of dimer and vertex models on polygons.
//!
//! The pipeline runs [`regions`] → [`solver`] → [`envelope`]: a polygon
//! fixes piecewise-constant boundary data, the solver finds the rational
//! parameter map matching them, and the surface and arctic curve are
//! envelopes of the resulting tangent planes. [`models`] holds the
//! per-model slope formulas, [`elliptic`] the functions behind the Aztec
//! fortress, and [`fourvertex`] the inscribed-ellipse construction.
//!
//! ```
//! use limitshape::envelope::sample_arctic;
//! use limitshape::solver::{solve_octagon, SolverOptions};
//!
//! let shape = solve_octagon(0.5, 0.25, &SolverOptions::default()).unwrap();
//! let curve = sample_arctic(&shape, 32).unwrap();
//! assert_eq!(curve.arcs.len(), 8);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod elliptic;
pub mod envelope;
pub mod error;
pub mod fourvertex;
pub mod hplane;
pub mod models;
pub mod poly;
pub mod regions;
pub mod solver;

pub use error::{Error, RegionError, Result};
pub use hplane::{BoundaryData, ExtComplex, ExtReal, Extended, Mobius};
pub use num_complex::Complex64;
