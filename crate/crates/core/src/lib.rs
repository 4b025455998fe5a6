//! Invariants of polarized metrized graphs.
//!
//! The crate computes the tau constant and the theta, epsilon, `a`, `phi`
//! and `lambda` invariants of a polarized metrized graph, each along several
//! independent routes, exactly over the rationals or in floating point.
//! Known lower bounds for `phi` and `lambda` can be evaluated on any graph
//! or on seeded random samples.
//!
//! ```
//! use pmgraph::{families::{make_family, FamilySpec}, invariants::{invariant_report, Depth}, Rational, Scalar};
//!
//! let k4 = make_family::<Rational>(&FamilySpec::CompleteEqual { vertices: 4, total: Rational::from_i64(1) }).unwrap();
//! let report = invariant_report(&k4, Depth::Full).unwrap();
//! assert_eq!(report.phi, Rational::ratio(17, 288));
//! ```

pub mod bounds;
pub mod error;
pub mod families;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod linres;
pub mod matrix;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, MetrizedGraph, PmGraph};
pub use scalar::{Rational, Scalar};
