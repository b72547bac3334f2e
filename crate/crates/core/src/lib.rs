//! Sublinear-query estimation of the average degree of a graph.
//!
//! The estimators see a graph only through an [`oracle::OracleSession`],
//! which answers uniform-vertex, degree, and uniform-neighbor queries and
//! counts them. [`validators`] computes the quantities behind the
//! estimators' guarantees exactly on concrete graphs, and [`generators`]
//! builds the graph families used to exercise both.

pub mod error;
pub mod estimators;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod validators;

pub use error::{Error, Result};
pub use estimators::{
    draw_sample, ers, ers_gen, estimate_n_birthday, BirthdayReport, EstimateReport, EstimatorConfig,
};
pub use generators::{Certificate, Generated, GraphSpec};
pub use graph::{Graph, VertexId};
pub use oracle::{OracleSession, QueryCounts};
pub use validators::{exact_moments, MomentReport, Rational};
