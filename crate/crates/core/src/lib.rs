//! Exact computations with finite-type cluster algebras with principal
//! coefficients, built from subword complexes.
//!
//! For a Cartan matrix and a Coxeter element `c`, the facets of the subword
//! complex of `c · w₀(c)` are in bijection with the seeds of the cluster
//! algebra. [`verify::Model`] builds both sides at once and keeps them
//! matched; the root and weight functions of a facet then give the c- and
//! g-vectors of its seed.
//!
//! ```
//! use subword_cluster::rootsys::RootSystem;
//! use subword_cluster::verify::{run_checks, Check, Model};
//!
//! let model = Model::new(RootSystem::from_type_str("B3").unwrap(), "1,2,3".parse().unwrap()).unwrap();
//! assert_eq!(model.nodes().len(), 20);
//! let reports = run_checks(&model, &[Check::CVectors, Check::GVectors]).unwrap();
//! assert!(reports.iter().all(|r| r.passed()));
//! ```
//!
//! All arithmetic is exact. Vectors carry their basis (simple roots,
//! fundamental weights, or their duals) in the type. API indices are
//! 0-based, while `Display`, JSON and parsing are 1-based.

pub mod cluster;
pub mod coxeter;
pub mod error;
pub mod json;
pub mod laurent;
pub mod polytope;
pub mod rootsys;
pub mod simplex;
pub mod subword;
pub mod typea;
pub mod verify;

pub use error::{Error, Result};
