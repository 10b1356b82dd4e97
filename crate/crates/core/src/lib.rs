//! Finite simple graphs treated as geometric and spectral objects.
//!
//! Every graph carries its clique complex. On top of it the crate computes
//! curvature, dimension, cohomology (two independent ways), Dirac and Hodge
//! operators, counting determinants, Morse data, automorphism actions,
//! chip-firing divisor ranks, spectral evolution equations and
//! number-theoretic orbital networks.

pub mod complex;
pub mod divisors;
pub mod dynamics;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod morse;
pub mod orbital;
pub mod report;
pub mod spectral;
pub mod suite;
pub mod symmetry;
pub mod verdict;

pub use complex::SimplicialStructure;
pub use error::{Error, Result};
pub use graph::Graph;
pub use verdict::Verdict;
