//! Dirac and Hodge operators, Betti numbers, determinants and zeta functions.

pub mod counting;
pub mod operators;
pub mod zeta;

pub use counting::*;
pub use operators::{betti_rank_oracle, pseudo_determinant, HodgeBetti, OperatorBundle};
pub use zeta::{Window, Zeta};
