//! Automorphisms, induced maps on harmonic forms, fixed simplices and
//! orbit counting for group actions.

pub mod automorphisms;
pub mod hurwitz;
pub mod lefschetz;

pub use automorphisms::{automorphisms, automorphisms_with_budget, is_group, GraphAutomorphism};
pub use hurwitz::{riemann_hurwitz, subgroups, GroupAction, HurwitzReport};
pub use lefschetz::{brouwer_check, fixed_simplices, lefschetz, orientation, preserves_orientation, LefschetzReport};
