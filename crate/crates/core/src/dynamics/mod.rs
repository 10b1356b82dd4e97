//! Evolution equations on forms.

pub mod pde;
pub mod toda;

pub use pde::*;
pub use toda::{toda_lax_deform, trajectory_csv, DeformationSample, DeformationState};
