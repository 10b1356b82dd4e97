//! Contractibility, Poincaré–Hopf indices, critical points, Morse
//! filtrations, and cup length / cover / critical-point comparisons.

pub mod category;
pub mod contractible;
pub mod filtration;
pub mod index;
pub mod mask;

pub use category::{cup_length_lower, ls_triple_check, tcap_exact, tcap_upper, CoverResult, CupLength, LsTriple};
pub use contractible::{is_contractible, is_contractible_with, replay_witness, HomotopyVerdict};
pub use filtration::{morse_filtration, morse_inequalities_check, MorseInequalities, MorseReport};
pub use index::{
    crit, critical_points, index_expectation_exhaustive, index_expectation_sampled, ph_check, ph_index, ph_indices,
    CritValue, SampledExpectation, VertexFunction,
};
