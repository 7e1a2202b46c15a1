//! Permutation groups: stabilizer chains, giant recognition, G-sets with free
//! orbits, Rubik groups and Goursat decompositions.

mod chain;
mod giant;
mod goursat;
mod gset;
mod permutation;
mod rubik;

pub use chain::PermutationGroup;
pub use giant::{alt_generation_check, classify_giant, AltGenerationReport, Giant};
pub use goursat::{goursat_decompose, GoursatDecomposition};
pub use gset::{GSetAction, OrbitKind};
pub use permutation::{parse_cycle_list, Permutation};
pub use rubik::{
    rubik_decompose, rubik_membership, rubik_order, rubik_standard_generators,
    rubik_surjectivity_check, wreath_element, RubikDecomposition, RubikSurjectivityReport,
};
