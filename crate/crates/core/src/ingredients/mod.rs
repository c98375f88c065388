//! Factories for the ingredient structures the constructions consume:
//! finite fields, affine planes, Hadamard matrices with their derived
//! designs, and difference sets.

pub mod affine;
pub mod diffset;
pub mod field;
pub mod hadamard;

pub use affine::{affine_plane, td_from_affine};
pub use diffset::{
    develop_difference_set, pg40_coloured_design, pg40_coloured_stages, tpp_coloured_design,
    tpp_coloured_stages, tpp_difference_set, DifferenceSet, Group,
};
pub use field::{factor_prime_power, field_make, is_prime, squares, FieldSpec};
pub use hadamard::{hadamard, rbibd_from_hadamard, td_from_hadamard, HadamardMatrix};
