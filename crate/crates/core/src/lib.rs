//! Constructions, exact verification, parameter calculus, and exhaustive
//! search for locally semi-equitable colourings of balanced incomplete
//! block designs.
//!
//! A (v,k,λ)-BIBD covers every point pair by exactly λ blocks. An
//! ℓ-colouring of its points is *t-ULSE* when every block has one colour
//! represented exactly t times and each remaining colour exactly
//! (k−t)/(ℓ−1) times; the t = 0 case — every block missing exactly one
//! colour, the rest spread evenly — is the centre of gravity of this crate.
//!
//! What lives where:
//! - [`design`]: incidence structures (designs, transversal designs,
//!   resolvable structures) and their exact verifiers.
//! - [`colouring`]: colourings, the Υ-LSE/t-ULSE verifiers, the α/γ block
//!   counts, induced subdesigns.
//! - [`params`]: the necessary-condition battery tying v, k, λ, ℓ together
//!   and the enumeration of admissible symmetric parameter sets.
//! - [`transforms`]: block duplication, complements (plain and coloured),
//!   incidence duals.
//! - [`construct`]: the TD + RBIBD general construction and its symmetric
//!   form.
//! - [`ingredients`]: finite fields, affine planes, Hadamard matrices,
//!   twin-prime-power and explicit difference sets.
//! - [`search`]: exhaustive backtracking for t-ULSE colourings of a given
//!   design, with necessary-condition prefiltering and symmetry breaking.
//! - [`io`]: the design-file formats and deterministic emission.
//!
//! All counting is exact (integers and rationals); nothing is decided by
//! floating point.

pub mod colouring;
pub mod construct;
pub mod design;
pub mod error;
pub mod ingredients;
pub mod io;
pub mod params;
pub mod rational;
pub mod search;
pub mod testutil;
pub mod transforms;

pub use colouring::{
    alpha_gamma, colour_class_sizes, empirical_alpha_gamma, induced_design,
    missing_block_incidence, verify_t_ulse, verify_upsilon_lse, AlphaGamma, Colouring, LseProfile,
};
pub use construct::{general_construction, symmetric_construction, ColouredDesign};
pub use design::{
    block_count, fisher_and_symmetry, replication_number, verify_bibd, verify_resolution,
    verify_td, Design, FisherReport, ResolvableStructure, TransversalDesign, VerificationReport,
    Violation,
};
pub use error::{Error, Result};
pub use params::{
    check_admissible, ell_from_v_k, enumerate_admissible, lambda_min, v_from_k_ell,
    AdmissibilityFinding, Condition, ParameterSet,
};
pub use rational::Rational;
pub use search::{
    prefilter, search_t_ulse, search_t_ulse_jobs, SearchMode, SearchOutcome, SearchSpec,
};
pub use transforms::{complement, complement_coloured, dual, dual_as_td, duplicate};
