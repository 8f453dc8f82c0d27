//! Signed permutations avoiding sets of 2-letter signed patterns.
//!
//! The crate counts b_n(T) = |B_n(T)| for every T ⊆ B_2 by three independent
//! methods, reduces the 256 sets to orbits under reversal, barring and
//! complement, and checks the known closed forms for every orbit exactly.

pub mod census;
pub mod enumeration;
pub mod error;
pub mod formulas;
pub mod registry;
pub mod signed;
pub mod symmetry;

pub use census::{
    export, load_cache, run_census, run_census_with, verify_registry, verify_registry_with, wilf_classes,
    CensusOptions, CensusRecord, CensusTable, ExportFormat, Verification, VerificationReport,
};
pub use enumeration::{CountResult, Enumerator, Execution, MaskHistogram, Method};
pub use error::{Error, Result};
pub use formulas::{eval_formula, FormulaId};
pub use registry::{registry, RegistryEntry};
pub use signed::{ContainmentMask, Pattern, PatternSet, SignedLetter, SignedPermutation};
pub use symmetry::{canonical_representative, group_elements, orbit_of_set, Orbit, SymmetryElement};
