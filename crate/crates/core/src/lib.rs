//! Exact combinatorics of tame mod-p Galois representations valued in split
//! reductive groups: root data and Weyl groups, parabolics from
//! cocharacters, tame inertial pairs and their irreducibility, crystalline
//! lifts, and Hodge-Tate types.
//!
//! All arithmetic is over `Z` or `Z/N` with `i64` entries; nothing is
//! floating point.

pub mod crystalline_lift;
pub mod dynamic;
pub mod fixtures;
pub mod formats;
pub mod hodge_tate;
pub mod lattice;
pub mod root_datum;
pub mod selftest;
pub mod tame_reps;

pub use crystalline_lift::{CrysCharTuple, LiftChecks, LiftError, LiftResult, TrickMode};
pub use dynamic::ParabolicType;
pub use formats::{canonical_json, FormatError, GroupSpec, PairFile};
pub use hodge_tate::{EmbeddingProfile, HTType, HodgeTateError, IntMultiset, RegularLift};
pub use lattice::{IntMatrix, ModKernel, SmithForm};
pub use root_datum::{Cochar, DatumData, DatumError, Invariant, Preset, RootDatum, WeylElement};
pub use tame_reps::{
    Certificate, Irreducibility, OracleError, OracleGuard, PairError, TameInertialPair, ValidityReport,
};
