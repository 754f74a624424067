//! Möbius function of the permutation pattern poset, detection of
//! locally and strongly zero structure, and exact censuses.

pub mod cli;
pub mod error;
pub mod inflation;
pub mod perm;
pub mod poset;
pub mod szdetect;
pub mod zstats;

pub use error::{Error, Result};
pub use inflation::{decompose, inflate, inflate_at, Decomposition, InflationSpec};
pub use perm::{AdjacencyProfile, Perm, SymmetryOrbit};
pub use poset::{contains, cover, downset, interval, sigma_closure, MobiusCache, MobiusTable};
pub use szdetect::{build_registry, classify, Classification, SzCertificate, SzRegistry};
pub use zstats::CensusRow;
