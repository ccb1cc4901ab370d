//! Numerical semigroups and Wilf's conjecture: invariants, the near-miss
//! families with `c = 4m`, and an exhaustive explorer of the semigroup tree.

pub mod cli;
pub mod construct;
pub mod error;
pub mod explore;
pub mod semigroup;
pub mod sumset;
pub mod wilf;

pub use construct::{
    construct_bh, construct_consecutive, construct_pair, construct_translated, explicit_family,
    verify_construction, ConstructionResult, PredictedProfile, Recipe,
};
pub use error::{Error, Result};
pub use explore::{
    census, hunt_near_misses, scan_conjecture_bound, scan_conjecture_minima, ExplorationNode,
    ExploreOptions, HuntFilter, HuntRecord,
};
pub use semigroup::{AperyTable, GeneratorSpec, NumericalSemigroup, Presentation};
pub use sumset::IntSet;
pub use wilf::{wilf_report, WilfReport};
