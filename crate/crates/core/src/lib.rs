//! Finite permutation groups, fusion systems on small p-groups, and their
//! realization through HNN extensions and trees of groups.

pub mod catalog;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod instances;
pub mod perm;
pub mod presentation;
pub mod rose;
pub mod semidirect;
pub mod star;
pub mod subgroups;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Limits, Subgroup};
pub use hom::GroupHom;
pub use perm::Perm;
