//! Finite groups as multiplication tables, their subgroups, automorphisms and
//! isomorphisms.

pub mod aut;
pub mod collector;
pub mod presentation;
pub mod search;
pub mod subgroup;
pub mod table;

pub use aut::{automorphism_generators, automorphism_group, AutList, AutSet};
pub use collector::Collector;
pub use presentation::{ClassTwoPresentation, Preset, Word};
pub use search::{isomorphism_search, search_isomorphisms};
pub use subgroup::Subgroup;
pub use table::{GroupTable, DEFAULT_ORDER_CAP};
