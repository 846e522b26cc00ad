//! Regular subgroups normal in the holomorph of a finite p-group of class two,
//! and the group `T(G) = NHol(G)/Hol(G)` acting on those isomorphic to `G`.
//!
//! Groups are carried as dense multiplication tables built from power-commutator
//! presentations; automorphisms are permutations of element indices and act on
//! the right.

pub mod arith;
pub mod delta;
pub mod error;
pub mod experiments;
pub mod group;
pub mod holomorph;
pub mod tgroup;

pub use error::{HoloError, Result};
