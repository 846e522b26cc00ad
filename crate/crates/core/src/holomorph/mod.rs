//! Arithmetic in `Hol(G) = Aut(G) rho(G)`, gamma functions and the
//! enumeration of regular subgroups normal in the holomorph.

pub mod enumerate;
pub mod gamma;
pub mod hol;
pub mod properties;
pub mod regular;

pub use enumerate::enumerate_gammas_generic;
pub use gamma::{GammaExport, GammaMap};
pub use hol::{Hol, HolElement};
pub use regular::{hc_set, jc_set, RegularSubgroup};
