//! Gamma functions as equivariant bilinear maps, solved by linear algebra
//! over `F_p`.

pub mod all_central;
pub mod bilinear;
pub mod section;
pub mod solver;

pub use all_central::{symmetric_delta_space, symmetric_delta_space_for, AllCentralGroup, AllCentralSpec};
pub use bilinear::{BilinearDelta, DeltaExport, DeltaSetup, DeltaSolutions};
pub use section::ElementarySection;
