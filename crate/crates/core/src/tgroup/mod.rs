//! `T(G) = NHol(G)/Hol(G)` as a concrete group acting regularly on `H(G)`.

pub mod analyze;
pub mod build;
pub mod power;
pub mod theta;

pub use analyze::{analyze, TReport};
pub use build::{build_t_group, TGroup};
pub use power::power_theta_family;
pub use theta::{gamma_from_theta, theta_for, ThetaClass};
