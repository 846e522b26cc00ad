pub mod cache;
pub mod config;
pub mod families;
pub mod pipeline;
pub mod repro;
