//! Explicit K3 surfaces of Picard rank two over prime fields.

pub mod algebra;
pub mod curves;
pub mod geometry;
pub mod k3;
pub mod lattice;
pub mod models;
