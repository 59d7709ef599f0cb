//! Infinitesimal symmetries: spacetime vector fields, their prolongations,
//! Lie derivatives of the geometric objects, Noether charges and
//! Hamiltonian lifts.

mod action;
pub mod check;
pub mod flow;
pub mod hamiltonian;
pub mod lie;
pub mod noether;
mod vector_field;

pub use action::LieAlgebraAction;
pub use vector_field::{RawVectorField, SpacetimeVectorField};
