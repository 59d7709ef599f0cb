//! Covariant Galilean mechanics on coordinate charts.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod calculus;
pub mod catalog;
pub mod commands;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod linalg;
pub mod report;
pub mod symmetry;
pub mod units;

pub use error::{Error, Result};
pub use fields::{Chart, Dual, Field, PhasePoint, Scalar};
pub use units::{ScaledScalar, UnitDim};
