//! Coefficient fields on spacetime and phase space, the scalar types they are
//! evaluated on, and the sample-point generator used by every numerical check.

mod expr;
pub mod fd;
pub mod parse;
pub mod sample;
pub mod scalar;
mod tape;

pub use expr::Field;
pub use fd::{fd_oracle, fd_richardson};
pub use parse::{parse_field, parse_vector_field};
pub use sample::{sample_points, SampleBox};
pub use scalar::{Dual, Scalar};
pub use tape::Tape;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate chart with spatial dimension `n`.
///
/// Index convention on phase space: `0` is time, `1..=n` position and
/// `n+1..=2n` velocity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub n: usize,
}

impl Chart {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Model(format!("spatial dimension must be at least 2, got {n}")));
        }
        Ok(Self { n })
    }

    /// Dimension of spacetime E.
    pub fn spacetime_dim(&self) -> usize {
        self.n + 1
    }

    /// Dimension of phase space J₁E.
    pub fn phase_dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Index of velocity slot `i` (1-based spatial index).
    pub fn vel(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = vec!["t".to_string()];
        out.extend((1..=self.n).map(|i| format!("x{i}")));
        out.extend((1..=self.n).map(|i| format!("v{i}")));
        out
    }
}

/// A point of phase space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub t: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

impl PhasePoint {
    pub fn new(t: f64, x: Vec<f64>, v: Vec<f64>) -> Self {
        assert_eq!(x.len(), v.len());
        Self { t, x, v }
    }

    pub fn from_coords(p: &[f64]) -> Self {
        let n = (p.len() - 1) / 2;
        Self { t: p[0], x: p[1..=n].to_vec(), v: p[n + 1..].to_vec() }
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(1 + 2 * self.x.len());
        out.push(self.t);
        out.extend_from_slice(&self.x);
        out.extend_from_slice(&self.v);
        out
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.iter().chain(&self.v).all(|c| c.is_finite())
    }
}
