use crate::fields::{sample_points, SampleBox};
use crate::linalg::Mat;

use super::vector_field::SpacetimeVectorField;

/// Named finite family of spacetime generators spanning a Lie algebra action.
#[derive(Clone, Debug)]
pub struct LieAlgebraAction {
    pub name: String,
    pub labels: Vec<String>,
    pub generators: Vec<SpacetimeVectorField>,
}

impl LieAlgebraAction {
    pub fn new(name: impl Into<String>, labels: Vec<String>, generators: Vec<SpacetimeVectorField>) -> Self {
        assert_eq!(labels.len(), generators.len());
        Self { name: name.into(), labels, generators }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn n(&self) -> usize {
        self.generators[0].n()
    }

    /// Least-squares structure constants `[e_p, e_q] ≈ c^r e_r` fitted at
    /// sample points, with the maximal fit residual.
    pub fn bracket_coefficients(&self, p: usize, q: usize, seed: u64) -> (Vec<f64>, f64) {
        let n = self.n();
        let target = self.generators[p].bracket(&self.generators[q]).components();
        let basis: Vec<Vec<_>> = self.generators.iter().map(|g| g.components()).collect();
        let pts = sample_points(n + 1, 16, seed, SampleBox::new(-0.7, 0.7));
        let d = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for x in &pts {
            for l in 0..=n {
                rows.push(basis.iter().map(|b| b[l].eval(x)).collect::<Vec<f64>>());
                rhs.push(target[l].eval(x));
            }
        }
        let a = Mat::from_rows(&rows);
        let ata = a.transpose().matmul(&a);
        let atb = a.transpose().mul_vec(&rhs);
        let c = ata.solve(&atb).unwrap_or_else(|| vec![0.0; d]);
        let fit = a.mul_vec(&c);
        let res = fit.iter().zip(&rhs).fold(0.0f64, |m, (f, r)| m.max((f - r).abs()));
        (c, res)
    }

    /// Largest closure residual over all pairs; small iff the span is a Lie algebra.
    pub fn closure_residual(&self, seed: u64) -> f64 {
        let mut worst = 0.0f64;
        for p in 0..self.dim() {
            for q in p + 1..self.dim() {
                worst = worst.max(self.bracket_coefficients(p, q, seed).1);
            }
        }
        worst
    }
}
