use crate::error::{Error, Result};
use crate::fields::{sample_points, Field, SampleBox, Scalar};
use crate::linalg::{invert_fields, Mat};

/// Spacelike metric `G⁰ᵢⱼ` on spacetime, with its symbolic inverse and first
/// partials. Spatial indices are 0-based here (`g[0][0]` is `G⁰₁₁`).
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    n: usize,
    g: Vec<Vec<Field>>,
    inv: Vec<Vec<Field>>,
    /// `dg[λ][i][j] = ∂_λ G_ij`, λ over spacetime coordinates.
    dg: Vec<Vec<Vec<Field>>>,
}

impl Metric {
    /// Build from the upper triangle of `g` (entries below the diagonal are
    /// ignored and mirrored, so symmetry holds by storage).
    pub fn new(g: Vec<Vec<Field>>) -> Result<Self> {
        let n = g.len();
        if n == 0 || g.iter().any(|r| r.len() != n) {
            return Err(Error::Model("metric must be a square matrix".into()));
        }
        let sym: Vec<Vec<Field>> =
            (0..n).map(|i| (0..n).map(|j| if i <= j { g[i][j].clone() } else { g[j][i].clone() }).collect()).collect();
        for row in &sym {
            for f in row {
                if f.max_var().is_some_and(|m| m > n) {
                    return Err(Error::Model("metric entries must depend on spacetime only".into()));
                }
            }
        }
        let inv = invert_fields(&sym);
        Ok(Self::assemble(sym, inv))
    }

    /// Build with a known inverse (validated at sample points).
    pub fn with_inverse(g: Vec<Vec<Field>>, inv: Vec<Vec<Field>>) -> Result<Self> {
        let m = Self::new(g)?;
        let n = m.n;
        let check = Self::assemble(m.g.clone(), inv);
        for p in sample_points(n + 1, 16, 7, SampleBox::new(-0.5, 0.5)) {
            let prod = check.eval(&p).matmul(&check.eval_inverse(&p));
            if prod.max_abs_diff(&Mat::identity(n)) > 1e-10 {
                return Err(Error::Model("supplied inverse metric is inconsistent".into()));
            }
        }
        Ok(check)
    }

    fn assemble(g: Vec<Vec<Field>>, inv: Vec<Vec<Field>>) -> Self {
        let n = g.len();
        let dg = (0..=n).map(|l| (0..n).map(|i| (0..n).map(|j| g[i][j].diff(l)).collect()).collect()).collect();
        Self { n, g, inv, dg }
    }

    pub fn euclidean(n: usize) -> Self {
        let g = (0..n).map(|i| (0..n).map(|j| Field::constant(if i == j { 1.0 } else { 0.0 })).collect()).collect();
        Self::new(g).expect("identity metric")
    }

    pub fn diagonal(d: Vec<Field>) -> Result<Self> {
        let n = d.len();
        Self::new((0..n).map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Field::zero() }).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Field {
        &self.g[i][j]
    }

    pub fn inverse_entry(&self, i: usize, j: usize) -> &Field {
        &self.inv[i][j]
    }

    /// `∂_λ G_ij`.
    pub fn partial(&self, l: usize, i: usize, j: usize) -> &Field {
        &self.dg[l][i][j]
    }

    pub fn entries(&self) -> &[Vec<Field>] {
        &self.g
    }

    pub fn eval<S: Scalar>(&self, x: &[S]) -> Mat<S> {
        Mat::from_fn(self.n, self.n, |i, j| self.g[i][j].eval(x))
    }

    pub fn eval_inverse<S: Scalar>(&self, x: &[S]) -> Mat<S> {
        Mat::from_fn(self.n, self.n, |i, j| self.inv[i][j].eval(x))
    }

    /// Cholesky probe at the given spacetime points.
    pub fn check_spd(&self, points: &[Vec<f64>]) -> Result<()> {
        for p in points {
            if !self.eval(p).is_spd() {
                return Err(Error::SingularMetric { point: p[..=self.n].to_vec() });
            }
        }
        Ok(())
    }

    /// Smallest eigenvalue of `G` at `x`.
    pub fn min_eigenvalue(&self, x: &[f64]) -> f64 {
        self.eval(x).sym_eigenvalues()[0]
    }
}
