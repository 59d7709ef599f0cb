use crate::error::{Error, Result};
use crate::fields::{Field, Scalar};
use crate::linalg::Mat;
use crate::units::{ScaledScalar, UnitDim};

/// Electromagnetic 2-form `f_λμ` on spacetime and the particle's charge and
/// mass. The coupling uses the normalised field `F = (q/m) f`.
#[derive(Clone, Debug)]
pub struct EmField {
    n: usize,
    f: Vec<Vec<Field>>,
    pub charge: ScaledScalar,
    pub mass: ScaledScalar,
}

impl EmField {
    /// Build from the strict upper triangle of `f` (lower triangle mirrored
    /// with a sign, diagonal zero).
    pub fn new(f: Vec<Vec<Field>>, charge: ScaledScalar, mass: ScaledScalar) -> Result<Self> {
        let dim = f.len();
        if dim < 3 || f.iter().any(|r| r.len() != dim) {
            return Err(Error::Model("field strength must be (n+1)×(n+1)".into()));
        }
        charge.expect_dim("charge", UnitDim::charge())?;
        mass.expect_dim("mass", UnitDim::mass())?;
        if mass.value <= 0.0 {
            return Err(Error::Model("mass must be positive".into()));
        }
        let f = (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| match a.cmp(&b) {
                        std::cmp::Ordering::Less => f[a][b].clone(),
                        std::cmp::Ordering::Equal => Field::zero(),
                        std::cmp::Ordering::Greater => -&f[b][a],
                    })
                    .collect()
            })
            .collect();
        Ok(Self { n: dim - 1, f, charge, mass })
    }

    /// Uniform magnetic field `f₁₂ = b` (other components zero).
    pub fn uniform_b(n: usize, b: f64, charge: ScaledScalar, mass: ScaledScalar) -> Result<Self> {
        let mut f = vec![vec![Field::zero(); n + 1]; n + 1];
        f[1][2] = Field::constant(b);
        Self::new(f, charge, mass)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn raw(&self, a: usize, b: usize) -> &Field {
        &self.f[a][b]
    }

    pub fn ratio(&self) -> f64 {
        self.charge.value / self.mass.value
    }

    /// `F_λμ = (q/m) f_λμ` as fields.
    pub fn normalized(&self) -> Vec<Vec<Field>> {
        let r = self.ratio();
        self.f.iter().map(|row| row.iter().map(|x| r * x).collect()).collect()
    }

    pub fn eval_normalized<S: Scalar>(&self, x: &[S]) -> Mat<S> {
        let r = self.ratio();
        Mat::from_fn(self.n + 1, self.n + 1, |a, b| self.f[a][b].eval(x).scale(r))
    }
}

/// Local potential `A_λ` of the observed 2-form.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential(pub Vec<Field>);

impl Potential {
    pub fn zero(n: usize) -> Self {
        Self(vec![Field::zero(); n + 1])
    }

    /// Gauge shift `A → A + dχ`.
    pub fn gauge_shift(&self, chi: &Field) -> Self {
        Self(self.0.iter().enumerate().map(|(l, a)| a + chi.diff(l)).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Observer `o = ∂₀ + o₀ⁱ ∂ᵢ`, components `o₀ⁱ` on spacetime.
#[derive(Clone, Debug, PartialEq)]
pub struct Observer(pub Vec<Field>);

impl Observer {
    pub fn rest(n: usize) -> Self {
        Self(vec![Field::zero(); n])
    }

    pub fn is_rest(&self) -> bool {
        self.0.iter().all(Field::is_zero)
    }
}
