//! Spacetime vector fields and their prolongations to phase space, to the
//! tangent bundle and to second jets.

use crate::calculus::Components;
use crate::error::{Error, Result};
use crate::fields::{parse_vector_field, Field};

/// Projectable vector field `X = X⁰∂₀ + Xⁱ∂ᵢ` with constant time component.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimeVectorField {
    pub x0: f64,
    pub xs: Vec<Field>,
}

/// Unconstrained spacetime vector field, used to classify user input.
#[derive(Clone, Debug, PartialEq)]
pub struct RawVectorField(pub Vec<Field>);

impl RawVectorField {
    pub fn parse(src: &str, n: usize) -> Result<Self> {
        Ok(Self(parse_vector_field(src, n)?))
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Components of `L_X dt = dX⁰`, i.e. `∂_λ X⁰`.
    pub fn lie_dt(&self) -> Vec<Field> {
        (0..=self.n()).map(|l| self.0[0].diff(l)).collect()
    }

    /// Accept as an infinitesimal spacetime symmetry iff `L_X dt = 0`.
    pub fn classify(&self) -> Result<SpacetimeVectorField> {
        match self.0[0].as_const() {
            Some(c) if self.lie_dt().iter().all(Field::is_zero) => {
                Ok(SpacetimeVectorField { x0: c, xs: self.0[1..].to_vec() })
            }
            _ => Err(Error::NonConstantTimeComponent),
        }
    }
}

impl SpacetimeVectorField {
    pub fn new(x0: f64, xs: Vec<Field>) -> Self {
        Self { x0, xs }
    }

    pub fn parse(src: &str, n: usize) -> Result<Self> {
        RawVectorField::parse(src, n)?.classify()
    }

    /// Coordinate field `∂_λ`.
    pub fn coordinate(n: usize, l: usize) -> Self {
        let xs = (1..=n).map(|i| Field::constant(if i == l { 1.0 } else { 0.0 })).collect();
        Self { x0: if l == 0 { 1.0 } else { 0.0 }, xs }
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    /// Components `(X⁰, X¹, …, Xⁿ)` as fields on spacetime.
    pub fn components(&self) -> Vec<Field> {
        let mut out = vec![Field::constant(self.x0)];
        out.extend(self.xs.iter().cloned());
        out
    }

    pub fn as_raw(&self) -> RawVectorField {
        RawVectorField(self.components())
    }

    pub fn linear_combination(terms: &[(f64, &SpacetimeVectorField)]) -> Self {
        let n = terms[0].1.n();
        let mut x0 = 0.0;
        let mut xs = vec![Field::zero(); n];
        for (c, x) in terms {
            x0 += c * x.x0;
            for i in 0..n {
                xs[i] = &xs[i] + *c * &x.xs[i];
            }
        }
        Self { x0, xs }
    }

    /// `[X, Y]^λ = X^μ∂_μY^λ − Y^μ∂_μX^λ` (time component vanishes).
    pub fn bracket(&self, other: &Self) -> Self {
        let n = self.n();
        let a = self.components();
        let b = other.components();
        let xs = (1..=n)
            .map(|l| {
                let mut acc = Field::zero();
                for m in 0..=n {
                    acc = acc + &a[m] * b[l].diff(m) - &b[m] * a[l].diff(m);
                }
                acc
            })
            .collect();
        Self { x0: 0.0, xs }
    }

    /// Velocity components `X₀ⁱ = ∂₀Xⁱ + ∂ₖXⁱ vᵏ` on phase space.
    pub fn velocity_components(&self) -> Vec<Field> {
        let n = self.n();
        self.xs
            .iter()
            .map(|xi| {
                let mut acc = xi.diff(0);
                for k in 1..=n {
                    acc = acc + xi.diff(k) * Field::var(n + k);
                }
                acc
            })
            .collect()
    }

    /// Holonomic prolongation `X₍₁₎ = X⁰∂₀ + Xⁱ∂ᵢ + X₀ⁱ∂ᵢ⁰`.
    pub fn prolong1(&self) -> Components {
        let mut c = self.components();
        c.extend(self.velocity_components());
        Components(c)
    }

    /// Tangent prolongation `X₍T₎ = X^λ∂_λ + ∂_μX^λ ẋ^μ ∂̇_λ` on the chart
    /// `(x^λ, ẋ^λ)` of TE, with `ẋ^μ` at index `n + 1 + μ`.
    pub fn prolong_t(&self) -> Components {
        let n = self.n();
        let x = self.components();
        let mut c = x.clone();
        for l in 0..=n {
            let mut acc = Field::zero();
            for m in 0..=n {
                acc = acc + x[l].diff(m) * Field::var(n + 1 + m);
            }
            c.push(acc);
        }
        Components(c)
    }

    /// Second prolongation on `(t, x, v, a)`; the acceleration components are
    /// the total time derivative of the velocity components.
    pub fn prolong2(&self) -> Components {
        let n = self.n();
        let vel = self.velocity_components();
        let mut c = self.components();
        c.extend(vel.iter().cloned());
        for xi0 in &vel {
            let mut acc = xi0.diff(0);
            for k in 1..=n {
                acc = acc + xi0.diff(k) * Field::var(n + k) + xi0.diff(n + k) * Field::var(2 * n + k);
            }
            c.push(acc);
        }
        Components(c)
    }
}
