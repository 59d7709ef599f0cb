//! Noether charges and momentum maps.

use serde::Serialize;

use crate::calculus::{gradient, Contraction, Interior, OneForm, PhaseFunction, VectorField};
use crate::fields::scalar::seed_along;
use crate::fields::{sample_points, Field, Scalar};
use crate::geometry::{Lagrangian, Metric, Model, Omega, Reeb, Theta};

use super::action::LieAlgebraAction;
use super::check::CheckOptions;
use super::lie::lie_theta;
use super::vector_field::SpacetimeVectorField;

/// `½f⁰Gᵢⱼvⁱvʲ + fᵢ⁰vⁱ + f̊` with coefficient fields on spacetime.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialQuadratic {
    pub metric: Metric,
    pub f0: Field,
    pub f_lin: Vec<Field>,
    pub f_ring: Field,
}

impl SpecialQuadratic {
    pub fn n(&self) -> usize {
        self.f_lin.len()
    }

    pub fn constant_time_component(&self) -> Option<f64> {
        self.f0.as_const()
    }

    pub fn to_field(&self) -> Field {
        let n = self.n();
        let mut acc = self.f_ring.clone();
        for i in 0..n {
            let vi = Field::var(n + 1 + i);
            acc = acc + &self.f_lin[i] * &vi;
            for j in 0..n {
                acc = acc + 0.5 * &self.f0 * self.metric.entry(i, j) * &vi * Field::var(n + 1 + j);
            }
        }
        acc
    }
}

impl PhaseFunction for SpecialQuadratic {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let n = self.n();
        let v = &p[n + 1..];
        let mut acc = self.f_ring.eval(p) + self.metric.eval(p).bilinear(v, v) * self.f0.eval(p).scale(0.5);
        for i in 0..n {
            acc += self.f_lin[i].eval(p) * v[i];
        }
        acc
    }
}

/// `f = −(X⁰Θ₀ + XⁱΘᵢ)` in coefficient form:
/// `f⁰ = X⁰`, `fⱼ⁰ = −GᵢⱼXⁱ`, `f̊ = −(X⁰A₀ + XⁱAᵢ)`.
pub fn noether_charge(model: &Model, x: &SpacetimeVectorField) -> SpecialQuadratic {
    let n = model.n();
    let g = &model.metric;
    let a = &model.potential.0;
    let f_lin = (0..n)
        .map(|j| {
            let mut acc = Field::zero();
            for i in 0..n {
                acc = acc - g.entry(i, j) * &x.xs[i];
            }
            acc
        })
        .collect();
    let mut f_ring = -x.x0 * &a[0];
    for i in 0..n {
        f_ring = f_ring - &x.xs[i] * &a[i + 1];
    }
    SpecialQuadratic { metric: g.clone(), f0: Field::constant(x.x0), f_lin, f_ring }
}

/// `−(X ⌟ 𝓟 + X̲ ⌟ 𝓛) = −(𝓟ᵢ(Xⁱ − vⁱX⁰) + X⁰𝓛)`.
pub struct LagrangianCharge<'a> {
    pub model: &'a Model,
    pub x: &'a SpacetimeVectorField,
}

impl PhaseFunction for LagrangianCharge<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let n = self.model.n();
        let st = self.model.structure();
        let mom = st.momentum(p);
        let x0 = S::cst(self.x.x0);
        let mut acc = Lagrangian(st).eval(p) * x0;
        for i in 0..n {
            acc += mom[i] * (self.x.xs[i].eval(p) - p[n + 1 + i] * x0);
        }
        -acc
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChargeDiagnostics {
    /// `max |L_{X₍₁₎}Θ|`; the charge is conserved when this passes.
    pub theta_residual: f64,
    /// `max |γ·f|`.
    pub conservation_residual: f64,
    /// `max |f − (−i_{X₍₁₎}Θ)|` and `max |f − (−(X⌟𝓟 + X̲⌟𝓛))|`.
    pub contraction_residual: f64,
    pub lagrangian_residual: f64,
    pub conserved: bool,
}

pub fn charge_diagnostics(
    model: &Model,
    x: &SpacetimeVectorField,
    f: &SpecialQuadratic,
    opts: &CheckOptions,
) -> ChargeDiagnostics {
    let n = model.n();
    let st = model.structure();
    let y = x.prolong1();
    let contraction = Contraction(&y, Theta(st));
    let lag = LagrangianCharge { model, x };
    let mut d = ChargeDiagnostics {
        theta_residual: 0.0,
        conservation_residual: 0.0,
        contraction_residual: 0.0,
        lagrangian_residual: 0.0,
        conserved: false,
    };
    for p in sample_points(2 * n + 1, opts.points, opts.seed, opts.bx) {
        let fv = f.eval(&p);
        d.theta_residual = d.theta_residual.max(lie_theta(x, st, &p).iter().fold(0.0f64, |m, v| m.max(v.abs())));
        let g = Reeb(st).eval(&p);
        d.conservation_residual = d.conservation_residual.max(f.eval(&seed_along(&p, &g)).eps.abs());
        d.contraction_residual = d.contraction_residual.max((fv + contraction.eval(&p)).abs());
        d.lagrangian_residual = d.lagrangian_residual.max((fv - lag.eval(&p)).abs());
    }
    d.conserved = d.theta_residual < opts.tol.pass;
    d
}

/// One component of a momentum map: `(J_ξ, τ_ξ)` with its gauge anchor.
#[derive(Clone, Debug)]
pub struct MomentumMapEntry {
    pub label: String,
    pub generator: SpacetimeVectorField,
    pub charge: SpecialQuadratic,
    pub tau: f64,
    pub anchor: Vec<f64>,
    pub anchor_value: f64,
    /// `max ‖dJ − i_{X₍₁₎}Ω‖∞` over the sample points.
    pub differential_residual: f64,
    pub diagnostics: ChargeDiagnostics,
}

impl MomentumMapEntry {
    pub fn is_symmetry(&self) -> bool {
        self.diagnostics.conserved
    }
}

/// Momentum map of a projectable action, with `J_ξ = −i_{X₍₁₎}Θ` and the
/// additive constant fixed at the chart origin with zero velocity.
pub fn momentum_map(model: &Model, action: &LieAlgebraAction, opts: &CheckOptions) -> Vec<MomentumMapEntry> {
    let n = model.n();
    let st = model.structure();
    let anchor = vec![0.0; 2 * n + 1];
    action
        .generators
        .iter()
        .zip(&action.labels)
        .map(|(x, label)| {
            let charge = noether_charge(model, x);
            let y = x.prolong1();
            let anchor_value = -Contraction(&y, Theta(st)).eval(&anchor) + 0.0;
            let offset = anchor_value - charge.eval(&anchor);
            let charge = SpecialQuadratic { f_ring: &charge.f_ring + offset, ..charge };
            let mut residual = 0.0f64;
            for p in sample_points(2 * n + 1, opts.points, opts.seed, opts.bx) {
                let dj = gradient(&charge, &p);
                let iw = Interior(&y, Omega(st)).eval(&p);
                residual = dj.iter().zip(&iw).fold(residual, |m, (a, b)| m.max((a - b).abs()));
            }
            let diagnostics = charge_diagnostics(model, x, &charge, opts);
            MomentumMapEntry {
                label: label.clone(),
                generator: x.clone(),
                charge,
                tau: x.x0,
                anchor: anchor.clone(),
                anchor_value,
                differential_residual: residual,
                diagnostics,
            }
        })
        .collect()
}
