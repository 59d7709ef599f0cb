//! Phase forms built from the model inputs: Ω from (G, Γ), minimal coupling,
//! the Poincaré–Cartan form and its Lagrangian/momentum splitting, and the
//! observed 2-form.

use crate::calculus::{TwoForm, VectorField};
use crate::fields::{Field, Scalar};
use crate::linalg::Mat;

use super::connection::{PhaseConnection, SpacetimeConnection};
use super::em::{EmField, Observer, Potential};
use super::metric::Metric;
use super::structure::{omega_from_parts, PhaseStructure};

/// Ω[G, Γ] at a phase point, evaluated directly from the coefficient fields.
pub fn dynamical_two_form<S: Scalar>(g: &Metric, gamma: &PhaseConnection, p: &[S]) -> Mat<S> {
    let n = g.n();
    omega_from_parts(n, &g.eval(p), |l, i| gamma.contracted(p, l, i), &p[n + 1..])
}

/// Ω♮ + F with the normalised field embedded in the (∂₀, ∂ᵢ) block.
pub fn minimal_coupling<S: Scalar>(omega_nat: &Mat<S>, f: &Mat<S>) -> Mat<S> {
    let mut out = omega_nat.clone();
    for a in 0..f.rows() {
        for b in 0..f.cols() {
            out[(a, b)] += f[(a, b)];
        }
    }
    out
}

/// Total connection of the coupled theory:
/// `K₀ⁱ_k += ½Fⁱ_k`, `K₀ⁱ₀ += Fⁱ₀` with `F` normalised and raised by `G⁻¹`.
pub fn coupled_connection(k_nat: &SpacetimeConnection, g: &Metric, em: &EmField) -> SpacetimeConnection {
    let n = g.n();
    let f = em.normalized();
    let raised = |i: usize, m: usize| -> Field {
        let mut acc = Field::zero();
        for h in 0..n {
            acc = acc + g.inverse_entry(i, h) * &f[h + 1][m];
        }
        acc
    };
    let delta = SpacetimeConnection::from_fn(n, |l, i, m| match (l, m) {
        (0, 0) => raised(i, 0),
        (0, m) => 0.5 * raised(i, m),
        _ => Field::zero(),
    });
    k_nat.plus(&delta)
}

/// Ω♮ coupled with an electromagnetic field, evaluated as a matrix sum.
pub struct CoupledTwoForm<'a> {
    pub natural: &'a PhaseStructure,
    pub em: &'a EmField,
}

impl TwoForm for CoupledTwoForm<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        minimal_coupling(&self.natural.omega(p), &self.em.eval_normalized(p))
    }
}

/// `½ qᵢⱼvⁱvʲ + lᵢvⁱ + c` with coefficient fields on spacetime.
#[derive(Clone, Debug, PartialEq)]
pub struct VelocityQuadratic {
    pub q: Vec<Vec<Field>>,
    pub l: Vec<Field>,
    pub c: Field,
}

/// Component-wise `lin[i]·v + c[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VelocityAffine {
    pub lin: Vec<Vec<Field>>,
    pub c: Vec<Field>,
}

impl VelocityQuadratic {
    pub fn n(&self) -> usize {
        self.l.len()
    }

    pub fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let n = self.n();
        let v = &p[n + 1..];
        let mut acc = self.c.eval(p);
        for i in 0..n {
            acc += self.l[i].eval(p) * v[i];
            for j in 0..n {
                acc += self.q[i][j].eval(p) * v[i] * v[j] * S::cst(0.5);
            }
        }
        acc
    }

    pub fn to_field(&self) -> Field {
        let n = self.n();
        let mut acc = self.c.clone();
        for i in 0..n {
            let vi = Field::var(n + 1 + i);
            acc = acc + &self.l[i] * &vi;
            for j in 0..n {
                acc = acc + 0.5 * &self.q[i][j] * &vi * Field::var(n + 1 + j);
            }
        }
        acc
    }

    /// Fibre derivative `∂/∂vⁱ`, an affine map in the velocities.
    pub fn fibre_derivative(&self) -> VelocityAffine {
        VelocityAffine { lin: self.q.clone(), c: self.l.clone() }
    }
}

impl VelocityAffine {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.n();
        let v = &p[n + 1..];
        (0..n)
            .map(|i| {
                let mut acc = self.c[i].eval(p);
                for j in 0..n {
                    acc += self.lin[i][j].eval(p) * v[j];
                }
                acc
            })
            .collect()
    }

    pub fn to_fields(&self) -> Vec<Field> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut acc = self.c[i].clone();
                for j in 0..n {
                    acc = acc + &self.lin[i][j] * Field::var(n + 1 + j);
                }
                acc
            })
            .collect()
    }

    /// `Σ vⁱ · component i`, as a velocity quadratic.
    fn contract_velocity(&self) -> VelocityQuadratic {
        let n = self.n();
        VelocityQuadratic {
            q: (0..n).map(|i| (0..n).map(|j| &self.lin[i][j] + &self.lin[j][i]).collect()).collect(),
            l: self.c.clone(),
            c: Field::zero(),
        }
    }
}

fn quad_add(a: &VelocityQuadratic, b: &VelocityQuadratic, sign: f64) -> VelocityQuadratic {
    let n = a.n();
    let comb = |x: &Field, y: &Field| if sign > 0.0 { x + y } else { x - y };
    VelocityQuadratic {
        q: (0..n).map(|i| (0..n).map(|j| comb(&a.q[i][j], &b.q[i][j])).collect()).collect(),
        l: (0..n).map(|i| comb(&a.l[i], &b.l[i])).collect(),
        c: comb(&a.c, &b.c),
    }
}

/// Horizontal potential Θ = Θ₀ d⁰ + Θᵢ dⁱ of Ω, in observer-adapted charts.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareCartan {
    pub theta0: VelocityQuadratic,
    pub theta: VelocityAffine,
}

/// `𝓛 d⁰` with 𝓛 quadratic in the velocities.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangianForm(pub VelocityQuadratic);

/// `𝓟ᵢ (dⁱ − vⁱd⁰)` with 𝓟ᵢ affine in the velocities.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumForm(pub VelocityAffine);

/// `Θ₀ = −½G⁰ᵢⱼvⁱvʲ + A₀`, `Θᵢ = G⁰ᵢⱼvʲ + Aᵢ`.
pub fn poincare_cartan(g: &Metric, a: &Potential) -> PoincareCartan {
    let n = g.n();
    let theta0 = VelocityQuadratic {
        q: (0..n).map(|i| (0..n).map(|j| -g.entry(i, j)).collect()).collect(),
        l: vec![Field::zero(); n],
        c: a.0[0].clone(),
    };
    let theta = VelocityAffine {
        lin: (0..n).map(|i| (0..n).map(|j| g.entry(i, j).clone()).collect()).collect(),
        c: (0..n).map(|i| a.0[i + 1].clone()).collect(),
    };
    PoincareCartan { theta0, theta }
}

impl PoincareCartan {
    pub fn n(&self) -> usize {
        self.theta.n()
    }

    /// Components on phase space in the basis (d⁰, dⁱ, d₀ⁱ).
    pub fn components(&self) -> Vec<Field> {
        let n = self.n();
        let mut out = vec![self.theta0.to_field()];
        out.extend(self.theta.to_fields());
        out.extend(std::iter::repeat_n(Field::zero(), n));
        out
    }
}

/// `𝓛 = Θ₀ + Θᵢvⁱ`, `𝓟 = ∂𝓛/∂v`.
pub fn lagrangian_and_momentum(theta: &PoincareCartan) -> (LagrangianForm, MomentumForm) {
    let l = quad_add(&theta.theta0, &theta.theta.contract_velocity(), 1.0);
    let p = l.fibre_derivative();
    (LagrangianForm(l), MomentumForm(p))
}

/// Inverse of [`lagrangian_and_momentum`]: `Θᵢ = 𝓟ᵢ`, `Θ₀ = 𝓛 − 𝓟ᵢvⁱ`.
pub fn poincare_cartan_from_lagrangian(l: &LagrangianForm, p: &MomentumForm) -> PoincareCartan {
    let theta0 = quad_add(&l.0, &p.0.contract_velocity(), -1.0);
    PoincareCartan { theta0, theta: p.0.clone() }
}

/// Observed Hamiltonian `𝓗 = −(Θ₀ + o₀ⁱΘᵢ)` and observed momentum `Θᵢ`.
pub fn observed_split(theta: &PoincareCartan, o: &Observer) -> (Field, Vec<Field>) {
    let comps = theta.theta.to_fields();
    let mut h = theta.theta0.to_field();
    for (oi, ti) in o.0.iter().zip(&comps) {
        h = h + oi * ti;
    }
    (-h, comps)
}

/// `Φ[o] = 2 o*Ω` at a spacetime point, for a 2-form on phase space.
pub fn observed_two_form<S: Scalar, W: TwoForm + ?Sized>(omega: &W, o: &Observer, e: &[S]) -> Mat<S> {
    let n = o.0.len();
    let mut p: Vec<S> = e[..=n].to_vec();
    p.extend(o.0.iter().map(|f| f.eval(e)));
    let w = omega.eval(&p);
    // Jacobian of the section x ↦ (x, o(x)): rows phase coordinates, cols spacetime.
    let ds = Mat::from_fn(2 * n + 1, n + 1, |a, l| {
        if a <= n {
            if a == l {
                S::one()
            } else {
                S::zero()
            }
        } else {
            o.0[a - n - 1].diff(l).eval(e)
        }
    });
    ds.transpose().matmul(&w).matmul(&ds).scale(S::cst(2.0))
}

/// Φ[o] as a 2-form on spacetime.
pub struct ObservedTwoForm<'a, W> {
    pub omega: W,
    pub observer: &'a Observer,
}

impl<W: TwoForm> TwoForm for ObservedTwoForm<'_, W> {
    fn eval<S: Scalar>(&self, e: &[S]) -> Mat<S> {
        observed_two_form(&self.omega, self.observer, e)
    }
}

/// `(‖Ω·γ‖∞, |dt(γ) − 1|)` at `p`.
pub fn reeb_residual<W: TwoForm, V: VectorField>(omega: &W, gamma: &V, p: &[f64]) -> (f64, f64) {
    let g = gamma.eval(p);
    let w = omega.eval(p);
    let contracted = w.vec_mul(&g);
    (contracted.iter().fold(0.0, |m: f64, x| m.max(x.abs())), (g[0] - 1.0).abs())
}

/// Bordered matrix `[[Ωᵀ, e₀], [e₀ᵀ, 0]]`; its determinant is nonzero exactly
/// when dt ∧ Ωⁿ is a volume form.
pub fn bordered<S: Scalar>(omega: &Mat<S>) -> Mat<S> {
    let d = omega.rows();
    Mat::from_fn(d + 1, d + 1, |a, b| match (a < d, b < d) {
        (true, true) => omega[(b, a)],
        (true, false) | (false, true) => {
            if a == 0 || b == 0 {
                S::one()
            } else {
                S::zero()
            }
        }
        (false, false) => S::zero(),
    })
}

/// `|det|` of the bordered matrix at a point.
pub fn nondegeneracy(omega: &Mat<f64>) -> f64 {
    bordered(omega).det().abs()
}
