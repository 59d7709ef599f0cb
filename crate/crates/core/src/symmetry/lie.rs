//! Coordinate formulas for the Lie derivatives of the model objects along a
//! spacetime vector field (and its prolongations), plus the tensor
//! representatives used by the flow oracles.

use crate::calculus::{
    jacobian, lie_one_form_cartan, lie_two_form_cartan, lie_two_form_coord, Components, CoordDifferential, Tensor11,
    VectorField,
};
use crate::fields::scalar::{seed, seed_along};
use crate::fields::{Field, Scalar};
use crate::geometry::{EulerLagrangeForm, Metric, Omega, PhaseStructure, Theta};
use crate::linalg::Mat;

use super::vector_field::SpacetimeVectorField;

/// Values of `X^μ`, `∂_λX^μ` and `∂_λ∂_νX^μ` at a spacetime point.
struct Jet2 {
    x: Vec<f64>,
    d: Vec<Vec<f64>>,
    dd: Vec<Vec<Vec<f64>>>,
}

fn jet2(x: &SpacetimeVectorField, e: &[f64]) -> Jet2 {
    let comps = x.components();
    let n = x.n();
    let d: Vec<Vec<Field>> = comps.iter().map(|c| (0..=n).map(|l| c.diff(l)).collect()).collect();
    Jet2 {
        x: comps.iter().map(|c| c.eval(e)).collect(),
        dd: d.iter().map(|row| row.iter().map(|f| (0..=n).map(|m| f.diff(m).eval(e)).collect()).collect()).collect(),
        d: d.iter().map(|row| row.iter().map(|f| f.eval(e)).collect()).collect(),
    }
}

fn pad_phase(e: &[f64], n: usize) -> Vec<f64> {
    let mut p = e[..=n].to_vec();
    p.resize(2 * n + 1, 0.0);
    p
}

/// `(L_X G)ᵢⱼ = X^λ∂_λGᵢⱼ + Gₖⱼ∂ᵢXᵏ + Gᵢₖ∂ⱼXᵏ` at a spacetime point.
pub fn lie_metric(x: &SpacetimeVectorField, g: &Metric, e: &[f64]) -> Mat<f64> {
    let n = g.n();
    let j = jet2(x, e);
    let gv = g.eval(e);
    Mat::from_fn(n, n, |a, b| {
        let mut s = 0.0;
        for l in 0..=n {
            s += j.x[l] * g.partial(l, a, b).eval(e);
        }
        for k in 0..n {
            s += gv[(k, b)] * j.d[k + 1][a + 1] + gv[(a, k)] * j.d[k + 1][b + 1];
        }
        s
    })
}

/// `(L_{X₍T₎}K)_λᵏ_ν` at a spacetime point, stored like the connection
/// coefficients: index `(λ·n + k)·(n+1) + ν` with `k` spatial 0-based.
pub fn lie_k(x: &SpacetimeVectorField, st: &PhaseStructure, e: &[f64]) -> Vec<f64> {
    let n = st.n();
    let p = pad_phase(e, n);
    let j = jet2(x, e);
    let c = st.coeffs(&p);
    let dk: Vec<_> = (0..=n).map(|a| st.coeffs(&seed(&p, a))).collect();
    let mut out = vec![0.0; (n + 1) * n * (n + 1)];
    for l in 0..=n {
        for k in 0..n {
            for m in 0..=n {
                let mut s = -j.dd[k + 1][l][m];
                for a in 0..=n {
                    s += j.x[a] * dk[a].k(l, k, m).eps;
                    s += j.d[a][m] * c.k(l, k, a);
                    s += c.k(a, k, m) * j.d[a][l];
                }
                for i in 0..n {
                    s -= c.k(l, i, m) * j.d[k + 1][i + 1];
                }
                out[(l * n + k) * (n + 1) + m] = s;
            }
        }
    }
    out
}

/// `(L_{X₍₁₎}Γ)ⁱ_μ` at a phase point, as an `n × (n+1)` matrix:
/// `∂_μX₀ⁱ − Γⁱ_{λ0}∂_μX^λ − X₍₁₎·∂Γⁱ_{μ0} + Γʲ_{μ0}∂ⱼXⁱ`.
pub fn lie_phase_conn(x: &SpacetimeVectorField, st: &PhaseStructure, p: &[f64]) -> Mat<f64> {
    let n = st.n();
    let j = jet2(x, &p[..=n]);
    let y = x.prolong1().eval(p);
    let jx0 = jacobian(&Components(x.velocity_components()), p);
    let v = &p[n + 1..];
    let c = st.coeffs(p);
    let along = st.coeffs(&seed_along(p, &y));
    let vd = &seed_along(p, &y)[n + 1..];
    Mat::from_fn(n, n + 1, |i, m| {
        let mut s = jx0[(i, m)] - along.gamma0(vd, m, i).eps;
        for l in 0..=n {
            s -= c.gamma0(v, l, i) * j.d[l][m];
        }
        for jj in 0..n {
            s += c.gamma0(v, m, jj) * j.d[i + 1][jj + 1];
        }
        s
    })
}

/// `(L_{X₍₁₎}γ)ⁱ = X₍₁₎·∂γⁱ − (∂₀ + vʲ∂ⱼ + γʲ∂ⱼ⁰)X₀ⁱ` at a phase point.
pub fn lie_gamma(x: &SpacetimeVectorField, st: &PhaseStructure, p: &[f64]) -> Vec<f64> {
    let n = st.n();
    let y = x.prolong1().eval(p);
    let acc = st.accel(p);
    let dacc: Vec<f64> = st.accel(&seed_along(p, &y)).iter().map(|d| d.eps).collect();
    let jx0 = jacobian(&Components(x.velocity_components()), p);
    (0..n)
        .map(|i| {
            let mut s = dacc[i] - jx0[(i, 0)];
            for k in 0..n {
                s -= p[n + 1 + k] * jx0[(i, k + 1)] + acc[k] * jx0[(i, n + 1 + k)];
            }
            s
        })
        .collect()
}

/// `L_{X₍₁₎}Ω` by Cartan's formula.
pub fn lie_omega(x: &SpacetimeVectorField, st: &PhaseStructure, p: &[f64]) -> Mat<f64> {
    lie_two_form_cartan(&x.prolong1(), &Omega(st), p)
}

/// `L_{X₍₁₎}Θ` by Cartan's formula.
pub fn lie_theta(x: &SpacetimeVectorField, st: &PhaseStructure, p: &[f64]) -> Vec<f64> {
    lie_one_form_cartan(&x.prolong1(), &Theta(st), p)
}

/// `L_{X₍₁₎}(𝓛 d⁰) = (X₍₁₎·𝓛) d⁰`, since `X⁰` is constant.
pub fn lie_lagrangian(x: &SpacetimeVectorField, st: &PhaseStructure, p: &[f64]) -> f64 {
    let y = x.prolong1().eval(p);
    st.lagrangian(&seed_along(p, &y)).eps
}

/// `L_{X₍₂₎}𝓔` on the second-jet chart.
pub fn lie_euler_lagrange(x: &SpacetimeVectorField, st: &PhaseStructure, j2: &[f64]) -> Mat<f64> {
    lie_two_form_coord(&x.prolong2(), &EulerLagrangeForm(st), j2)
}

/// `(L_γΩ, L_γdt)` by Cartan's formula, for any candidate second-order field.
pub fn lie_along_reeb<V: VectorField>(gamma: &V, st: &PhaseStructure, p: &[f64]) -> (Mat<f64>, Vec<f64>) {
    let w = lie_two_form_cartan(gamma, &Omega(st), p);
    let dt = lie_one_form_cartan(gamma, &CoordDifferential { dim: p.len(), k: 0 }, p);
    (w, dt)
}

/// Vertical-valued form `ν[Γ] = (dᵢ⁰ − Γⁱ_{μ0}d^μ) ⊗ ∂ᵢ⁰` on phase space.
pub struct PhaseConnectionTensor<'a>(pub &'a PhaseStructure);

impl Tensor11 for PhaseConnectionTensor<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        let n = self.0.n();
        let c = self.0.coeffs(p);
        let v = &p[n + 1..];
        let mut m = Mat::zeros(2 * n + 1, 2 * n + 1);
        for i in 0..n {
            m[(n + 1 + i, n + 1 + i)] = S::one();
            for mu in 0..=n {
                m[(n + 1 + i, mu)] = -c.gamma0(v, mu, i);
            }
        }
        m
    }
}

/// Vertical-valued form `(dẋᵏ − K_λᵏ_ν ẋ^ν dx^λ) ⊗ ∂̇ₖ` on the tangent chart
/// `(x^λ, ẋ^λ)`, including the trivial time row.
pub struct TangentConnectionTensor<'a>(pub &'a PhaseStructure);

impl Tensor11 for TangentConnectionTensor<'_> {
    fn eval<S: Scalar>(&self, q: &[S]) -> Mat<S> {
        let n = self.0.n();
        let mut p = q[..=n].to_vec();
        p.resize(2 * n + 1, S::zero());
        let c = self.0.coeffs(&p);
        let dot = &q[n + 1..];
        let mut m = Mat::zeros(2 * n + 2, 2 * n + 2);
        for k in 0..=n {
            m[(n + 1 + k, n + 1 + k)] = S::one();
        }
        for k in 0..n {
            for l in 0..=n {
                let mut s = S::zero();
                for nu in 0..=n {
                    s += c.k(l, k, nu) * dot[nu];
                }
                m[(n + 2 + k, l)] = -s;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn metric_examples() {
        let g = Metric::euclidean(3);
        let e = [0.1, 0.4, -0.2, 0.3];
        let rot = SpacetimeVectorField::parse("x1 d2 - x2 d1", 3).unwrap();
        assert!(lie_metric(&rot, &g, &e).max_abs() < 1e-15);
        let scale = SpacetimeVectorField::parse("x1 d1", 3).unwrap();
        let l = lie_metric(&scale, &g, &e);
        let mut expected = Mat::zeros(3, 3);
        expected[(0, 0)] = 2.0;
        assert_eq!(l, expected);
    }

    #[test]
    fn gamma_examples() {
        let m = catalog::model("free3d").unwrap();
        let p = [0.0, 0.5, 0.2, -0.1, 0.7, -0.3, 0.4];
        let scale = SpacetimeVectorField::parse("x1 d1", 3).unwrap();
        assert!(lie_gamma(&scale, m.structure(), &p).iter().all(|v| v.abs() < 1e-15));
        let sq = SpacetimeVectorField::parse("x1^2 d1", 3).unwrap();
        let l = lie_gamma(&sq, m.structure(), &p);
        assert!((l[0] + 2.0 * 0.49).abs() < 1e-14 && l[1] == 0.0 && l[2] == 0.0);
    }
}
