//! τ-Hamiltonian lifts, brackets and the special-quadratic classification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::{directional, gradient, lie_bracket, PhaseFunction, VectorField};
use crate::error::{Error, Result};
use crate::fields::{sample_points, Scalar};
use crate::geometry::{bordered, Model, PhaseStructure, TauLift};

use super::check::CheckOptions;
use super::noether::MomentumMapEntry;

/// Oracle path for `H_τ[f]`: solve `i_YΩ = df − (γ·f)dt`, `dt(Y) = 0`, then
/// add `τγ`.
pub fn tau_lift_oracle<F: PhaseFunction + ?Sized>(st: &PhaseStructure, f: &F, tau: f64, p: &[f64]) -> Result<Vec<f64>> {
    let gamma = st.reeb(p);
    let df = gradient(f, p);
    let gf = directional(f, p, &gamma);
    let mut rhs = df;
    rhs[0] -= gf;
    rhs.push(0.0);
    let sol = bordered(&st.omega(p)).solve(&rhs).ok_or_else(|| Error::SingularOmega { point: p.to_vec() })?;
    Ok((0..p.len()).map(|a| sol[a] + tau * gamma[a]).collect())
}

/// `max ‖H_τ[J_ξ] − (e_ξ)₍₁₎‖∞` over the sample points.
pub fn generator_match(model: &Model, entry: &MomentumMapEntry, tau: f64, opts: &CheckOptions) -> f64 {
    let n = model.n();
    let st = model.structure();
    let y = entry.generator.prolong1();
    sample_points(2 * n + 1, opts.points, opts.seed, opts.bx).iter().fold(0.0f64, |m, p| {
        let h = st.tau_lift(&entry.charge, tau, p);
        let x = y.eval(p);
        h.iter().zip(&x).fold(m, |m, (a, b)| m.max((a - b).abs()))
    })
}

/// `{f, g} = Ω(H₀[g], H₀[f]) = H₀[f]·g`, as a phase function.
pub struct PoissonBracket<'a, F, G> {
    pub structure: &'a PhaseStructure,
    pub f: F,
    pub g: G,
}

impl<F: PhaseFunction, G: PhaseFunction> PhaseFunction for PoissonBracket<'_, F, G> {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let h = self.structure.tau_lift(&self.f, 0.0, p);
        directional(&self.g, p, &h)
    }
}

/// `{f, g}` at a point through `Ω(H_τ[g], H_σ[f])`, for any time scales.
pub fn poisson_bracket_with<F: PhaseFunction, G: PhaseFunction>(
    st: &PhaseStructure,
    f: &F,
    g: &G,
    tau: f64,
    sigma: f64,
    p: &[f64],
) -> f64 {
    let hf = st.tau_lift(f, tau, p);
    let hg = st.tau_lift(g, sigma, p);
    st.omega(p).bilinear(&hg, &hf)
}

/// `[f, g] = {f, g} + f⁰(γ·g) − g⁰(γ·f)` for constant time components.
pub struct SpecialBracket<'a, F, G> {
    pub structure: &'a PhaseStructure,
    pub f: F,
    pub f0: f64,
    pub g: G,
    pub g0: f64,
}

impl<F: PhaseFunction, G: PhaseFunction> PhaseFunction for SpecialBracket<'_, F, G> {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let st = self.structure;
        let gamma = st.reeb(p);
        let pb = PoissonBracket { structure: st, f: &self.f, g: &self.g }.eval(p);
        pb + directional(&self.g, p, &gamma).scale(self.f0) - directional(&self.f, p, &gamma).scale(self.g0)
    }
}

/// Pair bracket `{(f, τ), (g, σ)} = ({f, g}, 0)`.
pub fn pair_bracket<'a, F, G>(st: &'a PhaseStructure, f: (F, f64), g: (G, f64)) -> (PoissonBracket<'a, F, G>, f64) {
    (PoissonBracket { structure: st, f: f.0, g: g.0 }, 0.0)
}

/// `max ‖[H_τ[f], H_σ[g]] − H₀[{f, g}]‖∞` over the sample points.
pub fn homomorphism_residual<F: PhaseFunction, G: PhaseFunction>(
    model: &Model,
    f: &F,
    tau: f64,
    g: &G,
    sigma: f64,
    opts: &CheckOptions,
) -> f64 {
    let n = model.n();
    let st = model.structure();
    let hf = TauLift { structure: st, f, tau };
    let hg = TauLift { structure: st, f: g, tau: sigma };
    let (pb, _) = pair_bracket(st, (f, tau), (g, sigma));
    sample_points(2 * n + 1, opts.points, opts.seed, opts.bx).iter().fold(0.0f64, |m, p| {
        let comm = lie_bracket(&hf, &hg, p);
        let h = st.tau_lift(&pb, 0.0, p);
        comm.iter().zip(&h).fold(m, |m, (a, b)| m.max((a - b).abs()))
    })
}

/// Pointwise fit of a phase function as `½f⁰Gᵢⱼvⁱvʲ + fᵢ⁰vⁱ + f̊`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecialQuadraticFit {
    pub base_points: Vec<Vec<f64>>,
    pub f0: Vec<f64>,
    pub f_lin: Vec<Vec<f64>>,
    pub f_ring: Vec<f64>,
    pub fit_residual: f64,
    pub proportionality_residual: f64,
}

impl SpecialQuadraticFit {
    /// The time component when it agrees at every base point.
    pub fn time_component(&self, tol: f64) -> Option<f64> {
        let first = *self.f0.first()?;
        self.f0.iter().all(|v| (v - first).abs() <= tol).then_some(first)
    }
}

/// Fit `f` on velocity nodes `0, ±eᵢ, eᵢ + eⱼ` at each base point, then
/// validate at random velocities and test proportionality to `G`.
pub fn classify_special_quadratic<F: PhaseFunction + ?Sized>(
    model: &Model,
    f: &F,
    opts: &CheckOptions,
    fit_tol: f64,
) -> Result<SpecialQuadraticFit> {
    let n = model.n();
    let bases = sample_points(n + 1, opts.points, opts.seed, opts.bx);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let mut out = SpecialQuadraticFit {
        base_points: bases.clone(),
        f0: Vec::new(),
        f_lin: Vec::new(),
        f_ring: Vec::new(),
        fit_residual: 0.0,
        proportionality_residual: 0.0,
    };
    for e in &bases {
        let at = |v: &[f64]| {
            let mut p = e.clone();
            p.extend_from_slice(v);
            f.eval(&p)
        };
        let unit = |i: usize, s: f64| {
            let mut v = vec![0.0; n];
            v[i] = s;
            v
        };
        let c = at(&vec![0.0; n]);
        let plus: Vec<f64> = (0..n).map(|i| at(&unit(i, 1.0))).collect();
        let minus: Vec<f64> = (0..n).map(|i| at(&unit(i, -1.0))).collect();
        let lin: Vec<f64> = (0..n).map(|i| 0.5 * (plus[i] - minus[i])).collect();
        let mut q = vec![vec![0.0; n]; n];
        for i in 0..n {
            q[i][i] = plus[i] + minus[i] - 2.0 * c;
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v[j] = 1.0;
                let val = at(&v);
                q[i][j] = val - 0.5 * (q[i][i] + q[j][j]) - lin[i] - lin[j] - c;
                q[j][i] = q[i][j];
            }
        }
        for _ in 0..3 {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut pred = c;
            for i in 0..n {
                pred += lin[i] * v[i];
                for j in 0..n {
                    pred += 0.5 * q[i][j] * v[i] * v[j];
                }
            }
            out.fit_residual = out.fit_residual.max((pred - at(&v)).abs());
        }
        let g = model.metric.eval(e);
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                num += q[i][j] * g[(i, j)];
                den += g[(i, j)] * g[(i, j)];
            }
        }
        let f0 = num / den;
        for i in 0..n {
            for j in 0..n {
                out.proportionality_residual = out.proportionality_residual.max((q[i][j] - f0 * g[(i, j)]).abs());
            }
        }
        out.f0.push(f0);
        out.f_lin.push(lin);
        out.f_ring.push(c);
    }
    if !(out.fit_residual < fit_tol) {
        return Err(Error::NotSpecialQuadratic { residual: out.fit_residual });
    }
    if !(out.proportionality_residual < fit_tol) {
        return Err(Error::NotMetricProportional { residual: out.proportionality_residual });
    }
    Ok(out)
}
