//! Sampling-based symmetry verdicts and the equivalence suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::calculus::VectorField;
use crate::fields::{sample_points, Field, SampleBox, Scalar};
use crate::geometry::{reeb_residual, Model, Omega, PhaseStructure, Reeb};

use super::lie::*;
use super::vector_field::{RawVectorField, SpacetimeVectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub pass: f64,
    pub fail: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { pass: 1e-9, fail: 1e-3 }
    }
}

impl Tolerances {
    pub fn verdict(&self, residual: f64) -> Verdict {
        if residual < self.pass {
            Verdict::Pass
        } else if residual > self.fail || !residual.is_finite() {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }

    /// Joint verdict of a group of residuals: all pass, or none passes and
    /// at least one is a certificate of failure.
    pub fn joint(&self, residuals: &[f64]) -> Verdict {
        let v: Vec<Verdict> = residuals.iter().map(|&r| self.verdict(r)).collect();
        if v.iter().all(|&x| x == Verdict::Pass) {
            Verdict::Pass
        } else if v.iter().all(|&x| x != Verdict::Pass) && v.contains(&Verdict::Fail) {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckOptions {
    pub tol: Tolerances,
    pub points: usize,
    pub seed: u64,
    #[serde(rename = "box")]
    pub bx: SampleBox,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { tol: Tolerances::default(), points: 32, seed: 0, bx: SampleBox::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub residual: f64,
    pub verdict: Verdict,
}

/// Per-condition residuals for one vector field on one model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub model: String,
    pub field: String,
    pub points: usize,
    pub tolerances: Tolerances,
    pub conditions: Vec<Condition>,
    /// Verdict for Ω (with G): the dynamical symmetry question.
    pub symmetry: Verdict,
    /// Whether the residual families follow the equivalences
    /// K ⇔ Γ ⇔ γ, Ω ⇔ (Γ, G) ⇔ 𝓔 and Θ ⇔ 𝓛.
    pub consistent: bool,
}

impl SymmetryReport {
    pub fn residual(&self, name: &str) -> Option<f64> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.residual)
    }
}

fn max_abs<'a>(it: impl IntoIterator<Item = &'a f64>) -> f64 {
    it.into_iter().fold(0.0f64, |m, &x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) })
}

/// Maximal residuals of every Lie-derivative family over the sample points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residuals {
    pub k: f64,
    pub gamma_conn: f64,
    pub gamma: f64,
    pub metric: f64,
    pub omega: f64,
    pub euler_lagrange: f64,
    pub theta: f64,
    pub lagrangian: f64,
}

pub fn residuals(model: &Model, x: &SpacetimeVectorField, opts: &CheckOptions) -> Residuals {
    let n = model.n();
    let st = model.structure();
    let phase = sample_points(2 * n + 1, opts.points, opts.seed, opts.bx);
    let jets = sample_points(3 * n + 1, opts.points, opts.seed.wrapping_add(1), opts.bx);
    let mut r = Residuals::default();
    let up = |acc: &mut f64, v: f64| *acc = if v.is_nan() || acc.is_nan() { f64::NAN } else { acc.max(v) };
    for p in &phase {
        let e = &p[..=n];
        up(&mut r.k, max_abs(&lie_k(x, st, e)));
        up(&mut r.metric, lie_metric(x, &model.metric, e).max_abs());
        up(&mut r.gamma_conn, lie_phase_conn(x, st, p).max_abs());
        up(&mut r.gamma, max_abs(&lie_gamma(x, st, p)));
        up(&mut r.omega, lie_omega(x, st, p).max_abs());
        up(&mut r.theta, max_abs(&lie_theta(x, st, p)));
        up(&mut r.lagrangian, lie_lagrangian(x, st, p).abs());
    }
    for j in &jets {
        up(&mut r.euler_lagrange, lie_euler_lagrange(x, st, j).max_abs());
    }
    r
}

/// Whether the verdicts follow the equivalences between the families.
pub fn consistent(r: &Residuals, tol: &Tolerances) -> bool {
    let a = tol.joint(&[r.k, r.gamma_conn, r.gamma]);
    let b = tol.joint(&[r.omega.max(r.metric), r.euler_lagrange]);
    let l = tol.joint(&[r.theta, r.lagrangian]);
    let g = tol.verdict(r.metric);
    let no_gap = [a, b, l, g].iter().all(|&v| v != Verdict::Inconclusive);
    // Ω ⇔ (Γ and G); Θ ⇒ Ω since dΘ = Ω.
    let omega_rule = (b == Verdict::Pass) == (a == Verdict::Pass && g == Verdict::Pass);
    let theta_rule = l != Verdict::Pass || b == Verdict::Pass;
    no_gap && omega_rule && theta_rule
}

fn cond(name: &str, residual: f64, tol: &Tolerances) -> Condition {
    Condition { name: name.into(), residual, verdict: tol.verdict(residual) }
}

pub fn check_equivalences(model: &Model, x: &SpacetimeVectorField, label: &str, opts: &CheckOptions) -> SymmetryReport {
    let r = residuals(model, x, opts);
    let t = &opts.tol;
    let conditions = vec![
        cond("L_dt", 0.0, t),
        cond("L_K", r.k, t),
        cond("L_Gamma", r.gamma_conn, t),
        cond("L_gamma", r.gamma, t),
        cond("L_G", r.metric, t),
        cond("L_Omega", r.omega, t),
        cond("L_Omega+L_G", r.omega.max(r.metric), t),
        cond("L_E", r.euler_lagrange, t),
        cond("L_Theta", r.theta, t),
        cond("L_Lagrangian", r.lagrangian, t),
    ];
    SymmetryReport {
        model: model.name.clone(),
        field: label.into(),
        points: opts.points,
        tolerances: *t,
        symmetry: t.verdict(r.omega.max(r.metric)),
        consistent: consistent(&r, t),
        conditions,
    }
}

/// Classify an unconstrained field first: a non-constant time component is
/// a certificate of non-symmetry through `L_X dt ≠ 0`.
pub fn check_raw(model: &Model, raw: &RawVectorField, label: &str, opts: &CheckOptions) -> SymmetryReport {
    match raw.classify() {
        Ok(x) => check_equivalences(model, &x, label, opts),
        Err(_) => {
            let n = model.n();
            let dt = raw.lie_dt();
            let pts = sample_points(n + 1, opts.points, opts.seed, opts.bx);
            let res = pts.iter().fold(0.0f64, |m, e| dt.iter().fold(m, |m, f| m.max(f.eval(e).abs())));
            // Symbolically non-constant but flat on every sample point.
            let res = if res == 0.0 { opts.tol.fail * 2.0 } else { res };
            SymmetryReport {
                model: model.name.clone(),
                field: label.into(),
                points: opts.points,
                tolerances: opts.tol,
                conditions: vec![cond("L_dt", res, &opts.tol)],
                symmetry: Verdict::Fail,
                consistent: true,
            }
        }
    }
}

/// Reeb field perturbed by a vertical field `δⁱ ∂ᵢ⁰`.
pub struct PerturbedReeb<'a> {
    pub structure: &'a PhaseStructure,
    pub delta: Vec<Field>,
}

impl VectorField for PerturbedReeb<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.structure.n();
        let mut g = self.structure.reeb(p);
        for i in 0..n {
            g[n + 1 + i] += self.delta[i].eval(p);
        }
        g
    }
}

/// Random affine vertical perturbations `δⁱ = cⁱ + aⁱ_A p^A`.
pub fn random_perturbations(n: usize, count: usize, seed: u64) -> Vec<Vec<Field>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let mut f = Field::constant(rng.random_range(-1.0..1.0));
                    for a in 0..=2 * n {
                        f = f + rng.random_range(-1.0..1.0) * Field::var(a);
                    }
                    f
                })
                .collect()
        })
        .collect()
}

/// Reeb checks on one model: `‖Ω·γ‖∞`, `|dt(γ) − 1|`, `L_γΩ`, `L_γdt`.
pub fn reeb_conditions(model: &Model, opts: &CheckOptions) -> Vec<Condition> {
    let n = model.n();
    let st = model.structure();
    let pts = sample_points(2 * n + 1, opts.points, opts.seed, opts.bx);
    let (mut a, mut b, mut c, mut d) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &pts {
        let (r, t) = reeb_residual(&Omega(st), &Reeb(st), p);
        a = a.max(r);
        b = b.max(t);
        let (w, dt) = lie_along_reeb(&Reeb(st), st, p);
        c = c.max(w.max_abs());
        d = d.max(max_abs(&dt));
    }
    let t = &opts.tol;
    vec![cond("Omega.gamma", a, t), cond("dt(gamma)-1", b, t), cond("L_gamma_Omega", c, t), cond("L_gamma_dt", d, t)]
}

/// `max |L_γ̃Ω|` over the sample points for each perturbed field.
pub fn perturbed_reeb_probe(model: &Model, count: usize, opts: &CheckOptions) -> Vec<f64> {
    let n = model.n();
    let st = model.structure();
    let pts = sample_points(2 * n + 1, opts.points, opts.seed, opts.bx);
    random_perturbations(n, count, opts.seed)
        .into_iter()
        .map(|delta| {
            let g = PerturbedReeb { structure: st, delta };
            pts.iter().fold(0.0f64, |m, p| m.max(lie_along_reeb(&g, st, p).0.max_abs()))
        })
        .collect()
}
