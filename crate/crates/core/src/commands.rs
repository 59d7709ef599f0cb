//! Command implementations shared by the CLI and the acceptance suite. Each
//! returns an [`Outcome`]; input problems surface as `Err`.

use serde_json::{json, Value};

use crate::calculus::{closure_residual, PhaseFunction};
use crate::catalog;
use crate::dynamics::{conserved_drift, integrate};
use crate::error::{Error, Result};
use crate::fields::{sample_points, PhasePoint};
use crate::geometry::{nondegeneracy, reeb_residual, Model, Omega, Reeb};
use crate::linalg::Mat;
use crate::report::{trajectory_csv, Outcome, Status};
use crate::symmetry::check::{check_raw, CheckOptions, Verdict};
use crate::symmetry::hamiltonian::{
    classify_special_quadratic, generator_match, homomorphism_residual, PoissonBracket, SpecialBracket,
};
use crate::symmetry::noether::{charge_diagnostics, momentum_map, noether_charge, MomentumMapEntry, SpecialQuadratic};
use crate::symmetry::{LieAlgebraAction, RawVectorField, SpacetimeVectorField};

/// Fit tolerance of the special-quadratic classification.
pub const FIT_TOL: f64 = 1e-10;
/// Bound on `‖[H_τ[f], H_σ[g]] − H₀[{f,g}]‖∞`.
pub const HOMOMORPHISM_TOL: f64 = 1e-6;
/// Bound on the Jacobi residual of the special bracket.
pub const JACOBI_TOL: f64 = 1e-8;

fn matrix(m: &Mat<f64>) -> Value {
    json!((0..m.rows()).map(|a| (0..m.cols()).map(|b| m[(a, b)]).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Coefficients and derived objects at one phase point.
pub fn derive(model: &Model, point: &PhasePoint, opts: &CheckOptions) -> Result<Outcome> {
    let n = model.n();
    if point.x.len() != n || point.v.len() != n {
        return Err(Error::InvalidArgument(format!("point must have {n} positions and velocities")));
    }
    let p = point.coords();
    let st = model.structure();
    let c = st.coeffs(&p);
    let k: Vec<Vec<Vec<f64>>> =
        (0..=n).map(|l| (0..n).map(|i| (0..=n).map(|m| c.k(l, i, m)).collect()).collect()).collect();
    let omega = st.omega(&p);
    let (reeb, dt) = reeb_residual(&Omega(st), &Reeb(st), &p);
    let closure = closure_residual(&Omega(st), &p);
    let nondeg = nondegeneracy(&omega);
    let ok = nondeg > 1e-8 && closure < opts.tol.pass && reeb < opts.tol.pass;
    let body = json!({
        "point": point,
        "metric": matrix(&c.g),
        "metric_inverse": matrix(&c.ginv),
        "connection": k,
        "acceleration": st.accel(&p),
        "omega": matrix(&omega),
        "theta": st.theta(&p),
        "lagrangian": st.lagrangian(&p),
        "momentum": st.momentum(&p),
        "observed_hamiltonian": st.observed_hamiltonian(&model.observer, &p),
        "checks": {
            "closure_residual": closure,
            "reeb_residual": reeb,
            "reeb_time_residual": dt,
            "nondegeneracy": nondeg,
        },
    });
    Ok(Outcome::new("derive", &model.name, opts, Status::from_ok(ok), body))
}

/// Named action of a catalog model, or a single vector field expression.
pub fn resolve_fields(model: &Model, spec: &str) -> Result<LieAlgebraAction> {
    if catalog::action_names(&model.name).is_ok_and(|names| names.contains(&spec)) {
        return catalog::action(&model.name, spec);
    }
    let x = SpacetimeVectorField::parse(spec, model.n())?;
    Ok(LieAlgebraAction::new("field", vec![spec.to_string()], vec![x]))
}

fn charge_json(model: &Model, f: &SpecialQuadratic) -> Value {
    let labels = model.chart.labels();
    let full = f.to_field();
    json!({
        "time_component": f.f0.render(&labels),
        "linear": f.f_lin.iter().map(|c| c.render(&labels)).collect::<Vec<_>>(),
        "constant": f.f_ring.render(&labels),
        "expression": full.render(&labels),
        "expression_opposite_sign": (-full).render(&labels),
    })
}

pub fn check_symmetry(model: &Model, field: &str, opts: &CheckOptions) -> Result<Outcome> {
    let raw = RawVectorField::parse(field, model.n())?;
    let r = check_raw(model, &raw, field, opts);
    let ok = r.symmetry == Verdict::Pass && r.consistent;
    let body = json!({
        "field": field,
        "symmetry": r.symmetry,
        "consistent": r.consistent,
        "conditions": r.conditions,
    });
    Ok(Outcome::new("check-symmetry", &model.name, opts, Status::from_ok(ok), body))
}

pub fn noether(model: &Model, fields: &str, opts: &CheckOptions) -> Result<Outcome> {
    let action = resolve_fields(model, fields)?;
    let mut all = true;
    let charges: Vec<Value> = action
        .generators
        .iter()
        .zip(&action.labels)
        .map(|(x, label)| {
            let f = noether_charge(model, x);
            let d = charge_diagnostics(model, x, &f, opts);
            all &= d.conserved;
            json!({ "label": label, "charge": charge_json(model, &f), "diagnostics": d })
        })
        .collect();
    let body = json!({ "fields": fields, "charges": charges });
    Ok(Outcome::new("noether", &model.name, opts, Status::from_ok(all), body))
}

fn entry_json(model: &Model, e: &MomentumMapEntry, opts: &CheckOptions) -> (Value, bool) {
    let matched = generator_match(model, e, e.tau, opts);
    let fit = classify_special_quadratic(model, &e.charge, opts, FIT_TOL);
    let (quantisable, recovered, fit_residual) = match &fit {
        Ok(f) => (true, f.time_component(1e-12), f.fit_residual.max(f.proportionality_residual)),
        Err(Error::NotSpecialQuadratic { residual } | Error::NotMetricProportional { residual }) => {
            (false, None, *residual)
        }
        Err(_) => (false, None, f64::NAN),
    };
    let ok = e.is_symmetry()
        && matched < opts.tol.pass
        && quantisable
        && recovered.is_some_and(|t| (t - e.tau).abs() < 1e-12);
    let v = json!({
        "label": e.label,
        "tau": e.tau,
        "charge": charge_json(model, &e.charge),
        "anchor": e.anchor,
        "anchor_value": e.anchor_value,
        "differential_residual": e.differential_residual,
        "generator_match_residual": matched,
        "quantisable": quantisable,
        "recovered_time_component": recovered,
        "fit_residual": fit_residual,
        "diagnostics": e.diagnostics,
    });
    (v, ok)
}

pub fn momentum_map_cmd(model: &Model, action: &str, opts: &CheckOptions) -> Result<Outcome> {
    let act = resolve_fields(model, action)?;
    let entries = momentum_map(model, &act, opts);
    let mut all = true;
    let out: Vec<Value> = entries
        .iter()
        .map(|e| {
            let (v, ok) = entry_json(model, e, opts);
            all &= ok;
            v
        })
        .collect();
    let body = json!({ "action": action, "entries": out });
    Ok(Outcome::new("momentum-map", &model.name, opts, Status::from_ok(all), body))
}

fn max_over<F: PhaseFunction>(model: &Model, f: &F, opts: &CheckOptions) -> f64 {
    sample_points(2 * model.n() + 1, opts.points, opts.seed, opts.bx).iter().fold(0.0f64, |m, p| m.max(f.eval(p).abs()))
}

/// Time component of `[f, g]` from its classification.
fn bracket_time(model: &Model, f: &MomentumMapEntry, g: &MomentumMapEntry, opts: &CheckOptions) -> Result<f64> {
    let br = SpecialBracket { structure: model.structure(), f: &f.charge, f0: f.tau, g: &g.charge, g0: g.tau };
    classify_special_quadratic(model, &br, opts, FIT_TOL * 100.0)?
        .time_component(1e-9)
        .ok_or(Error::NonConstantTimeComponent)
}

pub fn brackets(model: &Model, action: &str, opts: &CheckOptions) -> Result<Outcome> {
    let act = resolve_fields(model, action)?;
    let es = momentum_map(model, &act, opts);
    let st = model.structure();
    let mut ok = true;
    let mut pairs = Vec::new();
    for a in &es {
        for b in &es {
            let pb = max_over(model, &PoissonBracket { structure: st, f: &a.charge, g: &b.charge }, opts);
            let hom = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
                .iter()
                .map(|&(t, s)| homomorphism_residual(model, &a.charge, t, &b.charge, s, opts))
                .fold(0.0f64, f64::max);
            let special = bracket_time(model, a, b, opts);
            ok &= hom < HOMOMORPHISM_TOL && special.is_ok();
            pairs.push(json!({
                "f": a.label,
                "g": b.label,
                "poisson_max_abs": pb,
                "pair_time_scale": 0.0,
                "homomorphism_residual": hom,
                "special_closes": special.is_ok(),
                "special_time_component": special.as_ref().ok(),
            }));
        }
    }
    let mut jacobi = 0.0f64;
    let pts = sample_points(2 * model.n() + 1, opts.points.min(8), opts.seed, opts.bx);
    for (i, a) in es.iter().enumerate() {
        for (j, b) in es.iter().enumerate().skip(i) {
            for c in es.iter().skip(j) {
                let br = |f: &MomentumMapEntry, g: &MomentumMapEntry| SpecialBracket {
                    structure: st,
                    f: f.charge.clone(),
                    f0: f.tau,
                    g: g.charge.clone(),
                    g0: g.tau,
                };
                let (Ok(tab), Ok(tbc), Ok(tca)) =
                    (bracket_time(model, a, b, opts), bracket_time(model, b, c, opts), bracket_time(model, c, a, opts))
                else {
                    continue;
                };
                for p in &pts {
                    let term = |inner, t, h: &MomentumMapEntry| {
                        SpecialBracket { structure: st, f: inner, f0: t, g: h.charge.clone(), g0: h.tau }.eval(p)
                    };
                    let j = term(br(a, b), tab, c) + term(br(b, c), tbc, a) + term(br(c, a), tca, b);
                    jacobi = jacobi.max(j.abs());
                }
            }
        }
    }
    ok &= jacobi < JACOBI_TOL;
    let body = json!({ "action": action, "pairs": pairs, "jacobi_residual": jacobi });
    Ok(Outcome::new("brackets", &model.name, opts, Status::from_ok(ok), body))
}

pub struct SimulateArgs {
    pub point: PhasePoint,
    pub duration: f64,
    pub h: f64,
    pub charges: Vec<String>,
}

pub fn simulate(model: &Model, args: &SimulateArgs, opts: &CheckOptions) -> Result<Outcome> {
    let st = model.structure();
    let traj = integrate(st, &args.point, args.duration, args.h)?;
    let mut columns = Vec::new();
    let mut drifts = Vec::new();
    let mut ok = true;
    for spec in &args.charges {
        let act = resolve_fields(model, spec)?;
        for (x, label) in act.generators.iter().zip(&act.labels) {
            let f = noether_charge(model, x);
            let diag = charge_diagnostics(model, x, &f, opts);
            let drift = conserved_drift(st, &f, &traj);
            ok &= diag.conserved;
            columns.push((label.clone(), traj.samples.iter().map(|p| f.eval(p)).collect()));
            drifts.push(json!({ "label": label, "drift": drift, "conserved": diag.conserved }));
        }
    }
    let last = PhasePoint::from_coords(traj.last());
    let body = json!({
        "integrator": traj.integrator,
        "h": traj.h,
        "steps": traj.samples.len() - 1,
        "initial": args.point,
        "final": last,
        "charges": drifts,
    });
    let csv = trajectory_csv(&traj, &columns);
    Ok(Outcome::new("simulate", &model.name, opts, Status::from_ok(ok), body).with_csv(csv))
}
