//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use galimech::calculus::{closure_residual, ExteriorD1, PhaseFunction, TwoForm};
use galimech::catalog;
use galimech::commands::{self, SimulateArgs};
use galimech::dynamics::{conserved_drift, convergence_order, integrate};
use galimech::fields::{sample_points, Field, SampleBox};
use galimech::geometry::*;
use galimech::symmetry::check::*;
use galimech::symmetry::flow::*;
use galimech::symmetry::hamiltonian::*;
use galimech::symmetry::lie::*;
use galimech::symmetry::noether::{momentum_map, MomentumMapEntry};
use galimech::symmetry::SpacetimeVectorField;
use galimech::units::{ScaledScalar, UnitDim};
use galimech::PhasePoint;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn models() -> Vec<Model> {
    catalog::MODELS.iter().map(|m| catalog::model(m).unwrap()).collect()
}

fn phase_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    sample_points(2 * n + 1, count, seed, SampleBox::default())
}

fn opts(points: usize, seed: u64) -> CheckOptions {
    CheckOptions { points, seed, ..CheckOptions::default() }
}

fn entries(model: &Model, o: &CheckOptions) -> Vec<MomentumMapEntry> {
    catalog::action_names(&model.name)
        .unwrap()
        .iter()
        .flat_map(|a| momentum_map(model, &catalog::action(&model.name, a).unwrap(), o))
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

// random polynomial of degree ≤ 2 in the given variables
fn random_poly(rng: &mut ChaCha8Rng, vars: usize) -> Field {
    let mut f = Field::constant(rng.random_range(-1.0..1.0));
    for a in 0..vars {
        f = f + rng.random_range(-1.0..1.0) * Field::var(a);
        for b in a..vars {
            f = f + rng.random_range(-0.5..0.5) * Field::var(a) * Field::var(b);
        }
    }
    f
}

fn c1_bijections() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut exact = true;
    let mut theta_err = 0.0f64;
    for set in 0..20 {
        let n = 2 + set % 2;
        let k = SpacetimeConnection::from_fn(n, |l, i, m| {
            let mut r = ChaCha8Rng::seed_from_u64((set * 1000 + l * 100 + i * 10 + m) as u64);
            random_poly(&mut r, 2 * n + 1)
        });
        let gamma = phase_connection_from_k(&k);
        let dyn_conn = gamma_from_phase_connection(&gamma);
        let gamma_back = phase_connection_from_gamma(&dyn_conn);
        exact &= gamma_back == gamma;
        exact &= k_from_phase_connection(&gamma_back) == k;
        exact &= gamma_from_phase_connection(&gamma_back) == dyn_conn;

        let metric = catalog::model(if n == 2 { "free2d" } else { "rigidbody" }).unwrap().metric;
        let pot = Potential((0..=n).map(|_| random_poly(&mut rng, n + 1)).collect());
        let th = poincare_cartan(&metric, &pot);
        let (l, p) = lagrangian_and_momentum(&th);
        let back = poincare_cartan_from_lagrangian(&l, &p);
        for x in phase_points(n, 10, set as u64) {
            let d0 = (back.theta0.eval(&x) - th.theta0.eval(&x)).abs();
            let d = back.theta.eval(&x).iter().zip(th.theta.eval(&x)).fold(d0, |m, (a, b)| m.max((a - b).abs()));
            theta_err = theta_err.max(d);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = exact && theta_err < 1e-12 && secs < 1.0;
    outcome(
        pass,
        format!(
            "K/Γ/γ structurally identical: {exact}; Θ round trip {theta_err:.1e} (tol 1e-12); {secs:.3} s (limit 1 s)"
        ),
    )
}

fn c2_potential() -> Outcome {
    let mut worst = 0.0f64;
    for m in models() {
        let d = ExteriorD1(Theta(m.structure()));
        for p in phase_points(m.n(), 100, 2) {
            worst = worst.max(d.eval(&p).max_abs_diff(&m.omega().eval(&p)));
        }
    }
    outcome(worst < 1e-9, format!("max |dΘ − Ω| = {worst:.1e} over 100 points per model (tol 1e-9)"))
}

fn c3_closure() -> Outcome {
    let mut worst = 0.0f64;
    for m in models() {
        for p in phase_points(m.n(), 20, 3) {
            worst = worst.max(closure_residual(&m.omega(), &p));
        }
    }
    let q = 2.0;
    let mut f = vec![vec![Field::zero(); 4]; 4];
    f[1][2] = Field::var(3);
    let em = EmField::new(f, ScaledScalar::new(q, UnitDim::charge()), ScaledScalar::new(1.0, UnitDim::mass())).unwrap();
    let free = catalog::model("free3d").unwrap();
    let w = CoupledTwoForm { natural: free.natural(), em: &em };
    // dF₁₂₃ = ∂₃F₁₂ · q/m
    let analytic = q;
    let mut dev = 0.0f64;
    for p in phase_points(3, 20, 4) {
        dev = dev.max((closure_residual(&w, &p) - analytic).abs());
    }
    outcome(
        worst < 1e-10 && dev < 1e-9,
        format!("catalog closure {worst:.1e} (tol 1e-10); F₁₂ = x³ residual off analytic by {dev:.1e} (tol 1e-9)"),
    )
}

fn c4_reeb() -> Outcome {
    let (mut contr, mut dt) = (0.0f64, 0.0f64);
    let mut weakest = f64::INFINITY;
    for m in models() {
        let st = m.structure();
        for p in phase_points(m.n(), 100, 5) {
            let (r, t) = reeb_residual(&m.omega(), &Reeb(st), &p);
            contr = contr.max(r);
            dt = dt.max(t);
        }
        for r in perturbed_reeb_probe(&m, 10, &opts(16, 6)) {
            weakest = weakest.min(r);
        }
    }
    outcome(
        contr < 1e-12 && dt == 0.0 && weakest > 1e-3,
        format!("‖Ω·γ‖∞ = {contr:.1e} (tol 1e-12); |dt(γ) − 1| = {dt:e}; weakest perturbed max|L_γ̃Ω| = {weakest:.2e} (> 1e-3)"),
    )
}

fn c5_reeb_invariance() -> Outcome {
    let (mut w, mut d) = (0.0f64, 0.0f64);
    for m in models() {
        for c in reeb_conditions(&m, &opts(32, 7)) {
            match c.name.as_str() {
                "L_gamma_Omega" => w = w.max(c.residual),
                "L_gamma_dt" => d = d.max(c.residual),
                _ => {}
            }
        }
    }
    outcome(w < 1e-9 && d < 1e-9, format!("max|L_γΩ| = {w:.1e}, |L_γdt| = {d:.1e} (tol 1e-9)"))
}

const MATRIX: [(&str, &str); 16] = [
    ("free3d", "d1"),
    ("free3d", "x1 d2 - x2 d1"),
    ("free3d", "d0"),
    ("free3d", "t d1"),
    ("free3d", "x1^2 d1"),
    ("free3d", "x1 d1"),
    ("free2d", "x2 d1"),
    ("free2d", "x1 d2 - x2 d1"),
    ("cyclotron", "d3"),
    ("cyclotron", "x1 d2 - x2 d1"),
    ("cyclotron", "x2 d3 - x3 d2"),
    ("oscillator", "x3 d1 - x1 d3"),
    ("oscillator", "d1"),
    ("rigidbody", "d1"),
    ("rigidbody", "d2"),
    ("rigidbody", "sin(x2) d3"),
];

fn c6_equivalences() -> Outcome {
    let o = opts(12, 8);
    let (mut sym, mut non, mut violations, mut strict) = (0, 0, 0, Vec::new());
    for (model, src) in MATRIX {
        let m = catalog::model(model).unwrap();
        let x = SpacetimeVectorField::parse(src, m.n()).unwrap();
        let r = residuals(&m, &x, &o);
        if !consistent(&r, &o.tol) {
            violations += 1;
        }
        let fam = [r.k, r.gamma_conn, r.gamma, r.omega, r.euler_lagrange].map(|v| o.tol.verdict(v));
        match o.tol.verdict(r.omega.max(r.metric)) {
            Verdict::Pass => sym += 1,
            _ => non += 1,
        }
        if fam.iter().any(|v| *v != fam[0]) {
            strict.push(format!("{model}:{src}"));
        }
    }
    let pass = MATRIX.len() >= 12 && sym > 0 && non > 0 && violations == 0;
    outcome(
        pass,
        format!(
            "{} pairs ({sym} symmetries, {non} non-symmetries), {violations} violations of the Γ/G/Ω/Θ equivalences; \
             K/Γ/γ vs Ω/𝓔 split only on non-isometric affine fields {strict:?}",
            MATRIX.len()
        ),
    )
}

fn c7_flow_oracles() -> Outcome {
    const TOL: f64 = 1e-6;
    let mut worst = 0.0f64;
    let up = |w: &mut f64, v: f64| *w = w.max(v);
    for name in ["free3d", "cyclotron", "rigidbody", "oscillator"] {
        let m = catalog::model(name).unwrap();
        let st = m.structure();
        let mut fields =
            catalog::action(name, "rotations").or_else(|_| catalog::action(name, "axial")).unwrap().generators;
        fields.truncate(1);
        for src in ["x1^2 d1", "sin(x2) d1 + t d3 + x1 x3 d2", "2 d0 + x2 d2"] {
            fields.push(SpacetimeVectorField::parse(src, 3).unwrap());
        }
        let pts = sample_points(7, 50, 9, SampleBox::new(-0.6, 0.6));
        let jets = sample_points(10, 50, 10, SampleBox::new(-0.6, 0.6));
        let tangent = sample_points(8, 50, 11, SampleBox::new(-0.6, 0.6));
        for x in &fields {
            let x1 = x.prolong1();
            for p in &pts {
                up(
                    &mut worst,
                    lie_metric(x, &m.metric, &p[..4]).max_abs_diff(&flow_lie_metric(x, &m.metric, &p[..4], FLOW_STEP)),
                );
                let g = lie_gamma(x, st, p);
                let o = flow_lie_vector(&x1, &Reeb(st), p, FLOW_STEP);
                up(&mut worst, max_abs(&o[..4]));
                (0..3).for_each(|i| up(&mut worst, (g[i] - o[4 + i]).abs()));
                let f = lie_phase_conn(x, st, p);
                let o = flow_lie_tensor11(&x1, &PhaseConnectionTensor(st), p, FLOW_STEP);
                (0..3).for_each(|i| (0..4).for_each(|mu| up(&mut worst, (f[(i, mu)] - o[(4 + i, mu)]).abs())));
                up(&mut worst, lie_omega(x, st, p).max_abs_diff(&flow_lie_two_form(&x1, &Omega(st), p, FLOW_STEP)));
                let t = lie_theta(x, st, p);
                let o = flow_lie_one_form(&x1, &Theta(st), p, FLOW_STEP);
                t.iter().zip(&o).for_each(|(a, b)| up(&mut worst, (a - b).abs()));
            }
            for q in &tangent {
                let f = lie_k(x, st, &q[..4]);
                let o = flow_lie_tensor11(&x.prolong_t(), &TangentConnectionTensor(st), q, FLOW_STEP);
                for k in 0..3 {
                    for l in 0..4 {
                        let c: f64 = (0..4).map(|nu| f[(l * 3 + k) * 4 + nu] * q[4 + nu]).sum();
                        up(&mut worst, (o[(5 + k, l)] + c).abs());
                    }
                }
            }
            for j in &jets {
                let f = lie_euler_lagrange(x, st, j);
                up(&mut worst, f.max_abs_diff(&flow_lie_two_form(&x.prolong2(), &EulerLagrangeForm(st), j, FLOW_STEP)));
            }
        }
    }
    outcome(
        worst < TOL,
        format!("max |formula − flow quotient| = {worst:.1e} at s = {FLOW_STEP:e}, 50 points (tol 1e-6)"),
    )
}

fn c8_free_particle() -> Outcome {
    let m = catalog::model("free3d").unwrap();
    let st = m.structure();
    let (x0, v0) = ([0.1, -0.2, 0.3], [0.7, -0.4, 0.25]);
    let tr = integrate(st, &PhasePoint::new(0.0, x0.to_vec(), v0.to_vec()), 1.0, 1e-3).unwrap();
    let o = opts(8, 12);
    let mut drift = 0.0f64;
    for action in ["translations", "time"] {
        for e in momentum_map(&m, &catalog::action("free3d", action).unwrap(), &o) {
            drift = drift.max(conserved_drift(st, &e.charge, &tr).max_drift);
        }
    }
    let mut dev = 0.0f64;
    for p in &tr.samples {
        for i in 0..3 {
            dev = dev.max((p[1 + i] - x0[i] - v0[i] * p[0]).abs()).max((p[4 + i] - v0[i]).abs());
        }
    }
    outcome(
        drift < 1e-10 && dev < 1e-9,
        format!("charge drift {drift:.1e} (tol 1e-10); |x − x₀ − v₀t| {dev:.1e} (tol 1e-9)"),
    )
}

// closed-form gyration for a = ω (v², −v¹, 0)
fn cyclotron_exact(x0: &[f64; 3], v0: &[f64; 3], w: f64, t: f64) -> [f64; 6] {
    let (s, c) = (w * t).sin_cos();
    [
        x0[0] + (v0[0] * s - v0[1] * c + v0[1]) / w,
        x0[1] + (v0[0] * c - v0[0] + v0[1] * s) / w,
        x0[2] + v0[2] * t,
        v0[0] * c + v0[1] * s,
        -v0[0] * s + v0[1] * c,
        v0[2],
    ]
}

fn c9_cyclotron() -> Outcome {
    let (b, q, mass) = (1.0, 1.0, 1.0);
    let m = catalog::cyclotron(b, q, mass).unwrap();
    let st = m.structure();
    let w = q * b / mass;
    let (x0, v0) = ([0.2, -0.1, 0.0], [0.6, 0.3, 0.1]);
    let p0 = PhasePoint::new(0.0, x0.to_vec(), v0.to_vec());
    let period = 2.0 * PI / w;
    let tr = integrate(st, &p0, period, 1e-3).unwrap();
    let v_perp = v0[0].hypot(v0[1]);
    let radius = v_perp * mass / (q * b);
    // guiding centre from the initial state
    let centre = [x0[0] + v0[1] / w, x0[1] - v0[0] / w];
    let mut r_dev = 0.0f64;
    for p in &tr.samples {
        r_dev = r_dev.max(((p[1] - centre[0]).hypot(p[2] - centre[1]) - radius).abs());
    }
    let energy = &momentum_map(&m, &catalog::time_translation(3), &opts(8, 13))[0].charge;
    let e_drift = conserved_drift(st, energy, &tr).max_drift;
    let err = |h: f64| {
        let end = integrate(st, &p0, period, h).unwrap();
        let exact = cyclotron_exact(&x0, &v0, w, period);
        end.last()[1..].iter().zip(exact).fold(0.0f64, |e, (a, b)| e.max((a - b).abs()))
    };
    let (h, e_h, e_half) = (0.1, err(0.1), err(0.05));
    let order = convergence_order(e_h, e_half);
    outcome(
        r_dev < 1e-6 && e_drift < 1e-8 && (3.8..=4.2).contains(&order),
        format!(
            "radius {radius} reproduced within {r_dev:.1e} (tol 1e-6); energy drift {e_drift:.1e} (tol 1e-8); \
             RK4 order {order:.3} from h = {h}, {} (range [3.8, 4.2])",
            h / 2.0
        ),
    )
}

fn c10_rigid_body() -> Outcome {
    let m = catalog::model("rigidbody").unwrap();
    let st = m.structure();
    let p0 = PhasePoint::new(0.0, vec![0.3, 0.2, -0.4], vec![0.5, -0.8, 1.1]);
    let tr = integrate(st, &p0, 1.0, 1e-3).unwrap();
    let mut drift = 0.0f64;
    for e in momentum_map(&m, &catalog::action("rigidbody", "rotations").unwrap(), &opts(8, 14)) {
        drift = drift.max(conserved_drift(st, &e.charge, &tr).max_drift);
    }
    outcome(drift < 1e-6, format!("inertia (1, 2, 3), three rotation charges drift {drift:.1e} over T = 1 (tol 1e-6)"))
}

fn c11_generator_match() -> Outcome {
    let o = opts(16, 15);
    let (mut worst, mut offset_min, mut count) = (0.0f64, f64::INFINITY, 0);
    for m in models() {
        for e in entries(&m, &o) {
            worst = worst.max(generator_match(&m, &e, e.tau, &o));
            offset_min = offset_min.min(generator_match(&m, &e, e.tau + 1.0, &o));
            count += 1;
        }
    }
    outcome(
        worst < 1e-9 && offset_min > 0.999,
        format!("{count} entries: residual {worst:.1e} (tol 1e-9); with τ + 1 the smallest residual is {offset_min:.4} (> 0.999)"),
    )
}

fn c12_classification() -> Outcome {
    let o = opts(8, 16);
    let (mut fit, mut tau_dev, mut failures) = (0.0f64, 0.0f64, 0);
    for m in models() {
        for e in entries(&m, &o) {
            match classify_special_quadratic(&m, &e.charge, &o, 1e-10) {
                Ok(c) => {
                    fit = fit.max(c.fit_residual);
                    match c.time_component(1e-12) {
                        Some(t) => tau_dev = tau_dev.max((t - e.tau).abs()),
                        None => failures += 1,
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    outcome(
        failures == 0 && fit < 1e-10 && tau_dev <= 1e-12,
        format!("{failures} unclassified; fit residual {fit:.1e} (tol 1e-10); |f⁰ − τ| {tau_dev:.1e} (tol 1e-12)"),
    )
}

fn c13_homomorphism() -> Outcome {
    let o = opts(50, 17);
    let (mut worst, mut pairs) = (0.0f64, 0);
    for m in models() {
        let es = entries(&m, &opts(8, 17));
        for a in &es {
            for b in &es {
                for (tau, sigma) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
                    worst = worst.max(homomorphism_residual(&m, &a.charge, tau, &b.charge, sigma, &o));
                }
                pairs += 1;
            }
        }
    }
    outcome(worst < 1e-6, format!("{pairs} ordered pairs × 4 (τ, σ), 50 points: {worst:.1e} (tol 1e-6)"))
}

fn c14_special_bracket() -> Outcome {
    let o = opts(4, 18);
    let (mut jacobi, mut triples, mut failures) = (0.0f64, 0, 0);
    for m in models() {
        let st = m.structure();
        let es = entries(&m, &opts(8, 18));
        let pts = phase_points(m.n(), 6, 19);
        let br = |a: &MomentumMapEntry, b: &MomentumMapEntry| SpecialBracket {
            structure: st,
            f: a.charge.clone(),
            f0: a.tau,
            g: b.charge.clone(),
            g0: b.tau,
        };
        let time = |f: SpecialBracket<'_, _, _>| {
            classify_special_quadratic(&m, &f, &o, 1e-8).ok().and_then(|c| c.time_component(1e-9))
        };
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate().skip(i) {
                for c in es.iter().skip(j) {
                    triples += 1;
                    let (Some(t_ab), Some(t_bc), Some(t_ca)) = (time(br(a, b)), time(br(b, c)), time(br(c, a))) else {
                        failures += 1;
                        continue;
                    };
                    let outer = |f, f0, g: &MomentumMapEntry| SpecialBracket {
                        structure: st,
                        f,
                        f0,
                        g: g.charge.clone(),
                        g0: g.tau,
                    };
                    for p in &pts {
                        let s = outer(br(a, b), t_ab, c).eval(p)
                            + outer(br(b, c), t_bc, a).eval(p)
                            + outer(br(c, a), t_ca, b).eval(p);
                        jacobi = jacobi.max(s.abs());
                    }
                }
            }
        }
    }
    outcome(
        failures == 0 && jacobi < 1e-8,
        format!("{triples} triples, {failures} brackets failed to classify; Jacobi {jacobi:.1e} (tol 1e-8)"),
    )
}

fn full_report(seed: u64) -> String {
    let o = opts(8, seed);
    let mut out = String::new();
    for name in catalog::MODELS {
        let m = catalog::model(name).unwrap();
        let p = PhasePoint::new(0.1, vec![0.2; m.n()], vec![0.3; m.n()]);
        let action = catalog::action_names(name).unwrap()[0];
        let runs = [
            commands::derive(&m, &p, &o),
            commands::check_symmetry(&m, "x1^2 d1", &o),
            commands::noether(&m, action, &o),
            commands::momentum_map_cmd(&m, action, &o),
            commands::brackets(&m, "time", &o),
            commands::simulate(
                &m,
                &SimulateArgs { point: p.clone(), duration: 0.1, h: 0.01, charges: vec![action.into()] },
                &o,
            ),
        ];
        for r in runs {
            out.push_str(&r.unwrap().to_json_string());
        }
    }
    out
}

fn c15_determinism() -> Outcome {
    let (a, b) = (full_report(42), full_report(42));
    outcome(a == b, format!("{} bytes of JSON, identical across two runs: {}", a.len(), a == b))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 15] = [
        ("connection and Lagrangian bijections", c1_bijections),
        ("dΘ = Ω", c2_potential),
        ("closure of Ω", c3_closure),
        ("Reeb property and uniqueness probe", c4_reeb),
        ("γ preserves Ω and dt", c5_reeb_invariance),
        ("equivalence of symmetry families", c6_equivalences),
        ("Lie derivative formulas vs flows", c7_flow_oracles),
        ("free particle", c8_free_particle),
        ("cyclotron", c9_cyclotron),
        ("rigid body", c10_rigid_body),
        ("momentum map generators", c11_generator_match),
        ("charges are special quadratic", c12_classification),
        ("Hamiltonian lift homomorphism", c13_homomorphism),
        ("special bracket closure and Jacobi", c14_special_bracket),
        ("determinism", c15_determinism),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:2} {} {title}: {} [{:.2} s]",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
