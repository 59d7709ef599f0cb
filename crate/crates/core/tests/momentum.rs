use galimech::calculus::PhaseFunction;
use galimech::catalog;
use galimech::fields::{parse_field, sample_points, SampleBox};
use galimech::geometry::Model;
use galimech::symmetry::check::CheckOptions;
use galimech::symmetry::hamiltonian::*;
use galimech::symmetry::noether::{momentum_map, MomentumMapEntry};
use galimech::Error;

fn opts(points: usize) -> CheckOptions {
    CheckOptions { points, seed: 3, bx: SampleBox::new(-0.8, 0.8), ..CheckOptions::default() }
}

fn entries(model: &Model) -> Vec<MomentumMapEntry> {
    catalog::action_names(&model.name)
        .unwrap()
        .iter()
        .flat_map(|a| momentum_map(model, &catalog::action(&model.name, a).unwrap(), &opts(16)))
        .collect()
}

fn models() -> Vec<Model> {
    catalog::MODELS.iter().map(|m| catalog::model(m).unwrap()).collect()
}

#[test]
fn free_particle_charges() {
    let m = catalog::model("free3d").unwrap();
    let p = [0.3, 0.1, -0.2, 0.5, 0.7, -0.4, 0.2];
    let tr = momentum_map(&m, &catalog::translations(3), &opts(8));
    assert_eq!(tr[0].tau, 0.0);
    assert!((tr[0].charge.eval(&p) + 0.7).abs() < 1e-15);
    let time = momentum_map(&m, &catalog::time_translation(3), &opts(8));
    assert_eq!(time[0].tau, 1.0);
    assert!((time[0].charge.eval(&p) - 0.5 * (0.49 + 0.16 + 0.04)).abs() < 1e-15);
    let rot = momentum_map(&m, &catalog::rotations(3), &opts(8));
    // L3 = x1 ∂2 − x2 ∂1 gives −(x¹v² − x²v¹)
    assert!((rot[2].charge.eval(&p) + (0.1 * -0.4 - -0.2 * 0.7)).abs() < 1e-15);
}

#[test]
fn every_catalog_entry_is_a_conserved_symmetry() {
    for m in models() {
        for e in entries(&m) {
            let d = &e.diagnostics;
            assert!(e.is_symmetry(), "{} {}", m.name, e.label);
            assert!(d.conservation_residual < 1e-10, "{} {}: {}", m.name, e.label, d.conservation_residual);
            assert!(d.contraction_residual < 1e-12 && d.lagrangian_residual < 1e-12);
            assert!(e.differential_residual < 1e-10, "{} {}", m.name, e.label);
        }
    }
}

#[test]
fn generator_match_is_two_sided() {
    for m in models() {
        for e in entries(&m) {
            assert!(generator_match(&m, &e, e.tau, &opts(16)) < 1e-9, "{} {}", m.name, e.label);
            assert!(generator_match(&m, &e, e.tau + 1.0, &opts(16)) >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn charges_are_special_quadratic_with_their_time_scale() {
    for m in models() {
        for e in entries(&m) {
            let fit = classify_special_quadratic(&m, &e.charge, &opts(8), 1e-10).unwrap();
            assert!(fit.fit_residual < 1e-10);
            assert_eq!(fit.time_component(1e-12).map(|t| (t - e.tau).abs() < 1e-12), Some(true));
        }
    }
    let m = catalog::model("free3d").unwrap();
    let cubic = parse_field("v1^3", 3).unwrap();
    assert!(matches!(classify_special_quadratic(&m, &cubic, &opts(4), 1e-10), Err(Error::NotSpecialQuadratic { .. })));
    let skew = parse_field("v1^2", 3).unwrap();
    assert!(matches!(classify_special_quadratic(&m, &skew, &opts(4), 1e-10), Err(Error::NotMetricProportional { .. })));
}

#[test]
fn tau_lift_examples() {
    let m = catalog::model("free3d").unwrap();
    let st = m.structure();
    let p = [0.3, 0.1, -0.2, 0.5, 0.7, -0.4, 0.2];
    let h = parse_field("(v1^2 + v2^2 + v3^2) / 2", 3).unwrap();
    assert_eq!(st.tau_lift(&h, 1.0, &p), vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let v1 = parse_field("v1", 3).unwrap();
    assert_eq!(st.tau_lift(&v1, 0.0, &p), vec![0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let c = parse_field("2.5", 3).unwrap();
    assert!(st.tau_lift(&c, 0.0, &p).iter().all(|x| *x == 0.0));
    for name in catalog::MODELS {
        let m = catalog::model(name).unwrap();
        let n = m.n();
        let f = parse_field(if n == 3 { "x1 v2 v3 + sin(t x3) v1 + x2^2" } else { "x1 v2 v1 + sin(t) v1" }, n).unwrap();
        for p in sample_points(2 * n + 1, 8, 4, SampleBox::default()) {
            for tau in [0.0, 1.0, -2.0] {
                let a = m.structure().tau_lift(&f, tau, &p);
                let b = tau_lift_oracle(m.structure(), &f, tau, &p).unwrap();
                assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
            }
        }
    }
}

#[test]
fn poisson_bracket_properties() {
    let m = catalog::model("free3d").unwrap();
    let st = m.structure();
    let v1 = parse_field("v1", 3).unwrap();
    let v2 = parse_field("v2", 3).unwrap();
    let h = parse_field("(v1^2 + v2^2 + v3^2) / 2", 3).unwrap();
    for p in sample_points(7, 50, 5, SampleBox::default()) {
        assert!(PoissonBracket { structure: st, f: &v1, g: &v2 }.eval(&p).abs() < 1e-14);
        assert!(PoissonBracket { structure: st, f: &h, g: &v1 }.eval(&p).abs() < 1e-14);
    }
    let cyc = catalog::model("cyclotron").unwrap();
    let st = cyc.structure();
    let f = parse_field("x1 v2 + v3^2 t", 3).unwrap();
    let g = parse_field("sin(x2) v1 + x3", 3).unwrap();
    let k = parse_field("v1 v2 + x1", 3).unwrap();
    for p in sample_points(7, 20, 6, SampleBox::default()) {
        let fg = PoissonBracket { structure: st, f: &f, g: &g }.eval(&p);
        let gf = PoissonBracket { structure: st, f: &g, g: &f }.eval(&p);
        assert!((fg + gf).abs() < 1e-10);
        // Leibniz in the second slot: {f, gk} = {f, g}k + g{f, k}
        let gk = &g * &k;
        let lhs = PoissonBracket { structure: st, f: &f, g: &gk }.eval(&p);
        let fk = PoissonBracket { structure: st, f: &f, g: &k }.eval(&p);
        assert!((lhs - fg * k.eval(&p) - g.eval(&p) * fk).abs() < 1e-10);
        for tau in [0.0, 1.0, -2.0] {
            for sigma in [0.0, 1.0, -2.0] {
                assert!((poisson_bracket_with(st, &f, &g, tau, sigma, &p) - fg).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn hamiltonian_lift_is_a_homomorphism() {
    for m in models() {
        let es = entries(&m);
        for a in &es {
            for b in &es {
                for (tau, sigma) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
                    let r = homomorphism_residual(&m, &a.charge, tau, &b.charge, sigma, &opts(6));
                    assert!(r < 1e-6, "{} {} {}: {r}", m.name, a.label, b.label);
                }
            }
        }
    }
}

#[test]
fn special_bracket_closes_and_satisfies_jacobi() {
    for name in ["free3d", "cyclotron", "rigidbody"] {
        let m = catalog::model(name).unwrap();
        let st = m.structure();
        let es = entries(&m);
        let o = opts(4);
        let br = |a: &MomentumMapEntry, b: &MomentumMapEntry| SpecialBracket {
            structure: st,
            f: a.charge.clone(),
            f0: a.tau,
            g: b.charge.clone(),
            g0: b.tau,
        };
        let pts = sample_points(2 * m.n() + 1, 4, 7, SampleBox::default());
        for a in &es {
            for b in &es {
                let inner = br(a, b);
                let fit = classify_special_quadratic(&m, &inner, &o, 1e-8).unwrap();
                let t_ab = fit.time_component(1e-9).unwrap();
                for c in &es {
                    let t_bc =
                        classify_special_quadratic(&m, &br(b, c), &o, 1e-8).unwrap().time_component(1e-9).unwrap();
                    let t_ca =
                        classify_special_quadratic(&m, &br(c, a), &o, 1e-8).unwrap().time_component(1e-9).unwrap();
                    let outer = |f, f0, g: &MomentumMapEntry| SpecialBracket {
                        structure: st,
                        f,
                        f0,
                        g: g.charge.clone(),
                        g0: g.tau,
                    };
                    for p in &pts {
                        let j = outer(br(a, b), t_ab, c).eval(p)
                            + outer(br(b, c), t_bc, a).eval(p)
                            + outer(br(c, a), t_ca, b).eval(p);
                        assert!(j.abs() < 1e-8, "{name} {} {} {}: {j}", a.label, b.label, c.label);
                    }
                }
            }
        }
    }
}
