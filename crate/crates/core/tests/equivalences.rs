use galimech::catalog;
use galimech::symmetry::check::{check_equivalences, check_raw, CheckOptions, Verdict};
use galimech::symmetry::{RawVectorField, SpacetimeVectorField};

fn opts() -> CheckOptions {
    CheckOptions { points: 12, ..CheckOptions::default() }
}

fn check(model: &str, src: &str) -> galimech::symmetry::check::SymmetryReport {
    let m = catalog::model(model).unwrap();
    let x = SpacetimeVectorField::parse(src, m.n()).unwrap();
    check_equivalences(&m, &x, src, &opts())
}

#[test]
fn matrix_of_fields_is_consistent() {
    let cases = [
        ("free3d", "d1", Verdict::Pass),
        ("free3d", "x1 d2 - x2 d1", Verdict::Pass),
        ("free3d", "d0", Verdict::Pass),
        ("free3d", "t d1", Verdict::Pass),
        ("free3d", "x1^2 d1", Verdict::Fail),
        ("free3d", "x1 d1", Verdict::Fail),
        ("free2d", "x2 d1", Verdict::Fail),
        ("cyclotron", "d3", Verdict::Pass),
        ("cyclotron", "x1 d2 - x2 d1", Verdict::Pass),
        ("cyclotron", "x2 d3 - x3 d2", Verdict::Fail),
        ("oscillator", "x3 d1 - x1 d3", Verdict::Pass),
        ("oscillator", "d1", Verdict::Fail),
        ("rigidbody", "d1", Verdict::Pass),
        ("rigidbody", "d2", Verdict::Fail),
    ];
    for (model, src, expected) in cases {
        let r = check(model, src);
        println!(
            "{model:10} {src:16} {:?} {:?}",
            r.symmetry,
            r.conditions.iter().map(|c| c.residual).collect::<Vec<_>>()
        );
        assert!(r.consistent, "{model} {src}");
        assert_eq!(r.symmetry, expected, "{model} {src}");
    }
}

#[test]
fn boost_is_a_symmetry_of_omega_but_not_theta() {
    let r = check("free3d", "t d1");
    assert!(r.residual("L_Omega").unwrap() < 1e-12);
    assert!(r.residual("L_Theta").unwrap() > 0.1);
}

#[test]
fn translation_across_cyclotron_field_is_gauge_dependent() {
    let r = check("cyclotron", "d1");
    assert_eq!(r.symmetry, Verdict::Pass);
    assert!(r.residual("L_Theta").unwrap() > 0.1);
    assert!(r.consistent);
}

#[test]
fn time_dependent_time_component_is_rejected() {
    let m = catalog::model("free2d").unwrap();
    let raw = RawVectorField::parse("t d0", 2).unwrap();
    let r = check_raw(&m, &raw, "t d0", &opts());
    assert_eq!(r.symmetry, Verdict::Fail);
    assert_eq!(r.conditions[0].verdict, Verdict::Fail);
}
