use proptest::prelude::*;

use galimech::calculus::{ExteriorD1, PhaseFunction, TwoForm};
use galimech::catalog;
use galimech::dynamics::{conserved_drift, integrate};
use galimech::fields::Field;
use galimech::geometry::Theta;
use galimech::symmetry::check::CheckOptions;
use galimech::symmetry::hamiltonian::PoissonBracket;
use galimech::symmetry::lie::lie_omega;
use galimech::symmetry::noether::momentum_map;
use galimech::symmetry::SpacetimeVectorField;
use galimech::PhasePoint;

/// Quadratic polynomial in `vars` variables from `1 + vars + vars(vars+1)/2` coefficients.
fn poly(c: &[f64], vars: usize) -> Field {
    let mut it = c.iter();
    let mut f = Field::constant(*it.next().unwrap());
    for a in 0..vars {
        f = f + *it.next().unwrap() * Field::var(a);
    }
    for a in 0..vars {
        for b in a..vars {
            f = f + *it.next().unwrap() * Field::var(a) * Field::var(b);
        }
    }
    f
}

fn coeffs(vars: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 1 + vars + vars * (vars + 1) / 2)
}

fn spacetime_field() -> impl Strategy<Value = SpacetimeVectorField> {
    (-1.0..1.0f64, coeffs(4), coeffs(4), coeffs(4))
        .prop_map(|(x0, a, b, c)| SpacetimeVectorField::new(x0, vec![poly(&a, 4), poly(&b, 4), poly(&c, 4)]))
}

fn phase_point() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.8..0.8f64, 7)
}

fn bracket(a: &[Field], b: &[Field]) -> Vec<Field> {
    (0..a.len())
        .map(|c| {
            let mut acc = Field::zero();
            for k in 0..a.len() {
                acc = acc + &a[k] * b[c].diff(k) - &b[k] * a[c].diff(k);
            }
            acc
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prolongation_preserves_brackets(x in spacetime_field(), y in spacetime_field(), p in phase_point()) {
        let lhs = x.bracket(&y).prolong1();
        let rhs = bracket(&x.prolong1().0, &y.prolong1().0);
        for (a, b) in lhs.0.iter().zip(&rhs) {
            prop_assert!((a.eval(&p) - b.eval(&p)).abs() < 1e-9);
        }
    }

    #[test]
    fn lie_derivative_of_omega_is_linear(x in spacetime_field(), y in spacetime_field(), s in -2.0..2.0f64, p in phase_point()) {
        let m = catalog::model("cyclotron").unwrap();
        let st = m.structure();
        let comb = SpacetimeVectorField::linear_combination(&[(s, &x), (1.0, &y)]);
        let expected = lie_omega(&x, st, &p).scale(s).add(&lie_omega(&y, st, &p));
        prop_assert!(lie_omega(&comb, st, &p).max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn poisson_bracket_is_antisymmetric(a in coeffs(7), b in coeffs(7), p in phase_point()) {
        let m = catalog::model("rigidbody").unwrap();
        let (f, g) = (poly(&a, 7), poly(&b, 7));
        let fg = PoissonBracket { structure: m.structure(), f: &f, g: &g }.eval(&p);
        let gf = PoissonBracket { structure: m.structure(), f: &g, g: &f }.eval(&p);
        prop_assert!((fg + gf).abs() < 1e-9 * (1.0 + fg.abs()));
    }

    #[test]
    fn theta_is_a_potential_of_omega(p in phase_point()) {
        for name in catalog::MODELS {
            let m = catalog::model(name).unwrap();
            let q = &p[..2 * m.n() + 1];
            prop_assert!(ExteriorD1(Theta(m.structure())).eval(q).max_abs_diff(&m.omega().eval(q)) < 1e-10);
        }
    }

    #[test]
    fn cyclotron_charges_are_conserved(x in prop::collection::vec(-1.0..1.0f64, 3), v in prop::collection::vec(-1.0..1.0f64, 3)) {
        let m = catalog::model("cyclotron").unwrap();
        let st = m.structure();
        let tr = integrate(st, &PhasePoint::new(0.0, x, v), 0.5, 0.01).unwrap();
        let opts = CheckOptions { points: 4, ..CheckOptions::default() };
        for action in ["axial", "time"] {
            for e in momentum_map(&m, &catalog::action("cyclotron", action).unwrap(), &opts) {
                prop_assert!(conserved_drift(st, &e.charge, &tr).max_drift < 1e-9);
            }
        }
    }
}
