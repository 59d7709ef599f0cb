//! Built-in models and their symmetry actions.

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::geometry::{metric_connection, EmField, Metric, Model, Observer, Potential, SpacetimeConnection};
use crate::symmetry::{LieAlgebraAction, SpacetimeVectorField};
use crate::units::{ScaledScalar, UnitDim};

pub const MODELS: &[&str] = &["free3d", "free2d", "cyclotron", "rigidbody", "oscillator"];

pub fn model(name: &str) -> Result<Model> {
    match name {
        "free3d" => free(3),
        "free2d" => free(2),
        "cyclotron" => cyclotron(1.0, 1.0, 1.0),
        "rigidbody" => rigid_body([1.0, 2.0, 3.0]),
        "oscillator" => oscillator(3, 1.0),
        _ => Err(Error::Model(format!("unknown model `{name}` (known: {})", MODELS.join(", ")))),
    }
}

/// Action names available for a built-in model.
pub fn action_names(model: &str) -> Result<&'static [&'static str]> {
    Ok(match model {
        "free3d" | "free2d" => &["translations", "rotations", "time"],
        "cyclotron" => &["axial", "time"],
        "rigidbody" | "oscillator" => &["rotations", "time"],
        _ => return Err(Error::Model(format!("unknown model `{model}`"))),
    })
}

pub fn action(model: &str, name: &str) -> Result<LieAlgebraAction> {
    if !action_names(model)?.contains(&name) {
        return Err(Error::Model(format!("model `{model}` has no action `{name}`")));
    }
    let n = if model == "free2d" { 2 } else { 3 };
    Ok(match (model, name) {
        (_, "translations") => translations(n),
        (_, "time") => time_translation(n),
        ("cyclotron", "axial") => axial(),
        ("rigidbody", "rotations") => body_rotations(),
        _ => rotations(n),
    })
}

fn unit_charge(q: f64) -> ScaledScalar {
    ScaledScalar::new(q, UnitDim::charge())
}

fn unit_mass(m: f64) -> ScaledScalar {
    ScaledScalar::new(m, UnitDim::mass())
}

fn x(i: usize) -> Field {
    Field::var(i)
}

/// Free particle in Euclidean space of dimension `n`.
pub fn free(n: usize) -> Result<Model> {
    Model::new(
        format!("free{n}d"),
        Metric::euclidean(n),
        SpacetimeConnection::zero(n),
        None,
        Potential::zero(n),
        Observer::rest(n),
    )
}

/// Charged particle in a uniform magnetic field `B ∂₃` (`F₁₂ = B`), with the
/// symmetric gauge `A = (q/m)(0, −Bx²/2, Bx¹/2, 0)`.
pub fn cyclotron(b: f64, q: f64, m: f64) -> Result<Model> {
    cyclotron_particle(b, unit_charge(q), unit_mass(m))
}

/// [`cyclotron`] with dimensioned particle data.
pub fn cyclotron_particle(b: f64, charge: ScaledScalar, mass: ScaledScalar) -> Result<Model> {
    let em = EmField::uniform_b(3, b, charge, mass)?;
    let s = 0.5 * b * em.ratio();
    let a = Potential(vec![Field::zero(), -s * x(2), s * x(1), Field::zero()]);
    Model::new("cyclotron", Metric::euclidean(3), SpacetimeConnection::zero(3), Some(em), a, Observer::rest(3))
}

/// Euler-angle body frame `ω_body = J(a, b, c)·(ȧ, ḃ, ċ)` for ZYX angles.
fn body_jacobian() -> [[Field; 3]; 3] {
    let (sb, cb) = (x(2).sin(), x(2).cos());
    let (sc, cc) = (x(3).sin(), x(3).cos());
    [[-&sb, Field::zero(), Field::one()], [&sc * &cb, cc.clone(), Field::zero()], [&cc * &cb, -&sc, Field::zero()]]
}

fn body_jacobian_inverse() -> [[Field; 3]; 3] {
    let (cb, tb) = (x(2).cos(), x(2).tan());
    let (sc, cc) = (x(3).sin(), x(3).cos());
    [[Field::zero(), &sc / &cb, &cc / &cb], [Field::zero(), cc.clone(), -&sc], [Field::one(), &sc * &tb, &cc * &tb]]
}

/// Free rigid body with principal moments `inertia`, on ZYX Euler angles
/// `(x¹, x², x³) = (yaw, pitch, roll)`; the chart excludes `|x²| = π/2`.
pub fn rigid_body(inertia: [f64; 3]) -> Result<Model> {
    let j = body_jacobian();
    let ji = body_jacobian_inverse();
    let g = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    let mut acc = Field::zero();
                    for r in 0..3 {
                        acc = acc + inertia[r] * &j[r][a] * &j[r][b];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let inv = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    let mut acc = Field::zero();
                    for r in 0..3 {
                        acc = acc + (1.0 / inertia[r]) * &ji[a][r] * &ji[b][r];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let metric = Metric::with_inverse(g, inv)?;
    let k = metric_connection(&metric, None, None)?;
    Model::new("rigidbody", metric, k, None, Potential::zero(3), Observer::rest(3))
}

/// Isotropic oscillator: Newtonian gauge `K₀ⁱ₀ = −ω²xⁱ`, `A₀ = −½ω²|x|²`.
pub fn oscillator(n: usize, omega: f64) -> Result<Model> {
    let w2 = omega * omega;
    let metric = Metric::euclidean(n);
    let gauge: Vec<Field> = (1..=n).map(|i| -w2 * x(i)).collect();
    let k = metric_connection(&metric, None, Some(&gauge))?;
    let mut a = vec![Field::zero(); n + 1];
    for i in 1..=n {
        a[0] = &a[0] - 0.5 * w2 * x(i) * x(i);
    }
    Model::new("oscillator", metric, k, None, Potential(a), Observer::rest(n))
}

pub fn translations(n: usize) -> LieAlgebraAction {
    LieAlgebraAction::new(
        "translations",
        (1..=n).map(|i| format!("P{i}")).collect(),
        (1..=n).map(|i| SpacetimeVectorField::coordinate(n, i)).collect(),
    )
}

pub fn time_translation(n: usize) -> LieAlgebraAction {
    LieAlgebraAction::new("time", vec!["H".into()], vec![SpacetimeVectorField::coordinate(n, 0)])
}

/// `x^a ∂_b − x^b ∂_a`; for n = 3 ordered as (L1, L2, L3).
fn rotation(n: usize, a: usize, b: usize) -> SpacetimeVectorField {
    let xs = (1..=n)
        .map(|i| {
            if i == b {
                x(a)
            } else if i == a {
                -x(b)
            } else {
                Field::zero()
            }
        })
        .collect();
    SpacetimeVectorField::new(0.0, xs)
}

pub fn rotations(n: usize) -> LieAlgebraAction {
    if n == 3 {
        return LieAlgebraAction::new(
            "rotations",
            vec!["L1".into(), "L2".into(), "L3".into()],
            vec![rotation(3, 2, 3), rotation(3, 3, 1), rotation(3, 1, 2)],
        );
    }
    let mut labels = Vec::new();
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            labels.push(format!("L{a}{b}"));
            gens.push(rotation(n, a, b));
        }
    }
    LieAlgebraAction::new("rotations", labels, gens)
}

/// Symmetries of a uniform field along ∂₃: translation along the field and
/// rotation about it.
pub fn axial() -> LieAlgebraAction {
    LieAlgebraAction::new(
        "axial",
        vec!["P3".into(), "L3".into()],
        vec![SpacetimeVectorField::coordinate(3, 3), rotation(3, 1, 2)],
    )
}

/// Right-invariant rotation generators in ZYX Euler angles.
pub fn body_rotations() -> LieAlgebraAction {
    let (sa, ca) = (x(1).sin(), x(1).cos());
    let (cb, tb) = (x(2).cos(), x(2).tan());
    let ex = vec![&tb * &ca, -&sa, &ca / &cb];
    let ey = vec![&tb * &sa, ca.clone(), &sa / &cb];
    let ez = vec![Field::one(), Field::zero(), Field::zero()];
    LieAlgebraAction::new(
        "rotations",
        vec!["L1".into(), "L2".into(), "L3".into()],
        [ex, ey, ez].into_iter().map(|xs| SpacetimeVectorField::new(0.0, xs)).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_model_builds_and_actions_close() {
        for name in MODELS {
            let m = model(name).unwrap();
            for a in action_names(name).unwrap() {
                let act = action(name, a).unwrap();
                assert_eq!(act.n(), m.n());
                assert!(act.closure_residual(3) < 1e-9, "{name}/{a}");
            }
        }
    }

    #[test]
    fn rotation_structure_constants() {
        let act = rotations(3);
        let (c, res) = act.bracket_coefficients(0, 1, 5);
        assert!(res < 1e-12);
        // [L1, L2] = ±L3 depending on the orientation convention.
        assert!((c[2].abs() - 1.0).abs() < 1e-12 && c[0].abs() < 1e-12);
        let body = body_rotations();
        let (cb, _) = body.bracket_coefficients(0, 1, 5);
        assert!((cb[2] - c[2]).abs() < 1e-9);
    }
}
