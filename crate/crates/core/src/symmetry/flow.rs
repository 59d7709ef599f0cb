//! Flow oracles: Lie derivatives as central difference quotients of pullbacks
//! along the numerically integrated flow, independent of every coordinate
//! formula.

use crate::calculus::{flow_with_jacobian, Components, OneForm, Tensor11, TwoForm, VectorField};
use crate::geometry::Metric;
use crate::linalg::Mat;

use super::vector_field::SpacetimeVectorField;

/// Default flow parameter and RK4 substeps.
pub const FLOW_STEP: f64 = 1e-4;
const SUBSTEPS: usize = 4;

fn central<T>(s: f64, pull: impl Fn(f64) -> T, sub: impl Fn(&T, &T) -> T, scale: impl Fn(&T, f64) -> T) -> T {
    let plus = pull(s);
    let minus = pull(-s);
    scale(&sub(&plus, &minus), 0.5 / s)
}

#[allow(clippy::ptr_arg)]
fn vec_sub(a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[allow(clippy::ptr_arg)]
fn vec_scale(a: &Vec<f64>, c: f64) -> Vec<f64> {
    a.iter().map(|x| x * c).collect()
}

pub fn flow_lie_one_form<Y: VectorField, A: OneForm>(y: &Y, a: &A, p: &[f64], s: f64) -> Vec<f64> {
    central(
        s,
        |s| {
            let (q, j) = flow_with_jacobian(y, p, s, SUBSTEPS);
            j.vec_mul(&a.eval(&q))
        },
        vec_sub,
        vec_scale,
    )
}

pub fn flow_lie_two_form<Y: VectorField, W: TwoForm>(y: &Y, w: &W, p: &[f64], s: f64) -> Mat<f64> {
    central(
        s,
        |s| {
            let (q, j) = flow_with_jacobian(y, p, s, SUBSTEPS);
            j.transpose().matmul(&w.eval(&q)).matmul(&j)
        },
        |a, b| a.sub(b),
        |a, c| a.scale(c),
    )
}

pub fn flow_lie_tensor11<Y: VectorField, T: Tensor11>(y: &Y, t: &T, p: &[f64], s: f64) -> Mat<f64> {
    central(
        s,
        |s| {
            let (q, j) = flow_with_jacobian(y, p, s, SUBSTEPS);
            let ji = j.inverse().expect("flow Jacobian is invertible for small s");
            ji.matmul(&t.eval(&q)).matmul(&j)
        },
        |a, b| a.sub(b),
        |a, c| a.scale(c),
    )
}

/// `L_Y Z = [Y, Z]` from the pulled-back field `Dφ⁻¹ Z(φ)`.
pub fn flow_lie_vector<Y: VectorField, Z: VectorField>(y: &Y, z: &Z, p: &[f64], s: f64) -> Vec<f64> {
    central(
        s,
        |s| {
            let (q, j) = flow_with_jacobian(y, p, s, SUBSTEPS);
            j.solve(&z.eval(&q)).expect("flow Jacobian is invertible for small s")
        },
        vec_sub,
        vec_scale,
    )
}

/// `L_X G` from `Dφᵀ G(φ) Dφ` on the spatial block of the spacetime flow.
pub fn flow_lie_metric(x: &SpacetimeVectorField, g: &Metric, e: &[f64], s: f64) -> Mat<f64> {
    let n = g.n();
    let field = Components(x.components());
    central(
        s,
        |s| {
            let (q, j) = flow_with_jacobian(&field, e, s, SUBSTEPS);
            let js = Mat::from_fn(n, n, |a, b| j[(a + 1, b + 1)]);
            js.transpose().matmul(&g.eval(&q)).matmul(&js)
        },
        |a, b| a.sub(b),
        |a, c| a.scale(c),
    )
}
