//! Coordinate calculus on a chart: gradients, exterior derivatives, interior
//! products, Lie derivatives and flows.
//!
//! Objects are evaluators generic over [`Scalar`]; every derivative is taken
//! by re-evaluating at dual-seeded points, so operators compose (the Lie
//! derivative of a form built from another form's derivative is still exact).

use crate::fields::scalar::{seed, seed_along};
use crate::fields::{Dual, Field, Scalar};
use crate::linalg::Mat;

pub trait PhaseFunction {
    fn eval<S: Scalar>(&self, p: &[S]) -> S;
}

pub trait VectorField {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S>;
}

pub trait OneForm {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S>;
}

/// A 2-form given by its matrix `ω(∂_A, ∂_B)`.
pub trait TwoForm {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S>;
}

/// A (1,1) tensor `T^B_A`, stored as the matrix with row `B` and column `A`.
pub trait Tensor11 {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S>;
}

impl PhaseFunction for Field {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        Field::eval(self, p)
    }
}

impl<T: PhaseFunction + ?Sized> PhaseFunction for &T {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        (**self).eval(p)
    }
}

impl<T: VectorField + ?Sized> VectorField for &T {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        (**self).eval(p)
    }
}

impl<T: OneForm + ?Sized> OneForm for &T {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        (**self).eval(p)
    }
}

impl<T: TwoForm + ?Sized> TwoForm for &T {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        (**self).eval(p)
    }
}

/// Vector field or 1-form given by symbolic components.
#[derive(Clone, Debug)]
pub struct Components(pub Vec<Field>);

impl VectorField for Components {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.0.iter().map(|f| f.eval(p)).collect()
    }
}

impl OneForm for Components {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.0.iter().map(|f| f.eval(p)).collect()
    }
}

/// Constant 1-form `dx^k` on a chart of dimension `dim`.
#[derive(Clone, Copy, Debug)]
pub struct CoordDifferential {
    pub dim: usize,
    pub k: usize,
}

impl OneForm for CoordDifferential {
    fn eval<S: Scalar>(&self, _p: &[S]) -> Vec<S> {
        (0..self.dim).map(|a| if a == self.k { S::one() } else { S::zero() }).collect()
    }
}

pub fn gradient<S: Scalar, F: PhaseFunction + ?Sized>(f: &F, p: &[S]) -> Vec<S> {
    (0..p.len()).map(|k| f.eval(&seed(p, k)).eps).collect()
}

/// Directional derivative `Y·f` with `Y` given as a tangent at `p`.
pub fn directional<S: Scalar, F: PhaseFunction + ?Sized>(f: &F, p: &[S], y: &[S]) -> S {
    f.eval(&seed_along(p, y)).eps
}

/// `J[(a, c)] = ∂_c Y^a`.
pub fn jacobian<S: Scalar, V: VectorField + ?Sized>(v: &V, p: &[S]) -> Mat<S> {
    let cols: Vec<Vec<S>> =
        (0..p.len()).map(|c| v.eval(&seed(p, c)).iter().map(|d: &Dual<S>| d.eps).collect()).collect();
    let rows = cols.first().map_or(0, Vec::len);
    Mat::from_fn(rows, p.len(), |a, c| cols[c][a])
}

/// Derivative of a 2-form's matrix along coordinate `k`.
pub fn partial_two_form<S: Scalar, W: TwoForm + ?Sized>(w: &W, p: &[S], k: usize) -> Mat<S> {
    w.eval(&seed(p, k)).map(|d| d.eps)
}

/// Directional derivative of a 2-form's matrix along tangent `y`.
pub fn directional_two_form<S: Scalar, W: TwoForm + ?Sized>(w: &W, p: &[S], y: &[S]) -> Mat<S> {
    w.eval(&seed_along(p, y)).map(|d| d.eps)
}

/// `(dα)(∂_A, ∂_B) = ∂_A α_B − ∂_B α_A`.
pub struct ExteriorD1<A>(pub A);

impl<A: OneForm> TwoForm for ExteriorD1<A> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        let n = p.len();
        // j[(b, a)] = ∂_a α_b
        let cols: Vec<Vec<S>> =
            (0..n).map(|a| self.0.eval(&seed(p, a)).iter().map(|d: &Dual<S>| d.eps).collect()).collect();
        Mat::from_fn(n, n, |a, b| cols[a][b] - cols[b][a])
    }
}

/// `df` as a 1-form.
pub struct Differential<F>(pub F);

impl<F: PhaseFunction> OneForm for Differential<F> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        gradient(&self.0, p)
    }
}

/// Components `(dω)_{ABC} = ∂_A ω_{BC} + ∂_B ω_{CA} + ∂_C ω_{AB}`, flattened
/// as `[(A·N + B)·N + C]`.
pub fn exterior_d2<S: Scalar, W: TwoForm + ?Sized>(w: &W, p: &[S]) -> Vec<S> {
    let n = p.len();
    let partials: Vec<Mat<S>> = (0..n).map(|k| partial_two_form(w, p, k)).collect();
    let mut out = vec![S::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out[(a * n + b) * n + c] = partials[a][(b, c)] + partials[b][(c, a)] + partials[c][(a, b)];
            }
        }
    }
    out
}

/// `max |dω|` over all index triples at `p`.
pub fn closure_residual<W: TwoForm + ?Sized>(w: &W, p: &[f64]) -> f64 {
    exterior_d2(w, p).iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `(i_Y ω)_B = Y^A ω_{AB}`.
pub struct Interior<Y, W>(pub Y, pub W);

impl<Y: VectorField, W: TwoForm> OneForm for Interior<Y, W> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let y = self.0.eval(p);
        self.1.eval(p).vec_mul(&y)
    }
}

/// `i_Y α` as a function.
pub struct Contraction<Y, A>(pub Y, pub A);

impl<Y: VectorField, A: OneForm> PhaseFunction for Contraction<Y, A> {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        let y = self.0.eval(p);
        let a = self.1.eval(p);
        y.iter().zip(&a).fold(S::zero(), |acc, (&u, &v)| acc + u * v)
    }
}

pub fn lie_function<S: Scalar, Y: VectorField + ?Sized, F: PhaseFunction + ?Sized>(y: &Y, f: &F, p: &[S]) -> S {
    let yv = y.eval(p);
    directional(f, p, &yv)
}

/// `L_Y α = i_Y dα + d(i_Y α)`.
pub fn lie_one_form_cartan<S: Scalar, Y: VectorField, A: OneForm>(y: &Y, a: &A, p: &[S]) -> Vec<S> {
    let yv = y.eval(p);
    let da = ExteriorD1(a).eval(p);
    let first = da.vec_mul(&yv);
    let second = gradient(&Contraction(y, a), p);
    first.iter().zip(&second).map(|(&u, &v)| u + v).collect()
}

/// `(L_Y α)_B = Y^A ∂_A α_B + α_A ∂_B Y^A`.
pub fn lie_one_form_coord<S: Scalar, Y: VectorField, A: OneForm>(y: &Y, a: &A, p: &[S]) -> Vec<S> {
    let yv = y.eval(p);
    let along: Vec<S> = a.eval(&seed_along(p, &yv)).iter().map(|d: &Dual<S>| d.eps).collect();
    let av = a.eval(p);
    let jy = jacobian(y, p);
    jy.vec_mul(&av).iter().zip(&along).map(|(&u, &v)| u + v).collect()
}

/// `L_Y ω = i_Y dω + d(i_Y ω)`.
pub fn lie_two_form_cartan<S: Scalar, Y: VectorField, W: TwoForm>(y: &Y, w: &W, p: &[S]) -> Mat<S> {
    let n = p.len();
    let yv = y.eval(p);
    let dw = exterior_d2(w, p);
    let mut first = Mat::zeros(n, n);
    for b in 0..n {
        for c in 0..n {
            let mut acc = S::zero();
            for a in 0..n {
                acc += yv[a] * dw[(a * n + b) * n + c];
            }
            first[(b, c)] = acc;
        }
    }
    let second = ExteriorD1(Interior(y, w)).eval(p);
    first.add(&second)
}

/// `(L_Y ω)_{AB} = Y^C ∂_C ω_{AB} + ω_{CB} ∂_A Y^C + ω_{AC} ∂_B Y^C`.
pub fn lie_two_form_coord<S: Scalar, Y: VectorField, W: TwoForm>(y: &Y, w: &W, p: &[S]) -> Mat<S> {
    let yv = y.eval(p);
    let along = directional_two_form(w, p, &yv);
    let wv = w.eval(p);
    let jy = jacobian(y, p);
    // (Jᵀ ω)_{AB} = ∂_A Y^C ω_{CB};  (ω J)_{AB} = ω_{AC} ∂_B Y^C
    along.add(&jy.transpose().matmul(&wv)).add(&wv.matmul(&jy))
}

/// `(L_Y T)^B_A = Y^C ∂_C T^B_A − T^C_A ∂_C Y^B + T^B_C ∂_A Y^C`.
pub fn lie_tensor11<S: Scalar, Y: VectorField, T: Tensor11>(y: &Y, t: &T, p: &[S]) -> Mat<S> {
    let yv = y.eval(p);
    let along = t.eval(&seed_along(p, &yv)).map(|d| d.eps);
    let tv = t.eval(p);
    let jy = jacobian(y, p);
    along.sub(&jy.matmul(&tv)).add(&tv.matmul(&jy))
}

/// `[X, Y]^a = X^c ∂_c Y^a − Y^c ∂_c X^a`.
pub fn lie_bracket<S: Scalar, X: VectorField, Y: VectorField>(x: &X, y: &Y, p: &[S]) -> Vec<S> {
    let xv = x.eval(p);
    let yv = y.eval(p);
    let dy: Vec<S> = y.eval(&seed_along(p, &xv)).iter().map(|d: &Dual<S>| d.eps).collect();
    let dx: Vec<S> = x.eval(&seed_along(p, &yv)).iter().map(|d: &Dual<S>| d.eps).collect();
    dy.iter().zip(&dx).map(|(&a, &b)| a - b).collect()
}

/// Flow of `v` for parameter `s` starting at `p`, by `steps` classical RK4
/// steps. Generic so that seeding `p` yields the flow's Jacobian.
pub fn flow<S: Scalar, V: VectorField + ?Sized>(v: &V, p: &[S], s: f64, steps: usize) -> Vec<S> {
    let h = s / steps as f64;
    let mut x = p.to_vec();
    let axpy = |x: &[S], k: &[S], c: f64| -> Vec<S> { x.iter().zip(k).map(|(&a, &b)| a + b.scale(c)).collect() };
    for _ in 0..steps {
        let k1 = v.eval(&x);
        let k2 = v.eval(&axpy(&x, &k1, h / 2.0));
        let k3 = v.eval(&axpy(&x, &k2, h / 2.0));
        let k4 = v.eval(&axpy(&x, &k3, h));
        for i in 0..x.len() {
            x[i] += (k1[i] + k2[i].scale(2.0) + k3[i].scale(2.0) + k4[i]).scale(h / 6.0);
        }
    }
    x
}

/// Flow endpoint and its Jacobian `Dφ[(a, c)] = ∂φ^a/∂p^c`.
pub fn flow_with_jacobian<V: VectorField + ?Sized>(v: &V, p: &[f64], s: f64, steps: usize) -> (Vec<f64>, Mat<f64>) {
    let n = p.len();
    let cols: Vec<Vec<Dual<f64>>> = (0..n).map(|c| flow(v, &seed(p, c), s, steps)).collect();
    let end: Vec<f64> = cols[0].iter().map(|d| d.re).collect();
    (end, Mat::from_fn(n, n, |a, c| cols[c][a].eps))
}
