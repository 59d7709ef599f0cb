//! Pointwise evaluation of the derived phase-space objects.
//!
//! A [`PhaseStructure`] bundles a metric, a spacetime connection and a
//! potential, and evaluates Ω, γ, Θ, 𝓛, 𝓟 and 𝓔 at phase points from one
//! compiled coefficient tape. All evaluators are generic over the scalar, so
//! their derivatives come from dual seeding.

use crate::calculus::{gradient, OneForm, PhaseFunction, TwoForm, VectorField};
use crate::error::{Error, Result};
use crate::fields::{Field, Scalar, Tape};
use crate::linalg::Mat;

use super::connection::SpacetimeConnection;
use super::em::{Observer, Potential};
use super::metric::Metric;

#[derive(Clone, Debug)]
pub struct PhaseStructure {
    n: usize,
    metric: Metric,
    conn: SpacetimeConnection,
    potential: Potential,
    tape: Tape,
}

/// Coefficient values at one spacetime point.
#[derive(Clone, Debug)]
pub struct Coeffs<S> {
    pub n: usize,
    pub g: Mat<S>,
    pub ginv: Mat<S>,
    k: Vec<S>,
    pub a: Vec<S>,
}

impl<S: Scalar> Coeffs<S> {
    /// `K_λⁱ_μ` (i 0-based spatial).
    pub fn k(&self, l: usize, i: usize, m: usize) -> S {
        self.k[(l * self.n + i) * (self.n + 1) + m]
    }

    /// `Γⁱ_{λ0}(x, v) = K_λⁱ_j vʲ + K_λⁱ_0`.
    pub fn gamma0(&self, v: &[S], l: usize, i: usize) -> S {
        let mut acc = self.k(l, i, 0);
        for (j, &vj) in v.iter().enumerate() {
            acc += self.k(l, i, j + 1) * vj;
        }
        acc
    }

    /// `γ₀₀ⁱ = K_hⁱ_k vʰvᵏ + 2K_0ⁱ_h vʰ + K_0ⁱ_0`.
    pub fn accel(&self, v: &[S]) -> Vec<S> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = self.k(0, i, 0);
                for h in 0..n {
                    acc += self.k(0, i, h + 1) * v[h].scale(2.0);
                    for k in 0..n {
                        acc += self.k(h + 1, i, k + 1) * v[h] * v[k];
                    }
                }
                acc
            })
            .collect()
    }
}

impl PhaseStructure {
    pub fn new(metric: Metric, conn: SpacetimeConnection, potential: Potential) -> Result<Self> {
        let n = metric.n();
        if conn.n() != n || potential.0.len() != n + 1 {
            return Err(Error::Model("metric, connection and potential dimensions differ".into()));
        }
        let mut outs: Vec<Field> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                outs.push(metric.entry(i, j).clone());
            }
        }
        for i in 0..n {
            for j in 0..n {
                outs.push(metric.inverse_entry(i, j).clone());
            }
        }
        outs.extend(conn.coefficients().iter().cloned());
        outs.extend(potential.0.iter().cloned());
        let tape = Tape::new(&outs);
        Ok(Self { n, metric, conn, potential, tape })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn connection(&self) -> &SpacetimeConnection {
        &self.conn
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn tape_len(&self) -> usize {
        self.tape.len()
    }

    /// Coefficients at the spacetime part of `p` (extra entries are ignored).
    pub fn coeffs<S: Scalar>(&self, p: &[S]) -> Coeffs<S> {
        let n = self.n;
        let out = self.tape.eval(p);
        let nn = n * n;
        let nk = (n + 1) * n * (n + 1);
        Coeffs {
            n,
            g: Mat::from_fn(n, n, |i, j| out[i * n + j]),
            ginv: Mat::from_fn(n, n, |i, j| out[nn + i * n + j]),
            k: out[2 * nn..2 * nn + nk].to_vec(),
            a: out[2 * nn + nk..].to_vec(),
        }
    }

    pub fn accel<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.coeffs(p).accel(&p[self.n + 1..])
    }

    /// The dynamical connection as a vector field `∂₀ + vⁱ∂ᵢ + γ₀₀ⁱ∂ᵢ⁰`.
    pub fn reeb<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push(S::one());
        out.extend_from_slice(&p[n + 1..]);
        out.extend(self.accel(p));
        out
    }

    /// Matrix of `Ω = G_ij αⁱ ∧ θʲ` with `αⁱ = d₀ⁱ − Γⁱ_{λ0} d^λ` and
    /// `θʲ = dʲ − vʲ d⁰`.
    pub fn omega<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        let c = self.coeffs(p);
        omega_from_parts(self.n, &c.g, |l, i| c.gamma0(&p[self.n + 1..], l, i), &p[self.n + 1..])
    }

    /// Components of Θ: `Θ₀ = −½Gvv + A₀`, `Θᵢ = G_ij vʲ + Aᵢ`, zero on `d₀ⁱ`.
    pub fn theta<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.n;
        let c = self.coeffs(p);
        let v = &p[n + 1..];
        let gv = c.g.mul_vec(v);
        let vgv = dot(v, &gv);
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push(c.a[0] - vgv.scale(0.5));
        for i in 0..n {
            out.push(gv[i] + c.a[i + 1]);
        }
        out.extend(std::iter::repeat_n(S::zero(), n));
        out
    }

    /// `𝓛 = ½Gvv + Aᵢvⁱ + A₀`.
    pub fn lagrangian<S: Scalar>(&self, p: &[S]) -> S {
        let n = self.n;
        let c = self.coeffs(p);
        let v = &p[n + 1..];
        let mut acc = c.g.bilinear(v, v).scale(0.5) + c.a[0];
        for i in 0..n {
            acc += c.a[i + 1] * v[i];
        }
        acc
    }

    /// `𝓟ᵢ = G_ij vʲ + Aᵢ`.
    pub fn momentum<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.n;
        let c = self.coeffs(p);
        let gv = c.g.mul_vec(&p[n + 1..]);
        (0..n).map(|i| gv[i] + c.a[i + 1]).collect()
    }

    /// Observed Hamiltonian `𝓗 = −(Θ₀ + o₀ⁱΘᵢ)` with `o` evaluated at `p`.
    pub fn observed_hamiltonian<S: Scalar>(&self, o: &Observer, p: &[S]) -> S {
        let th = self.theta(p);
        let mut acc = th[0];
        for (i, oi) in o.0.iter().enumerate() {
            acc += oi.eval(p) * th[i + 1];
        }
        -acc
    }

    /// 𝓔 on a second-jet point `(t, x, v, a)`: the antisymmetric
    /// (n+1)×(n+1) matrix with `𝓔₀ⱼ = G_ij (aⁱ − γ₀₀ⁱ)`.
    pub fn euler_lagrange<S: Scalar>(&self, j2: &[S]) -> Mat<S> {
        let n = self.n;
        let p = &j2[..2 * n + 1];
        let acc = &j2[2 * n + 1..];
        let c = self.coeffs(p);
        let g = c.accel(&p[n + 1..]);
        let diff: Vec<S> = (0..n).map(|i| acc[i] - g[i]).collect();
        let low = c.g.vec_mul(&diff);
        let mut m = Mat::zeros(n + 1, n + 1);
        for j in 0..n {
            m[(0, j + 1)] = low[j];
            m[(j + 1, 0)] = -low[j];
        }
        m
    }

    /// Primary τ-Hamiltonian lift from the coordinate expression
    /// `τγ − G^{hk}∂ₖ⁰f (∂ₕ + Γˡ_{h0}∂ₗ⁰) + G^{hk}(∂ₖf + Γˡ_{k0}∂ₗ⁰f)∂ₕ⁰`.
    pub fn tau_lift<S: Scalar, F: PhaseFunction + ?Sized>(&self, f: &F, tau: f64, p: &[S]) -> Vec<S> {
        let n = self.n;
        let c = self.coeffs(p);
        let v = &p[n + 1..];
        let df = gradient(f, p);
        let dvf = &df[n + 1..];
        let g0: Vec<Vec<S>> = (0..n).map(|h| (0..n).map(|l| c.gamma0(v, h + 1, l)).collect()).collect();
        let acc = c.accel(v);
        let tau_s = S::cst(tau);
        let mut out = vec![S::zero(); 2 * n + 1];
        out[0] = tau_s;
        // horizontal part Yʰ = −G^{hk} ∂ₖ⁰f
        let yh: Vec<S> = c.ginv.mul_vec(dvf).into_iter().map(|x| -x).collect();
        for h in 0..n {
            out[h + 1] = tau_s * v[h] + yh[h];
        }
        // vertical part Wʰ = G^{hk}(∂ₖf + Γᵐ_{k0}∂ₘ⁰f)
        let base: Vec<S> = (0..n)
            .map(|k| {
                let mut s = df[k + 1];
                for m in 0..n {
                    s += g0[k][m] * dvf[m];
                }
                s
            })
            .collect();
        let w = c.ginv.mul_vec(&base);
        for l in 0..n {
            let mut s = tau_s * acc[l] + w[l];
            for h in 0..n {
                s += yh[h] * g0[h][l];
            }
            out[n + 1 + l] = s;
        }
        out
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Assemble `Ω_{AB} = Σ G_ij (αⁱ_A θʲ_B − αⁱ_B θʲ_A)` from `G` and the
/// contracted phase connection `Γⁱ_{λ0}(x, v)`.
pub(crate) fn omega_from_parts<S: Scalar>(n: usize, g: &Mat<S>, gamma0: impl Fn(usize, usize) -> S, v: &[S]) -> Mat<S> {
    let dim = 2 * n + 1;
    // alpha[i][A], theta[j][A]
    let mut alpha = vec![vec![S::zero(); dim]; n];
    let mut theta = vec![vec![S::zero(); dim]; n];
    for i in 0..n {
        for l in 0..=n {
            alpha[i][l] = -gamma0(l, i);
        }
        alpha[i][n + 1 + i] = S::one();
        theta[i][0] = -v[i];
        theta[i][i + 1] = S::one();
    }
    // lowered alpha: a_j = G_ij αⁱ
    let low: Vec<Vec<S>> = (0..n)
        .map(|j| {
            (0..dim)
                .map(|a| {
                    let mut s = S::zero();
                    for i in 0..n {
                        s += g[(i, j)] * alpha[i][a];
                    }
                    s
                })
                .collect()
        })
        .collect();
    let mut m = Mat::zeros(dim, dim);
    for a in 0..dim {
        for b in a + 1..dim {
            let mut s = S::zero();
            for j in 0..n {
                s += low[j][a] * theta[j][b] - low[j][b] * theta[j][a];
            }
            m[(a, b)] = s;
            m[(b, a)] = -s;
        }
    }
    m
}

/// Ω of a structure as a [`TwoForm`].
#[derive(Clone, Copy)]
pub struct Omega<'a>(pub &'a PhaseStructure);

impl TwoForm for Omega<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Mat<S> {
        self.0.omega(p)
    }
}

/// γ of a structure as a [`VectorField`].
#[derive(Clone, Copy)]
pub struct Reeb<'a>(pub &'a PhaseStructure);

impl VectorField for Reeb<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.0.reeb(p)
    }
}

/// Θ of a structure as a [`OneForm`].
#[derive(Clone, Copy)]
pub struct Theta<'a>(pub &'a PhaseStructure);

impl OneForm for Theta<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.0.theta(p)
    }
}

/// 𝓛 of a structure as a [`PhaseFunction`].
#[derive(Clone, Copy)]
pub struct Lagrangian<'a>(pub &'a PhaseStructure);

impl PhaseFunction for Lagrangian<'_> {
    fn eval<S: Scalar>(&self, p: &[S]) -> S {
        self.0.lagrangian(p)
    }
}

/// 𝓔 pulled back to the second-jet chart `(t, x, v, a)` as a [`TwoForm`].
#[derive(Clone, Copy)]
pub struct EulerLagrangeForm<'a>(pub &'a PhaseStructure);

impl TwoForm for EulerLagrangeForm<'_> {
    fn eval<S: Scalar>(&self, j2: &[S]) -> Mat<S> {
        let e = self.0.euler_lagrange(j2);
        let n = self.0.n();
        let mut m = Mat::zeros(3 * n + 1, 3 * n + 1);
        for a in 0..=n {
            for b in 0..=n {
                m[(a, b)] = e[(a, b)];
            }
        }
        m
    }
}

/// τ-Hamiltonian lift of `f` (primary coordinate route) as a [`VectorField`].
pub struct TauLift<'a, F> {
    pub structure: &'a PhaseStructure,
    pub f: F,
    pub tau: f64,
}

impl<F: PhaseFunction> VectorField for TauLift<'_, F> {
    fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.structure.tau_lift(&self.f, self.tau, p)
    }
}
