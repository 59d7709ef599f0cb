//! Spacetime, phase and dynamical connections and the bijections between them.
//!
//! Index conventions: spacetime indices `λ, μ` run over `0..=n` (0 = time);
//! the upper spatial index `i` is 0-based (`i = 0` means `x¹`).

use crate::error::Result;
use crate::fields::{Field, Scalar};

use super::metric::Metric;

/// dt-preserving torsion-free linear connection, coefficients `K_λⁱ_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpacetimeConnection {
    n: usize,
    k: Vec<Field>,
}

impl SpacetimeConnection {
    /// Build from `f(λ, i, μ)`, called only for `λ ≤ μ`; the other half is
    /// mirrored so `K_λⁱ_μ = K_μⁱ_λ` holds by storage.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> Field) -> Self {
        let mut k = vec![Field::zero(); (n + 1) * n * (n + 1)];
        for l in 0..=n {
            for i in 0..n {
                for m in l..=n {
                    let c = f(l, i, m);
                    k[(l * n + i) * (n + 1) + m] = c.clone();
                    k[(m * n + i) * (n + 1) + l] = c;
                }
            }
        }
        Self { n, k }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _, _| Field::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: usize, i: usize, m: usize) -> &Field {
        &self.k[(l * self.n + i) * (self.n + 1) + m]
    }

    pub fn coefficients(&self) -> &[Field] {
        &self.k
    }

    /// Sum of two connections (used for minimal coupling).
    pub fn plus(&self, other: &Self) -> Self {
        Self::from_fn(self.n, |l, i, m| self.get(l, i, m) + other.get(l, i, m))
    }

    /// Covariant derivative of the metric, `∇_λ G_ij = ∂_λ G_ij + K_λˡ_i G_lj + K_λˡ_j G_il`,
    /// maximised over λ, i, j at `x`.
    pub fn metric_residual(&self, g: &Metric, x: &[f64]) -> f64 {
        let n = self.n;
        let gv = g.eval(x);
        let mut worst: f64 = 0.0;
        for l in 0..=n {
            for i in 0..n {
                for j in 0..n {
                    let mut r = g.partial(l, i, j).eval(x);
                    for a in 0..n {
                        r += self.get(l, a, i + 1).eval(x) * gv[(a, j)] + self.get(l, a, j + 1).eval(x) * gv[(i, a)];
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

/// Torsion-free affine connection of `J₁E → E`: `Γⁱ_{λ0j}` and `Γⁱ_{λ00}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseConnection {
    n: usize,
    l0j: Vec<Field>,
    l00: Vec<Field>,
}

impl PhaseConnection {
    pub fn new(n: usize, l0j: Vec<Field>, l00: Vec<Field>) -> Self {
        assert_eq!(l0j.len(), (n + 1) * n * n);
        assert_eq!(l00.len(), (n + 1) * n);
        Self { n, l0j, l00 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Γⁱ_{λ0j}` (j 0-based spatial).
    pub fn l0j(&self, l: usize, i: usize, j: usize) -> &Field {
        &self.l0j[(l * self.n + i) * self.n + j]
    }

    /// `Γⁱ_{λ00}`.
    pub fn l00(&self, l: usize, i: usize) -> &Field {
        &self.l00[l * self.n + i]
    }

    /// `Γⁱ_{λ0}(x, v) = Γⁱ_{λ0j} vʲ + Γⁱ_{λ00}` on phase space.
    pub fn contracted<S: Scalar>(&self, p: &[S], l: usize, i: usize) -> S {
        let n = self.n;
        let mut acc = self.l00(l, i).eval(p);
        for j in 0..n {
            acc += self.l0j(l, i, j).eval(p) * p[n + 1 + j];
        }
        acc
    }

    /// Torsion-freeness of the induced spacetime connection:
    /// `Γⁱ_{h0k} = Γⁱ_{k0h}` and `Γⁱ_{00k} = Γⁱ_{k00}`, checked at `x`.
    pub fn torsion_residual(&self, x: &[f64]) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for h in 0..n {
                worst = worst.max((self.l0j(0, i, h).eval(x) - self.l00(h + 1, i).eval(x)).abs());
                for k in 0..n {
                    worst = worst.max((self.l0j(h + 1, i, k).eval(x) - self.l0j(k + 1, i, h).eval(x)).abs());
                }
            }
        }
        worst
    }
}

/// Homogeneous second-order connection; `γ₀₀ⁱ = γⁱ_{hk}vʰvᵏ + 2γⁱ_h vʰ + γⁱ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalConnection {
    n: usize,
    hk: Vec<Field>,
    h: Vec<Field>,
    zero: Vec<Field>,
}

impl DynamicalConnection {
    pub fn new(n: usize, hk: Vec<Field>, h: Vec<Field>, zero: Vec<Field>) -> Self {
        assert_eq!(hk.len(), n * n * n);
        assert_eq!(h.len(), n * n);
        assert_eq!(zero.len(), n);
        Self { n, hk, h, zero }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quadratic(&self, i: usize, h: usize, k: usize) -> &Field {
        &self.hk[(i * self.n + h) * self.n + k]
    }

    pub fn linear(&self, i: usize, h: usize) -> &Field {
        &self.h[i * self.n + h]
    }

    pub fn constant(&self, i: usize) -> &Field {
        &self.zero[i]
    }

    /// `γ₀₀ⁱ` at a phase point.
    pub fn accel<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let n = self.n;
        let v = &p[n + 1..];
        (0..n)
            .map(|i| {
                let mut acc = self.constant(i).eval(p);
                for h in 0..n {
                    acc += self.linear(i, h).eval(p) * v[h].scale(2.0);
                    for k in 0..n {
                        acc += self.quadratic(i, h, k).eval(p) * v[h] * v[k];
                    }
                }
                acc
            })
            .collect()
    }

    /// `γ₀₀ⁱ` as fields on phase space.
    pub fn accel_fields(&self) -> Vec<Field> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = self.constant(i).clone();
                for h in 0..n {
                    let vh = Field::var(n + 1 + h);
                    acc = acc + 2.0 * self.linear(i, h) * &vh;
                    for k in 0..n {
                        acc = acc + self.quadratic(i, h, k) * &vh * Field::var(n + 1 + k);
                    }
                }
                acc
            })
            .collect()
    }
}

/// `Γⁱ_{λ0j} = K_λⁱ_j`, `Γⁱ_{λ00} = K_λⁱ_0`.
pub fn phase_connection_from_k(k: &SpacetimeConnection) -> PhaseConnection {
    let n = k.n();
    let mut l0j = Vec::with_capacity((n + 1) * n * n);
    let mut l00 = Vec::with_capacity((n + 1) * n);
    for l in 0..=n {
        for i in 0..n {
            for j in 0..n {
                l0j.push(k.get(l, i, j + 1).clone());
            }
        }
    }
    for l in 0..=n {
        for i in 0..n {
            l00.push(k.get(l, i, 0).clone());
        }
    }
    PhaseConnection::new(n, l0j, l00)
}

/// Inverse of [`phase_connection_from_k`].
pub fn k_from_phase_connection(g: &PhaseConnection) -> SpacetimeConnection {
    SpacetimeConnection::from_fn(g.n(), |l, i, m| match (l, m) {
        (0, 0) => g.l00(0, i).clone(),
        (0, m) => g.l0j(0, i, m - 1).clone(),
        (l, m) => g.l0j(l, i, m - 1).clone(),
    })
}

/// `γⁱ_{hk} = Γⁱ_{h0k}`, `γⁱ_h = Γⁱ_{h00}`, `γⁱ = Γⁱ_{000}`.
pub fn gamma_from_phase_connection(g: &PhaseConnection) -> DynamicalConnection {
    let n = g.n();
    let mut hk = Vec::with_capacity(n * n * n);
    let mut h = Vec::with_capacity(n * n);
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                hk.push(g.l0j(a + 1, i, b).clone());
            }
        }
    }
    for i in 0..n {
        for a in 0..n {
            h.push(g.l00(a + 1, i).clone());
        }
    }
    let zero = (0..n).map(|i| g.l00(0, i).clone()).collect();
    DynamicalConnection::new(n, hk, h, zero)
}

/// Inverse of [`gamma_from_phase_connection`]; `Γⁱ_{00k}` is filled from the
/// symmetric partner `γⁱ_k`.
pub fn phase_connection_from_gamma(d: &DynamicalConnection) -> PhaseConnection {
    let n = d.n();
    let mut l0j = Vec::with_capacity((n + 1) * n * n);
    for l in 0..=n {
        for i in 0..n {
            for j in 0..n {
                l0j.push(if l == 0 { d.linear(i, j).clone() } else { d.quadratic(i, l - 1, j).clone() });
            }
        }
    }
    let mut l00 = Vec::with_capacity((n + 1) * n);
    for l in 0..=n {
        for i in 0..n {
            l00.push(if l == 0 { d.constant(i).clone() } else { d.linear(i, l - 1).clone() });
        }
    }
    PhaseConnection::new(n, l0j, l00)
}

/// Connection determined by the metric up to the explicit gauge pieces.
///
/// Spatial part `K_{ihj} = −½(∂ᵢG_{hj} + ∂ⱼG_{hi} − ∂ₕG_{ij})` raised with `G⁻¹`;
/// `K_{0hj} = −½∂₀G_{hj} + ½Φ₂_{hj}`; `K₀ⁱ₀ = timeGauge[i]`.
pub fn metric_connection(
    g: &Metric,
    phi2: Option<&[Vec<Field>]>,
    time_gauge: Option<&[Field]>,
) -> Result<SpacetimeConnection> {
    let n = g.n();
    let lowered = |l: usize, h: usize, m: usize| -> Field {
        // K_{l h m}, l and m spacetime, h spatial (lowered upper index).
        match (l, m) {
            (0, 0) => Field::zero(),
            (0, m) | (m, 0) => {
                let j = m - 1;
                let mut c = -0.5 * g.partial(0, h, j);
                if let Some(phi) = phi2 {
                    c = c + 0.5 * &phi[h][j];
                }
                c
            }
            (l, m) => {
                let (i, j) = (l - 1, m - 1);
                -0.5 * (g.partial(i + 1, h, j) + g.partial(j + 1, h, i) - g.partial(h + 1, i, j))
            }
        }
    };
    let k = SpacetimeConnection::from_fn(n, |l, i, m| {
        if l == 0 && m == 0 {
            return time_gauge.map_or_else(Field::zero, |tg| tg[i].clone());
        }
        let mut acc = Field::zero();
        for h in 0..n {
            acc = acc + g.inverse_entry(i, h) * lowered(l, h, m);
        }
        acc
    });
    Ok(k)
}
