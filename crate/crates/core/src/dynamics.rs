//! Integration of the law of motion and conserved-quantity drift.

use serde::Serialize;

use crate::calculus::{flow, PhaseFunction};
use crate::error::{Error, Result};
use crate::fields::scalar::seed_along;
use crate::fields::PhasePoint;
use crate::geometry::{PhaseStructure, Reeb};

/// Uniformly sampled motion `(t_k, x_k, v_k)`, stored as phase coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub n: usize,
    pub h: f64,
    pub integrator: &'static str,
    pub samples: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> &[f64] {
        self.samples.last().expect("a trajectory has at least its initial point")
    }

    pub fn point(&self, k: usize) -> PhasePoint {
        PhasePoint::from_coords(&self.samples[k])
    }
}

/// `ẍⁱ = γ₀₀ⁱ(t, x, v)`.
pub fn law_of_motion_rhs(st: &PhaseStructure, p: &PhasePoint) -> Vec<f64> {
    st.accel(&p.coords())
}

/// Classical RK4 on `(t, x, v)` with `ṫ = 1`. The step is shrunk so that an
/// integral number of steps reaches `t_end` exactly.
pub fn integrate(st: &PhaseStructure, p0: &PhasePoint, duration: f64, h: f64) -> Result<Trajectory> {
    if !(h > 0.0 && duration > 0.0 && h.is_finite() && duration.is_finite()) {
        return Err(Error::InvalidArgument(format!("need h > 0 and T > 0, got h = {h}, T = {duration}")));
    }
    let n = st.n();
    if p0.x.len() != n || p0.v.len() != n {
        return Err(Error::InvalidArgument(format!("initial point must have {n} positions and velocities")));
    }
    let steps = (duration / h - 1e-9).ceil().max(1.0) as usize;
    let h = duration / steps as f64;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut p = p0.coords();
    samples.push(p.clone());
    for k in 1..=steps {
        p = flow(&Reeb(st), &p, h, 1);
        p[0] = p0.t + k as f64 * h;
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite { t: p[0] });
        }
        samples.push(p.clone());
    }
    Ok(Trajectory { n, h, integrator: "rk4", samples })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Drift {
    /// `max_k |f(p_k) − f(p_0)|`.
    pub max_drift: f64,
    /// `max_k |γ·f (p_k)|`.
    pub reeb_residual: f64,
}

pub fn conserved_drift<F: PhaseFunction + ?Sized>(st: &PhaseStructure, f: &F, traj: &Trajectory) -> Drift {
    let f0 = f.eval(&traj.samples[0]);
    let mut d = Drift { max_drift: 0.0, reeb_residual: 0.0 };
    for p in &traj.samples {
        d.max_drift = d.max_drift.max((f.eval(p) - f0).abs());
        let g = st.reeb(p);
        d.reeb_residual = d.reeb_residual.max(f.eval(&seed_along(p, &g)).eps.abs());
    }
    d
}

/// Empirical order `log₂(e(h) / e(h/2))`.
pub fn convergence_order(err_h: f64, err_half: f64) -> f64 {
    (err_h / err_half).log2()
}
