use crate::calculus::TwoForm;
use crate::error::{Error, Result};
use crate::fields::{sample_points, Chart, SampleBox};

use super::connection::{
    gamma_from_phase_connection, phase_connection_from_k, DynamicalConnection, PhaseConnection, SpacetimeConnection,
};
use super::em::{EmField, Observer, Potential};
use super::forms::{coupled_connection, poincare_cartan, PoincareCartan};
use super::metric::Metric;
use super::structure::{Omega, PhaseStructure};

/// A spacetime model: metric, gravitational connection, optional
/// electromagnetic field, potential and observer, plus every derived object.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub chart: Chart,
    pub metric: Metric,
    pub k_natural: SpacetimeConnection,
    pub em: Option<EmField>,
    pub potential: Potential,
    pub observer: Observer,
    pub k_total: SpacetimeConnection,
    natural: PhaseStructure,
    total: PhaseStructure,
}

impl Model {
    pub fn new(
        name: impl Into<String>,
        metric: Metric,
        k_natural: SpacetimeConnection,
        em: Option<EmField>,
        potential: Potential,
        observer: Observer,
    ) -> Result<Self> {
        let n = metric.n();
        let chart = Chart::new(n)?;
        if k_natural.n() != n || potential.0.len() != n + 1 || observer.0.len() != n {
            return Err(Error::Model("component dimensions do not match the metric".into()));
        }
        if let Some(f) = &em {
            if f.n() != n {
                return Err(Error::Model("field strength dimension does not match the metric".into()));
            }
        }
        let probes = sample_points(n + 1, 32, 11, SampleBox::default());
        metric.check_spd(&probes)?;
        let k_total = match &em {
            Some(f) => coupled_connection(&k_natural, &metric, f),
            None => k_natural.clone(),
        };
        let natural = PhaseStructure::new(metric.clone(), k_natural.clone(), Potential::zero(n))?;
        let total = PhaseStructure::new(metric.clone(), k_total.clone(), potential.clone())?;
        Ok(Self { name: name.into(), chart, metric, k_natural, em, potential, observer, k_total, natural, total })
    }

    pub fn n(&self) -> usize {
        self.chart.n
    }

    /// Structure of the coupled theory (Ω, γ, Θ, 𝓛 of the total objects).
    pub fn structure(&self) -> &PhaseStructure {
        &self.total
    }

    /// Structure of the gravitational part alone (Ω♮), without potential.
    pub fn natural(&self) -> &PhaseStructure {
        &self.natural
    }

    pub fn omega(&self) -> Omega<'_> {
        Omega(&self.total)
    }

    pub fn phase_connection(&self) -> PhaseConnection {
        phase_connection_from_k(&self.k_total)
    }

    pub fn dynamical_connection(&self) -> DynamicalConnection {
        gamma_from_phase_connection(&self.phase_connection())
    }

    pub fn poincare_cartan(&self) -> PoincareCartan {
        poincare_cartan(&self.metric, &self.potential)
    }

    /// Ω(γ, ·) residual and nondegeneracy at `p`; the two preconditions every
    /// Hamiltonian construction relies on.
    pub fn check_point(&self, p: &[f64]) -> Result<()> {
        let w = self.omega().eval(p);
        if super::forms::nondegeneracy(&w) <= 1e-8 {
            return Err(Error::SingularOmega { point: p.to_vec() });
        }
        Ok(())
    }
}
