//! Derived geometric objects of a model: connections and their bijections,
//! the dynamical 2-form, minimal coupling, the Poincaré–Cartan form and the
//! observed quantities.

mod connection;
mod em;
mod forms;
mod metric;
mod model;
mod structure;

pub use connection::{
    gamma_from_phase_connection, k_from_phase_connection, metric_connection, phase_connection_from_gamma,
    phase_connection_from_k, DynamicalConnection, PhaseConnection, SpacetimeConnection,
};
pub use em::{EmField, Observer, Potential};
pub use forms::{
    bordered, coupled_connection, dynamical_two_form, lagrangian_and_momentum, minimal_coupling, nondegeneracy,
    observed_split, observed_two_form, poincare_cartan, poincare_cartan_from_lagrangian, reeb_residual, CoupledTwoForm,
    LagrangianForm, MomentumForm, ObservedTwoForm, PoincareCartan, VelocityAffine, VelocityQuadratic,
};
pub use metric::Metric;
pub use model::Model;
pub use structure::{Coeffs, EulerLagrangeForm, Lagrangian, Omega, PhaseStructure, Reeb, TauLift, Theta};
