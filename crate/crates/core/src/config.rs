//! JSON model configuration.
//!
//! A config either names a catalog entry (with optional parameters) or lists
//! every coefficient field explicitly:
//!
//! ```json
//! { "name": "warped", "n": 2,
//!   "metric": [["1 + x1^2", 0], [0, 1]],
//!   "particle": { "charge": { "value": 1.0 }, "mass": { "value": 1.0 } },
//!   "field_strength": [[0, 0, 0], [0, 0, "x2"], [0, 0, 0]] }
//! ```
//!
//! Fields are numbers, expression strings, or one of the constructors
//! `{"constant": c}`, `{"expr": "…"}`, `{"polynomial": [[c, [e0, e1, …]], …]}`.

use serde::Deserialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::fields::{parse_field, Field};
use crate::geometry::{metric_connection, EmField, Metric, Model, Observer, Potential};
use crate::units::{ScaledScalar, ScaledScalarSpec, UnitDim};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Number(f64),
    Expr(String),
    Constructor(FieldConstructor),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldConstructor {
    Constant(f64),
    Expr(String),
    Polynomial(Vec<(f64, Vec<u32>)>),
}

impl FieldSpec {
    pub fn build(&self, n: usize) -> Result<Field> {
        let f = match self {
            FieldSpec::Number(c) | FieldSpec::Constructor(FieldConstructor::Constant(c)) => Field::constant(*c),
            FieldSpec::Expr(s) | FieldSpec::Constructor(FieldConstructor::Expr(s)) => parse_field(s, n)?,
            FieldSpec::Constructor(FieldConstructor::Polynomial(terms)) => Field::polynomial(terms),
        };
        if f.max_var().is_some_and(|v| v > 2 * n) {
            return Err(Error::Model(format!("field `{f}` uses a variable outside the chart")));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub charge: Option<ScaledScalarSpec>,
    pub mass: Option<ScaledScalarSpec>,
}

impl ParticleSpec {
    pub fn resolve(&self) -> Result<(ScaledScalar, ScaledScalar)> {
        let one = |dim| ScaledScalarSpec { value: 1.0, dim: None }.resolve(dim);
        let q = match &self.charge {
            Some(s) => s.resolve(UnitDim::charge())?,
            None => one(UnitDim::charge())?,
        };
        let m = match &self.mass {
            Some(s) => s.resolve(UnitDim::mass())?,
            None => one(UnitDim::mass())?,
        };
        q.expect_dim("particle.charge", UnitDim::charge())?;
        m.expect_dim("particle.mass", UnitDim::mass())?;
        Ok((q, m))
    }
}

/// Parameters accepted by catalog shortcuts; unused ones are rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogParams {
    pub b: Option<f64>,
    pub inertia: Option<[f64; 3]>,
    pub omega: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: Option<String>,
    pub catalog: Option<String>,
    #[serde(default)]
    pub params: CatalogParams,
    pub n: Option<usize>,
    pub metric: Option<Vec<Vec<FieldSpec>>>,
    /// Optional closed 2-form part `Φ₂` of the time connection.
    pub phi2: Option<Vec<Vec<FieldSpec>>>,
    /// Optional `K₀ⁱ₀` components.
    pub time_gauge: Option<Vec<FieldSpec>>,
    pub field_strength: Option<Vec<Vec<FieldSpec>>>,
    pub potential: Option<Vec<FieldSpec>>,
    pub observer: Option<Vec<FieldSpec>>,
    #[serde(default)]
    pub particle: ParticleSpec,
}

fn build_vec(spec: &[FieldSpec], n: usize, len: usize, what: &str) -> Result<Vec<Field>> {
    if spec.len() != len {
        return Err(Error::Model(format!("`{what}` needs {len} entries, got {}", spec.len())));
    }
    spec.iter().map(|f| f.build(n)).collect()
}

fn build_mat(spec: &[Vec<FieldSpec>], n: usize, len: usize, what: &str) -> Result<Vec<Vec<Field>>> {
    if spec.len() != len {
        return Err(Error::Model(format!("`{what}` needs {len} rows, got {}", spec.len())));
    }
    spec.iter().map(|row| build_vec(row, n, len, what)).collect()
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("model config: {e}")))
    }

    pub fn catalog(name: &str) -> Self {
        Self {
            name: None,
            catalog: Some(name.into()),
            params: CatalogParams::default(),
            n: None,
            metric: None,
            phi2: None,
            time_gauge: None,
            field_strength: None,
            potential: None,
            observer: None,
            particle: ParticleSpec::default(),
        }
    }

    pub fn build(&self) -> Result<Model> {
        match &self.catalog {
            Some(name) => self.build_catalog(name),
            None => self.build_explicit(),
        }
    }

    fn build_catalog(&self, name: &str) -> Result<Model> {
        let p = &self.params;
        let unused = |ok: bool| -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Model(format!("parameter not supported by catalog model `{name}`")))
            }
        };
        match name {
            "cyclotron" => {
                unused(p.inertia.is_none() && p.omega.is_none())?;
                let (q, m) = self.particle.resolve()?;
                catalog::cyclotron_particle(p.b.unwrap_or(1.0), q, m)
            }
            "rigidbody" => {
                unused(p.b.is_none() && p.omega.is_none())?;
                catalog::rigid_body(p.inertia.unwrap_or([1.0, 2.0, 3.0]))
            }
            "oscillator" => {
                unused(p.b.is_none() && p.inertia.is_none())?;
                catalog::oscillator(3, p.omega.unwrap_or(1.0))
            }
            _ => {
                unused(p.b.is_none() && p.inertia.is_none() && p.omega.is_none())?;
                catalog::model(name)
            }
        }
    }

    fn build_explicit(&self) -> Result<Model> {
        let n = self.n.ok_or_else(|| Error::Model("config needs `catalog` or `n`".into()))?;
        let metric_spec = self.metric.as_ref().ok_or_else(|| Error::Model("config needs `metric`".into()))?;
        let metric = Metric::new(build_mat(metric_spec, n, n, "metric")?)?;
        let phi2 = self.phi2.as_ref().map(|m| build_mat(m, n, n, "phi2")).transpose()?;
        let gauge = self.time_gauge.as_ref().map(|v| build_vec(v, n, n, "time_gauge")).transpose()?;
        let k = metric_connection(&metric, phi2.as_deref(), gauge.as_deref())?;
        let em = match &self.field_strength {
            Some(f) => {
                let (q, m) = self.particle.resolve()?;
                Some(EmField::new(build_mat(f, n, n + 1, "field_strength")?, q, m)?)
            }
            None => None,
        };
        let potential = match &self.potential {
            Some(a) => Potential(build_vec(a, n, n + 1, "potential")?),
            None => Potential::zero(n),
        };
        let observer = match &self.observer {
            Some(o) => Observer(build_vec(o, n, n, "observer")?),
            None => Observer::rest(n),
        };
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        Model::new(name, metric, k, em, potential, observer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shortcut_with_params() {
        let c = ModelConfig::from_json(r#"{"catalog": "cyclotron", "params": {"b": 2.5}}"#).unwrap();
        let m = c.build().unwrap();
        assert_eq!(m.em.as_ref().unwrap().raw(1, 2).as_const(), Some(2.5));
        assert!(ModelConfig::from_json(r#"{"catalog": "free3d", "params": {"b": 1}}"#).unwrap().build().is_err());
    }

    #[test]
    fn explicit_model() {
        let text = r#"{
            "name": "warped", "n": 2,
            "metric": [["1 + x1^2", 0], [0, {"polynomial": [[1.0, []]]}]],
            "field_strength": [[0, 0, 0], [0, 0, {"expr": "x2"}], [0, 0, 0]],
            "particle": {"charge": {"value": 2.0}, "mass": {"value": 1.0, "dim": [0, 0, 1]}}
        }"#;
        let m = ModelConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!(m.name, "warped");
        assert_eq!(m.em.as_ref().unwrap().ratio(), 2.0);
    }

    #[test]
    fn unit_mismatch_names_the_field() {
        let text = r#"{"catalog": "cyclotron", "particle": {"mass": {"value": 1.0, "dim": [1, 0, 0]}}}"#;
        match ModelConfig::from_json(text).unwrap().build() {
            Err(Error::UnitMismatch { field, .. }) => assert_eq!(field, "particle.mass"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let text = r#"{"n": 2, "metric": [[1, 0]]}"#;
        assert!(matches!(ModelConfig::from_json(text).unwrap().build(), Err(Error::Model(_))));
        assert!(ModelConfig::from_json(r#"{"n": 2, "colour": 3}"#).is_err());
    }
}
