//! Dimension bookkeeping for scaled quantities.
//!
//! Exponents of time, length and mass are exact rationals. Units are only
//! checked at model-construction time; numerical kernels run on bare reals
//! with the time unit fixed to one.

use std::fmt;
use std::ops::{Div, Mul};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnitDim {
    pub time: Rational64,
    pub length: Rational64,
    pub mass: Rational64,
}

impl UnitDim {
    pub const fn dimensionless() -> Self {
        Self::new(0, 0, 0)
    }

    pub const fn new(time: i64, length: i64, mass: i64) -> Self {
        Self {
            time: Rational64::new_raw(time, 1),
            length: Rational64::new_raw(length, 1),
            mass: Rational64::new_raw(mass, 1),
        }
    }

    pub fn from_ratios(time: Rational64, length: Rational64, mass: Rational64) -> Self {
        Self { time, length, mass }
    }

    pub fn time() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn length() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn mass() -> Self {
        Self::new(0, 0, 1)
    }

    /// Charge space 𝕋⁻¹ ⊗ 𝕃^{3/2} ⊗ 𝕄^{1/2}.
    pub fn charge() -> Self {
        Self::from_ratios(Rational64::from(-1), Rational64::new(3, 2), Rational64::new(1, 2))
    }

    /// Planck constant dimension 𝕋⁻¹ ⊗ 𝕃² ⊗ 𝕄.
    pub fn action() -> Self {
        Self::new(-1, 2, 1)
    }

    pub fn mul_dim(self, other: Self) -> Self {
        Self { time: self.time + other.time, length: self.length + other.length, mass: self.mass + other.mass }
    }

    pub fn inverse(self) -> Self {
        Self { time: -self.time, length: -self.length, mass: -self.mass }
    }

    pub fn powi(self, k: i64) -> Self {
        let k = Rational64::from(k);
        Self { time: self.time * k, length: self.length * k, mass: self.mass * k }
    }

    pub fn is_dimensionless(&self) -> bool {
        *self == Self::dimensionless()
    }

    /// Parse an exponent triple such as `[-1, 2, 1]` or `[-1, "3/2", 0.5]`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse(format!("dimension must be a triple, got {value}")))?;
        let t = rational_from_json(&arr[0])?;
        let l = rational_from_json(&arr[1])?;
        let m = rational_from_json(&arr[2])?;
        Ok(Self::from_ratios(t, l, m))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |r: Rational64| {
            if r.is_integer() {
                serde_json::Value::from(r.to_integer())
            } else {
                serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
            }
        };
        serde_json::Value::Array(vec![f(self.time), f(self.length), f(self.mass)])
    }
}

fn rational_from_json(v: &serde_json::Value) -> Result<Rational64> {
    if let Some(i) = v.as_i64() {
        return Ok(Rational64::from(i));
    }
    if let Some(s) = v.as_str() {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad exponent `{s}`")))?;
        let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad exponent `{s}`")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some(x) = v.as_f64() {
        // Accept decimal literals whose exact value has a small denominator.
        for d in 1..=12i64 {
            let n = x * d as f64;
            if (n - n.round()).abs() < 1e-12 {
                return Ok(Rational64::new(n.round() as i64, d));
            }
        }
        return Err(Error::Parse(format!("exponent {x} is not a simple rational")));
    }
    Err(Error::Parse(format!("bad exponent {v}")))
}

impl Mul for UnitDim {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_dim(o)
    }
}

impl Div for UnitDim {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self.mul_dim(o.inverse())
    }
}

impl fmt::Display for UnitDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dimensionless() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (sym, e) in [("T", self.time), ("L", self.length), ("M", self.mass)] {
            if e == Rational64::from(0) {
                continue;
            }
            if e == Rational64::from(1) {
                parts.push(sym.to_string());
            } else if e.is_integer() {
                parts.push(format!("{sym}^{}", e.to_integer()));
            } else {
                parts.push(format!("{sym}^({}/{})", e.numer(), e.denom()));
            }
        }
        write!(f, "{}", parts.join("·"))
    }
}

pub fn mul_dim(a: UnitDim, b: UnitDim) -> UnitDim {
    a.mul_dim(b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledScalar {
    pub value: f64,
    pub dim: UnitDim,
}

impl ScaledScalar {
    pub fn new(value: f64, dim: UnitDim) -> Self {
        Self { value, dim }
    }

    pub fn check_dim(&self, expected: UnitDim) -> bool {
        self.dim == expected
    }

    /// Sum of two scaled scalars; only defined for equal dimensions.
    pub fn try_add(self, other: Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::UnitMismatch {
                field: "sum".into(),
                expected: self.dim.to_string(),
                found: other.dim.to_string(),
            });
        }
        Ok(Self::new(self.value + other.value, self.dim))
    }

    /// Fails with a unit-mismatch error naming `field`.
    pub fn expect_dim(&self, field: &str, expected: UnitDim) -> Result<()> {
        if self.check_dim(expected) {
            Ok(())
        } else {
            Err(Error::UnitMismatch {
                field: field.to_string(),
                expected: expected.to_string(),
                found: self.dim.to_string(),
            })
        }
    }
}

impl Mul for ScaledScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.value * o.value, self.dim * o.dim)
    }
}

impl Div for ScaledScalar {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::new(self.value / o.value, self.dim / o.dim)
    }
}

/// Serialized form used in model configs: `{"value": 1.0, "dim": [-1, "3/2", "1/2"]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaledScalarSpec {
    pub value: f64,
    #[serde(default)]
    pub dim: Option<serde_json::Value>,
}

impl ScaledScalarSpec {
    pub fn resolve(&self, default_dim: UnitDim) -> Result<ScaledScalar> {
        let dim = match &self.dim {
            Some(v) => UnitDim::from_json(v)?,
            None => default_dim,
        };
        Ok(ScaledScalar::new(self.value, dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn charge_squared() {
        let q2 = UnitDim::charge() * UnitDim::charge();
        assert_eq!(q2, UnitDim::new(-2, 3, 1));
        let x = ScaledScalar::new(4.0, q2);
        assert!(x.check_dim(UnitDim::new(-2, 3, 1)));
    }

    #[test]
    fn identity_and_planck() {
        let l = UnitDim::length();
        assert_eq!(UnitDim::dimensionless() * l, l);
        assert_eq!(UnitDim::action() * UnitDim::time(), UnitDim::new(0, 2, 1));
    }

    #[test]
    fn check_dim_trivial() {
        let x = ScaledScalar::new(3.0, UnitDim::time());
        assert!(x.check_dim(UnitDim::time()));
        assert!(!x.check_dim(UnitDim::length()));
        assert!(x.try_add(ScaledScalar::new(1.0, UnitDim::length())).is_err());
    }

    #[test]
    fn json_triples() {
        let v = serde_json::json!([-1, "3/2", 0.5]);
        assert_eq!(UnitDim::from_json(&v).unwrap(), UnitDim::charge());
        assert_eq!(UnitDim::charge().to_json(), serde_json::json!([-1, "3/2", "1/2"]));
        assert!(UnitDim::from_json(&serde_json::json!([1, 2])).is_err());
    }

    fn dim_strategy() -> impl Strategy<Value = UnitDim> {
        (-6i64..6, 1i64..4, -6i64..6, 1i64..4, -6i64..6, 1i64..4).prop_map(|(a, b, c, d, e, f)| {
            UnitDim::from_ratios(Rational64::new(a, b), Rational64::new(c, d), Rational64::new(e, f))
        })
    }

    proptest! {
        #[test]
        fn abelian_group(a in dim_strategy(), b in dim_strategy(), c in dim_strategy()) {
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * a.inverse(), UnitDim::dimensionless());
            prop_assert_eq!(a * UnitDim::dimensionless(), a);
        }
    }
}
