//! Smooth coefficient fields on chart coordinates.
//!
//! A [`Field`] is an immutable expression tree over chart variables built from
//! polynomials, `exp`, `ln`, `sqrt` and trigonometric functions. It can be
//! evaluated on any [`Scalar`], which is how exact partial derivatives are
//! obtained, and it can be differentiated symbolically so that derived
//! objects (Christoffel coefficients, prolongations) are again fields.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use super::scalar::{Dual, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(super) enum Node {
    Const(f64),
    Var(usize),
    Add(Field, Field),
    Sub(Field, Field),
    Mul(Field, Field),
    Div(Field, Field),
    Neg(Field),
    Powi(Field, i32),
    Sin(Field),
    Cos(Field),
    Tan(Field),
    Exp(Field),
    Ln(Field),
    Sqrt(Field),
}

#[derive(Clone, PartialEq)]
pub struct Field(Arc<Node>);

impl Field {
    fn node(n: Node) -> Self {
        Field(Arc::new(n))
    }

    pub(super) fn inner(&self) -> &Node {
        &self.0
    }

    pub(super) fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn constant(v: f64) -> Self {
        Self::node(Node::Const(v))
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// Chart coordinate with the given index.
    pub fn var(index: usize) -> Self {
        Self::node(Node::Var(index))
    }

    /// Sum of `coeff · Π x_k^{e_k}` terms.
    pub fn polynomial(terms: &[(f64, Vec<u32>)]) -> Self {
        let mut acc = Field::zero();
        for (c, exps) in terms {
            let mut term = Field::constant(*c);
            for (k, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term * Field::var(k).powi(e as i32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn as_const(&self) -> Option<f64> {
        match *self.0 {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    pub fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    /// True when the tree contains no variables.
    pub fn is_constant(&self) -> bool {
        self.max_var().is_none()
    }

    /// Largest variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match &*self.0 {
            Node::Const(_) => None,
            Node::Var(i) => Some(*i),
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => match (a.max_var(), b.max_var()) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            },
            Node::Neg(a)
            | Node::Powi(a, _)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Tan(a)
            | Node::Exp(a)
            | Node::Ln(a)
            | Node::Sqrt(a) => a.max_var(),
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        match &*self.0 {
            Node::Const(_) => false,
            Node::Var(i) => *i == var,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.depends_on(var) || b.depends_on(var)
            }
            Node::Neg(a)
            | Node::Powi(a, _)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Tan(a)
            | Node::Exp(a)
            | Node::Ln(a)
            | Node::Sqrt(a) => a.depends_on(var),
        }
    }

    pub fn powi(&self, k: i32) -> Field {
        match (k, self.as_const()) {
            (0, _) => Field::one(),
            (1, _) => self.clone(),
            (_, Some(c)) => Field::constant(c.powi(k)),
            _ => Self::node(Node::Powi(self.clone(), k)),
        }
    }

    pub fn sin(&self) -> Field {
        self.unary(Node::Sin, f64::sin)
    }

    pub fn cos(&self) -> Field {
        self.unary(Node::Cos, f64::cos)
    }

    pub fn tan(&self) -> Field {
        self.unary(Node::Tan, f64::tan)
    }

    pub fn exp(&self) -> Field {
        self.unary(Node::Exp, f64::exp)
    }

    pub fn ln(&self) -> Field {
        self.unary(Node::Ln, f64::ln)
    }

    pub fn sqrt(&self) -> Field {
        self.unary(Node::Sqrt, f64::sqrt)
    }

    fn unary(&self, make: fn(Field) -> Node, f: fn(f64) -> f64) -> Field {
        match self.as_const() {
            Some(c) => Field::constant(f(c)),
            None => Self::node(make(self.clone())),
        }
    }

    /// Evaluate at a point whose length covers every referenced variable.
    pub fn eval<S: Scalar>(&self, p: &[S]) -> S {
        match &*self.0 {
            Node::Const(c) => S::cst(*c),
            Node::Var(i) => p[*i],
            Node::Add(a, b) => a.eval(p) + b.eval(p),
            Node::Sub(a, b) => a.eval(p) - b.eval(p),
            Node::Mul(a, b) => a.eval(p) * b.eval(p),
            Node::Div(a, b) => a.eval(p) / b.eval(p),
            Node::Neg(a) => -a.eval(p),
            Node::Powi(a, k) => a.eval(p).powi(*k),
            Node::Sin(a) => a.eval(p).sin(),
            Node::Cos(a) => a.eval(p).cos(),
            Node::Tan(a) => a.eval(p).tan(),
            Node::Exp(a) => a.eval(p).exp(),
            Node::Ln(a) => a.eval(p).ln(),
            Node::Sqrt(a) => a.eval(p).sqrt(),
        }
    }

    /// Symbolic partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Field {
        if !self.depends_on(var) {
            return Field::zero();
        }
        match &*self.0 {
            Node::Const(_) => Field::zero(),
            Node::Var(i) => Field::constant(if *i == var { 1.0 } else { 0.0 }),
            Node::Add(a, b) => a.diff(var) + b.diff(var),
            Node::Sub(a, b) => a.diff(var) - b.diff(var),
            Node::Mul(a, b) => a.diff(var) * b + a * b.diff(var),
            Node::Div(a, b) => (a.diff(var) * b - a * b.diff(var)) / b.powi(2),
            Node::Neg(a) => -a.diff(var),
            Node::Powi(a, k) => Field::constant(*k as f64) * a.powi(k - 1) * a.diff(var),
            Node::Sin(a) => a.cos() * a.diff(var),
            Node::Cos(a) => -(a.sin() * a.diff(var)),
            Node::Tan(a) => (Field::one() + a.tan().powi(2)) * a.diff(var),
            Node::Exp(a) => a.exp() * a.diff(var),
            Node::Ln(a) => a.diff(var) / a,
            Node::Sqrt(a) => a.diff(var) / (Field::constant(2.0) * a.sqrt()),
        }
    }

    /// Replace variable `var` by `with`.
    pub fn substitute(&self, var: usize, with: &Field) -> Field {
        if !self.depends_on(var) {
            return self.clone();
        }
        let s = |f: &Field| f.substitute(var, with);
        match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Var(i) => {
                if *i == var {
                    with.clone()
                } else {
                    self.clone()
                }
            }
            Node::Add(a, b) => s(a) + s(b),
            Node::Sub(a, b) => s(a) - s(b),
            Node::Mul(a, b) => s(a) * s(b),
            Node::Div(a, b) => s(a) / s(b),
            Node::Neg(a) => -s(a),
            Node::Powi(a, k) => s(a).powi(*k),
            Node::Sin(a) => s(a).sin(),
            Node::Cos(a) => s(a).cos(),
            Node::Tan(a) => s(a).tan(),
            Node::Exp(a) => s(a).exp(),
            Node::Ln(a) => s(a).ln(),
            Node::Sqrt(a) => s(a).sqrt(),
        }
    }

    /// Renumber variables through `map` (old index → new index).
    pub fn remap(&self, map: &dyn Fn(usize) -> usize) -> Field {
        let r = |f: &Field| f.remap(map);
        match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::Var(i) => Field::var(map(*i)),
            Node::Add(a, b) => r(a) + r(b),
            Node::Sub(a, b) => r(a) - r(b),
            Node::Mul(a, b) => r(a) * r(b),
            Node::Div(a, b) => r(a) / r(b),
            Node::Neg(a) => -r(a),
            Node::Powi(a, k) => r(a).powi(*k),
            Node::Sin(a) => r(a).sin(),
            Node::Cos(a) => r(a).cos(),
            Node::Tan(a) => r(a).tan(),
            Node::Exp(a) => r(a).exp(),
            Node::Ln(a) => r(a).ln(),
            Node::Sqrt(a) => r(a).sqrt(),
        }
    }

    /// Exact partial derivative for a multi-index of total order at most 2,
    /// given as the list of differentiated coordinates (e.g. `[1, 1]` is ∂₁∂₁).
    pub fn partial(&self, alpha: &[usize], p: &[f64]) -> Result<f64> {
        match *alpha {
            [] => Ok(self.eval(p)),
            [a] => {
                let x: Vec<Dual<f64>> = super::scalar::seed(p, a);
                Ok(self.eval(&x).eps)
            }
            [a, b] => {
                let inner = super::scalar::seed(p, b);
                let x: Vec<Dual<Dual<f64>>> = inner
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| Dual::new(v, Dual::constant(if k == a { 1.0 } else { 0.0 })))
                    .collect();
                Ok(self.eval(&x).eps.eps)
            }
            _ => Err(Error::OrderExceeded(alpha.len())),
        }
    }

    fn precedence(&self) -> u8 {
        match &*self.0 {
            Node::Add(..) | Node::Sub(..) => 1,
            Node::Mul(..) | Node::Div(..) => 2,
            Node::Neg(..) => 3,
            Node::Powi(..) => 4,
            Node::Const(c) if *c < 0.0 => 3,
            _ => 5,
        }
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::zero()
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::constant(v)
    }
}

fn add(a: &Field, b: &Field) -> Field {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Field::constant(x + y),
        (Some(0.0), _) => b.clone(),
        (_, Some(0.0)) => a.clone(),
        _ => Field::node(Node::Add(a.clone(), b.clone())),
    }
}

fn sub(a: &Field, b: &Field) -> Field {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Field::constant(x - y),
        (Some(0.0), _) => neg(b),
        (_, Some(0.0)) => a.clone(),
        _ => Field::node(Node::Sub(a.clone(), b.clone())),
    }
}

fn mul(a: &Field, b: &Field) -> Field {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Field::constant(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => Field::zero(),
        (Some(1.0), _) => b.clone(),
        (_, Some(1.0)) => a.clone(),
        (Some(-1.0), _) => neg(b),
        (_, Some(-1.0)) => neg(a),
        _ => Field::node(Node::Mul(a.clone(), b.clone())),
    }
}

fn div(a: &Field, b: &Field) -> Field {
    match (a.as_const(), b.as_const()) {
        (Some(x), Some(y)) => Field::constant(x / y),
        (Some(0.0), _) => Field::zero(),
        (_, Some(1.0)) => a.clone(),
        _ => Field::node(Node::Div(a.clone(), b.clone())),
    }
}

fn neg(a: &Field) -> Field {
    match &*a.0 {
        Node::Const(c) => Field::constant(-c),
        Node::Neg(inner) => inner.clone(),
        _ => Field::node(Node::Neg(a.clone())),
    }
}

macro_rules! field_binop {
    ($trait:ident, $method:ident, $fun:ident) => {
        impl $trait<Field> for Field {
            type Output = Field;
            fn $method(self, rhs: Field) -> Field {
                $fun(&self, &rhs)
            }
        }
        impl $trait<&Field> for Field {
            type Output = Field;
            fn $method(self, rhs: &Field) -> Field {
                $fun(&self, rhs)
            }
        }
        impl $trait<Field> for &Field {
            type Output = Field;
            fn $method(self, rhs: Field) -> Field {
                $fun(self, &rhs)
            }
        }
        impl $trait<&Field> for &Field {
            type Output = Field;
            fn $method(self, rhs: &Field) -> Field {
                $fun(self, rhs)
            }
        }
        impl $trait<f64> for Field {
            type Output = Field;
            fn $method(self, rhs: f64) -> Field {
                $fun(&self, &Field::constant(rhs))
            }
        }
        impl $trait<f64> for &Field {
            type Output = Field;
            fn $method(self, rhs: f64) -> Field {
                $fun(self, &Field::constant(rhs))
            }
        }
        impl $trait<Field> for f64 {
            type Output = Field;
            fn $method(self, rhs: Field) -> Field {
                $fun(&Field::constant(self), &rhs)
            }
        }
        impl $trait<&Field> for f64 {
            type Output = Field;
            fn $method(self, rhs: &Field) -> Field {
                $fun(&Field::constant(self), rhs)
            }
        }
    };
}

field_binop!(Add, add, add);
field_binop!(Sub, sub, sub);
field_binop!(Mul, mul, mul);
field_binop!(Div, div, div);

impl Neg for Field {
    type Output = Field;
    fn neg(self) -> Field {
        neg(&self)
    }
}

impl Neg for &Field {
    type Output = Field;
    fn neg(self) -> Field {
        neg(self)
    }
}

impl std::iter::Sum for Field {
    fn sum<I: Iterator<Item = Field>>(iter: I) -> Field {
        iter.fold(Field::zero(), |a, b| a + b)
    }
}

impl Field {
    /// Render with chart labels, e.g. `t`, `x1`, `v1` from [`super::Chart::labels`].
    pub fn render(&self, labels: &[String]) -> String {
        Labeled(self, labels).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &dyn Fn(usize) -> String) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, child: &Field, min: u8| -> fmt::Result {
            if child.precedence() < min {
                write!(f, "(")?;
                child.fmt_with(f, var)?;
                write!(f, ")")
            } else {
                child.fmt_with(f, var)
            }
        };
        let call = |f: &mut fmt::Formatter<'_>, name: &str, a: &Field| -> fmt::Result {
            write!(f, "{name}(")?;
            a.fmt_with(f, var)?;
            write!(f, ")")
        };
        match &*self.0 {
            Node::Const(c) => write!(f, "{}", if *c == 0.0 { 0.0 } else { *c }),
            Node::Var(i) => write!(f, "{}", var(*i)),
            Node::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Node::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Node::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Node::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Node::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Node::Powi(a, k) => {
                wrap(f, a, 5)?;
                write!(f, "^{k}")
            }
            Node::Sin(a) => call(f, "sin", a),
            Node::Cos(a) => call(f, "cos", a),
            Node::Tan(a) => call(f, "tan", a),
            Node::Exp(a) => call(f, "exp", a),
            Node::Ln(a) => call(f, "ln", a),
            Node::Sqrt(a) => call(f, "sqrt", a),
        }
    }
}

struct Labeled<'a>(&'a Field, &'a [String]);

impl fmt::Display for Labeled<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, &|i| self.1.get(i).cloned().unwrap_or_else(|| format!("u{i}")))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("u{i}"))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Field {
        Field::var(i)
    }

    #[test]
    fn simplification_keeps_zero_exact() {
        let f = Field::zero() * x(1) + Field::one() * x(2) - Field::zero();
        assert_eq!(f, x(2));
        assert!(Field::constant(3.0).diff(1).is_zero());
        assert!(x(1).diff(2).is_zero());
    }

    #[test]
    fn trivial_partials() {
        let f = x(1).powi(2);
        assert_eq!(f.partial(&[1, 1], &[0.3, -0.7]).unwrap(), 2.0);
        let g = x(0) * x(1);
        assert_eq!(g.partial(&[0, 1], &[0.3, -0.7]).unwrap(), 1.0);
        assert_eq!(g.partial(&[1, 1, 1], &[0.3, -0.7]), Err(Error::OrderExceeded(3)));
    }

    #[test]
    fn symbolic_matches_dual() {
        let f = (x(1).sin() * x(2).powi(3) + x(0).exp() / (1.0 + x(1).powi(2))).sqrt();
        let p = [0.2, 0.4, 1.3];
        for v in 0..3 {
            let sym = f.diff(v).eval(&p);
            let ad = f.partial(&[v], &p).unwrap();
            assert!((sym - ad).abs() < 1e-13, "{sym} vs {ad}");
            for w in 0..3 {
                let sym2 = f.diff(v).diff(w).eval(&p);
                let ad2 = f.partial(&[v, w], &p).unwrap();
                assert!((sym2 - ad2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn substitute_and_remap() {
        let f = x(1) * x(2);
        let g = f.substitute(2, &Field::constant(3.0));
        assert_eq!(g.eval(&[0.0, 2.0, 100.0]), 6.0);
        let h = f.remap(&|i| i + 1);
        assert_eq!(h.eval(&[0.0, 0.0, 2.0, 5.0]), 10.0);
    }

    #[test]
    fn polynomial_constructor() {
        let p = Field::polynomial(&[(2.0, vec![0, 2]), (-1.0, vec![1, 0, 1])]);
        assert_eq!(p.eval(&[3.0, 2.0, 5.0]), 2.0 * 4.0 - 15.0);
    }
}
