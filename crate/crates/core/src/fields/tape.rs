//! Flattened evaluation of several fields at once.
//!
//! Fields built from one another share subtrees through reference counting.
//! A [`Tape`] visits every distinct node once, so a family such as all
//! Christoffel coefficients (which reuse the same inverse metric) costs
//! roughly the size of the shared graph instead of the sum of tree sizes.

use std::collections::HashMap;

use super::expr::{Field, Node};
use super::scalar::Scalar;

#[derive(Clone, Debug)]
enum Op {
    Const(f64),
    Var(usize),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Div(usize, usize),
    Neg(usize),
    Powi(usize, i32),
    Sin(usize),
    Cos(usize),
    Tan(usize),
    Exp(usize),
    Ln(usize),
    Sqrt(usize),
}

#[derive(Clone, Debug)]
pub struct Tape {
    ops: Vec<Op>,
    outputs: Vec<usize>,
}

impl Tape {
    pub fn new(fields: &[Field]) -> Self {
        let mut tape = Tape { ops: Vec::new(), outputs: Vec::with_capacity(fields.len()) };
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for f in fields {
            let slot = tape.push(f, &mut seen);
            tape.outputs.push(slot);
        }
        tape
    }

    fn push(&mut self, f: &Field, seen: &mut HashMap<usize, usize>) -> usize {
        if let Some(&slot) = seen.get(&f.id()) {
            return slot;
        }
        let op = match f.inner() {
            Node::Const(c) => Op::Const(*c),
            Node::Var(i) => Op::Var(*i),
            Node::Add(a, b) => Op::Add(self.push(a, seen), self.push(b, seen)),
            Node::Sub(a, b) => Op::Sub(self.push(a, seen), self.push(b, seen)),
            Node::Mul(a, b) => Op::Mul(self.push(a, seen), self.push(b, seen)),
            Node::Div(a, b) => Op::Div(self.push(a, seen), self.push(b, seen)),
            Node::Neg(a) => Op::Neg(self.push(a, seen)),
            Node::Powi(a, k) => Op::Powi(self.push(a, seen), *k),
            Node::Sin(a) => Op::Sin(self.push(a, seen)),
            Node::Cos(a) => Op::Cos(self.push(a, seen)),
            Node::Tan(a) => Op::Tan(self.push(a, seen)),
            Node::Exp(a) => Op::Exp(self.push(a, seen)),
            Node::Ln(a) => Op::Ln(self.push(a, seen)),
            Node::Sqrt(a) => Op::Sqrt(self.push(a, seen)),
        };
        self.ops.push(op);
        let slot = self.ops.len() - 1;
        seen.insert(f.id(), slot);
        slot
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        let mut v: Vec<S> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let x = match *op {
                Op::Const(c) => S::cst(c),
                Op::Var(i) => p[i],
                Op::Add(a, b) => v[a] + v[b],
                Op::Sub(a, b) => v[a] - v[b],
                Op::Mul(a, b) => v[a] * v[b],
                Op::Div(a, b) => v[a] / v[b],
                Op::Neg(a) => -v[a],
                Op::Powi(a, k) => v[a].powi(k),
                Op::Sin(a) => v[a].sin(),
                Op::Cos(a) => v[a].cos(),
                Op::Tan(a) => v[a].tan(),
                Op::Exp(a) => v[a].exp(),
                Op::Ln(a) => v[a].ln(),
                Op::Sqrt(a) => v[a].sqrt(),
            };
            v.push(x);
        }
        self.outputs.iter().map(|&k| v[k]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Dual;

    #[test]
    fn matches_tree_evaluation_and_shares_nodes() {
        let x = Field::var(1);
        let y = Field::var(2);
        let common = (x.sin() * &y + 1.0).powi(3);
        let f = &common * &common + x.exp();
        let g = &common / (y.clone() * y.clone() + 2.0);
        let tape = Tape::new(&[f.clone(), g.clone()]);
        let p = [0.0, 0.4, -1.3];
        let out = tape.eval(&p);
        assert_eq!(out[0], f.eval(&p));
        assert_eq!(out[1], g.eval(&p));
        let pd: Vec<Dual<f64>> = crate::fields::scalar::seed(&p, 2);
        assert_eq!(tape.eval(&pd)[1], g.eval(&pd));
        // `common` is stored once.
        assert!(tape.len() < 16);
    }
}
