//! Small infix parser for field expressions.
//!
//! Grammar: `+ - * / ^` with the usual precedence, juxtaposition as
//! multiplication, functions `sin cos tan exp ln sqrt`, constant `pi`.
//! Chart variables are `t` (or `x0`), `x1..xn` and velocities `v1..vn`.
//! Vector fields use basis symbols `d0..dn`, e.g. `x1 d2 - x2 d1`.

use super::expr::Field;
use crate::error::{Error, Result};

/// Variable index reserved for basis symbol `d0`; `dk` maps to `BASIS_OFFSET + k`.
pub const BASIS_OFFSET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let save = i;
                i += 1;
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    i += 1;
                }
                if i < chars.len() && chars[i].is_ascii_digit() {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    i = save;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{text}`")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    n: usize,
    allow_basis: bool,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Field> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Field> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    acc = acc / self.unary()?;
                }
                _ if self.starts_atom() => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Field> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Field> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Op('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            match self.next() {
                Some(Tok::Num(v)) if v.fract() == 0.0 && v.abs() < 64.0 => {
                    let k = if neg { -(v as i32) } else { v as i32 };
                    Ok(base.powi(k))
                }
                _ => Err(self.err("exponent must be an integer literal")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Field> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Field::constant(v)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Op(')')) => Ok(e),
                    _ => Err(self.err("missing `)`")),
                }
            }
            Some(Tok::Ident(name)) => {
                let funcs: [(&str, fn(&Field) -> Field); 6] = [
                    ("sin", Field::sin),
                    ("cos", Field::cos),
                    ("tan", Field::tan),
                    ("exp", Field::exp),
                    ("ln", Field::ln),
                    ("sqrt", Field::sqrt),
                ];
                if let Some((_, f)) = funcs.iter().find(|(n, _)| *n == name) {
                    match self.next() {
                        Some(Tok::Op('(')) => {}
                        _ => return Err(self.err(&format!("`{name}` needs parentheses"))),
                    }
                    let arg = self.expr()?;
                    match self.next() {
                        Some(Tok::Op(')')) => return Ok(f(&arg)),
                        _ => return Err(self.err("missing `)`")),
                    }
                }
                self.variable(&name)
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }

    fn variable(&self, name: &str) -> Result<Field> {
        if name == "pi" {
            return Ok(Field::constant(std::f64::consts::PI));
        }
        if name == "t" {
            return Ok(Field::var(0));
        }
        let (head, digits) = name.split_at(1);
        let k: usize = digits.parse().map_err(|_| self.err(&format!("unknown symbol `{name}`")))?;
        match head {
            "x" if k <= self.n => Ok(Field::var(k)),
            "v" if (1..=self.n).contains(&k) => Ok(Field::var(self.n + k)),
            "d" if self.allow_basis && k <= self.n => Ok(Field::var(BASIS_OFFSET + k)),
            _ => Err(self.err(&format!("unknown symbol `{name}` for n = {}", self.n))),
        }
    }
}

fn parse_with(src: &str, n: usize, allow_basis: bool) -> Result<Field> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, n, allow_basis, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse a scalar field on phase space with spatial dimension `n`.
pub fn parse_field(src: &str, n: usize) -> Result<Field> {
    parse_with(src, n, false)
}

/// Parse a vector field `Σ Xᵏ dk` into its n+1 components (index 0 = time).
pub fn parse_vector_field(src: &str, n: usize) -> Result<Vec<Field>> {
    let e = parse_with(src, n, true)?;
    let comps: Vec<Field> = (0..=n).map(|k| e.diff(BASIS_OFFSET + k)).collect();
    for c in &comps {
        if c.max_var().is_some_and(|m| m >= BASIS_OFFSET) {
            return Err(Error::Parse(format!("`{src}` is not linear in the basis symbols")));
        }
        if c.max_var().is_some_and(|m| m > n) {
            return Err(Error::Parse(format!("`{src}` must depend on spacetime coordinates only")));
        }
    }
    // Remaining part must vanish: probe at a few points with basis symbols zeroed.
    let mut rest = e.clone();
    for k in 0..=n {
        rest = rest.substitute(BASIS_OFFSET + k, &Field::zero());
    }
    for probe in [0.37, -0.81, 1.13] {
        let p: Vec<f64> = (0..=n).map(|i| probe * (i as f64 + 1.0).sqrt()).collect();
        if rest.eval(&p).abs() > 1e-12 {
            return Err(Error::Parse(format!("`{src}` has a term without a basis symbol")));
        }
    }
    Ok(comps)
}
