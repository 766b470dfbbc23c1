//! Model-file grammar:
//!
//! ```text
//! coord z : weight 1;      param a;
//! Im(u) = |z|^2;           field S1 = d(z) + 2i*z*d(u);
//! probe T = i*z*d(z);      # comments run to the end of the line (also //)
//! ```
//!
//! Expressions use `+ - * ^`, division by constants, Gaussian-rational
//! literals (`3`, `3/4`, `2i`, `i`), `conj(.)`, `Re(.)`, `Im(.)`,
//! `|.|^k` for even `k`, and `d(coord)` for coordinate vector fields.

use crate::error::{Error, Result};
use crate::exactmath::{parse_rat, GaussRat, MPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(Rat),
    Imag(Rat),
    Sym(char),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' || (c == '/' && chars.get(i + 1).map(|x| x.1) == Some('/')) {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            let n = parse_rat(&text).expect("digits");
            if i < chars.len() && chars[i].1 == 'i' && !chars.get(i + 1).is_some_and(|x| is_ident_char(x.1)) {
                i += 1;
                out.push((pos, Tok::Imag(n)));
            } else {
                if i < chars.len() && is_ident_start(chars[i].1) {
                    return Err(Error::Parse { pos: chars[i].0, msg: "missing '*' between number and name".into() });
                }
                out.push((pos, Tok::Num(n)));
            }
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i].1) {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if ";:=+-*/^()|".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(Rat),
    Imag(Rat),
    Name(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Conj(Box<Expr>),
    Re(Box<Expr>),
    Im(Box<Expr>),
    Abs(Box<Expr>),
    D(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub pos: usize,
    pub kind: ExprKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Coord { name: String, weight: i64, pos: usize },
    Param { name: String, pos: usize },
    Equation { coord: String, rhs: Expr, pos: usize },
    Field { name: String, expr: Expr, probe: bool, pos: usize },
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.at += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{kw}'")),
        }
    }

    fn stmt(&mut self) -> Result<Stmt> {
        let pos = self.pos();
        let head = self.ident()?;
        let st = match head.as_str() {
            "coord" => {
                let name = self.ident()?;
                self.sym(':')?;
                self.keyword("weight")?;
                let neg = self.is_sym('-');
                if neg {
                    self.at += 1;
                }
                let weight = match self.peek() {
                    Some(Tok::Num(n)) if n.is_integer() => {
                        let w: i64 = n.to_integer().try_into().map_err(|_| Error::Parse { pos: self.pos(), msg: "weight too large".into() })?;
                        self.at += 1;
                        if neg { -w } else { w }
                    }
                    _ => return self.err("expected an integer weight"),
                };
                Stmt::Coord { name, weight, pos }
            }
            "param" => Stmt::Param { name: self.ident()?, pos },
            "Im" => {
                self.sym('(')?;
                let coord = self.ident()?;
                self.sym(')')?;
                self.sym('=')?;
                Stmt::Equation { coord, rhs: self.expr()?, pos }
            }
            "field" | "probe" => {
                let name = self.ident()?;
                self.sym('=')?;
                Stmt::Field { name, expr: self.expr()?, probe: head == "probe", pos }
            }
            other => return Err(Error::Parse { pos, msg: format!("unknown statement '{other}'") }),
        };
        self.sym(';')?;
        Ok(st)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            if self.is_sym('+') {
                self.at += 1;
                let rhs = self.term()?;
                lhs = Expr { pos, kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)) };
            } else if self.is_sym('-') {
                self.at += 1;
                let rhs = self.term()?;
                lhs = Expr { pos, kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            if self.is_sym('*') {
                self.at += 1;
                let rhs = self.unary()?;
                lhs = Expr { pos, kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)) };
            } else if self.is_sym('/') {
                self.at += 1;
                let rhs = self.unary()?;
                lhs = Expr { pos, kind: ExprKind::Div(Box::new(lhs), Box::new(rhs)) };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        if self.is_sym('-') {
            self.at += 1;
            let e = self.unary()?;
            return Ok(Expr { pos, kind: ExprKind::Neg(Box::new(e)) });
        }
        if self.is_sym('+') {
            self.at += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.is_sym('^') {
            let pos = self.pos();
            self.at += 1;
            match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let k: u32 = n.to_integer().try_into().map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?;
                    self.at += 1;
                    return Ok(Expr { pos, kind: ExprKind::Pow(Box::new(base), k) });
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn call(&mut self, pos: usize, f: fn(Box<Expr>) -> ExprKind) -> Result<Expr> {
        self.sym('(')?;
        let e = self.expr()?;
        self.sym(')')?;
        Ok(Expr { pos, kind: f(Box::new(e)) })
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(Expr { pos, kind: ExprKind::Num(n) })
            }
            Some(Tok::Imag(n)) => {
                self.at += 1;
                Ok(Expr { pos, kind: ExprKind::Imag(n) })
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.sym(')')?;
                Ok(e)
            }
            Some(Tok::Sym('|')) => {
                self.at += 1;
                let e = self.expr()?;
                self.sym('|')?;
                Ok(Expr { pos, kind: ExprKind::Abs(Box::new(e)) })
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let is_call = self.is_sym('(');
                match name.as_str() {
                    "conj" if is_call => self.call(pos, ExprKind::Conj),
                    "Re" if is_call => self.call(pos, ExprKind::Re),
                    "Im" if is_call => self.call(pos, ExprKind::Im),
                    "d" if is_call => {
                        self.sym('(')?;
                        let c = self.ident()?;
                        self.sym(')')?;
                        Ok(Expr { pos, kind: ExprKind::D(c) })
                    }
                    "i" => Ok(Expr { pos, kind: ExprKind::Imag(Rat::from_integer(1.into())) }),
                    _ => Ok(Expr { pos, kind: ExprKind::Name(name) }),
                }
            }
            _ => self.err("expected an expression"),
        }
    }
}

pub fn parse_statements(src: &str) -> Result<Vec<Stmt>> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let mut out = Vec::new();
    while p.at < p.toks.len() {
        out.push(p.stmt()?);
    }
    Ok(out)
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected input after the expression");
    }
    Ok(e)
}

/// Value of an expression: a polynomial or a vector field (one component
/// per coordinate), both over the model ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(MPoly),
    Field(Vec<MPoly>),
}

/// Variable layout of the model ring: coordinates, their conjugates, parameters.
pub struct Scope<'a> {
    pub coords: &'a [String],
    pub params: &'a [String],
}

impl Scope<'_> {
    pub fn nvars(&self) -> usize {
        2 * self.coords.len() + self.params.len()
    }

    /// Permutation exchanging each coordinate with its conjugate.
    pub fn conj_perm(&self) -> Vec<usize> {
        let n = self.coords.len();
        (0..self.nvars()).map(|i| if i < n { i + n } else if i < 2 * n { i - n } else { i }).collect()
    }

    fn lookup(&self, name: &str, pos: usize) -> Result<usize> {
        if let Some(i) = self.coords.iter().position(|c| c == name) {
            return Ok(i);
        }
        if let Some(i) = self.params.iter().position(|c| c == name) {
            return Ok(2 * self.coords.len() + i);
        }
        Err(Error::Parse { pos, msg: format!("unknown name '{name}'") })
    }

    fn conj(&self, p: &MPoly) -> MPoly {
        p.conj_with(&self.conj_perm())
    }

    pub fn eval(&self, e: &Expr) -> Result<Value> {
        let nv = self.nvars();
        let n = self.coords.len();
        let poly = |v: Value, pos: usize| match v {
            Value::Poly(p) => Ok(p),
            Value::Field(_) => Err(Error::Parse { pos, msg: "vector field used where a polynomial is required".into() }),
        };
        Ok(match &e.kind {
            ExprKind::Num(r) => Value::Poly(MPoly::constant(nv, GaussRat::real(r.clone()))),
            ExprKind::Imag(r) => Value::Poly(MPoly::constant(nv, GaussRat::new(Rat::from_integer(0.into()), r.clone()))),
            ExprKind::Name(s) => Value::Poly(MPoly::var(nv, self.lookup(s, e.pos)?)),
            ExprKind::D(s) => {
                let i = self.lookup(s, e.pos)?;
                if i >= n {
                    return Err(Error::Parse { pos: e.pos, msg: format!("d({s}) needs a coordinate") });
                }
                let mut comps = vec![MPoly::zero(nv); n];
                comps[i] = MPoly::one(nv);
                Value::Field(comps)
            }
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let sub = matches!(e.kind, ExprKind::Sub(..));
                match (self.eval(a)?, self.eval(b)?) {
                    (Value::Poly(x), Value::Poly(y)) => Value::Poly(if sub { x.sub(&y) } else { x.add(&y) }),
                    (Value::Field(x), Value::Field(y)) => Value::Field(
                        x.iter().zip(&y).map(|(p, q)| if sub { p.sub(q) } else { p.add(q) }).collect(),
                    ),
                    _ => return Err(Error::Parse { pos: e.pos, msg: "cannot add a polynomial and a vector field".into() }),
                }
            }
            ExprKind::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Poly(x), Value::Poly(y)) => Value::Poly(x.mul(&y)),
                (Value::Poly(x), Value::Field(f)) | (Value::Field(f), Value::Poly(x)) => {
                    Value::Field(f.iter().map(|c| c.mul(&x)).collect())
                }
                _ => return Err(Error::Parse { pos: e.pos, msg: "cannot multiply two vector fields".into() }),
            },
            ExprKind::Div(a, b) => {
                let d = poly(self.eval(b)?, b.pos)?;
                let inv = d
                    .as_constant()
                    .and_then(|c| c.inv())
                    .ok_or_else(|| Error::Parse { pos: e.pos, msg: "division only by nonzero constants".into() })?;
                match self.eval(a)? {
                    Value::Poly(x) => Value::Poly(x.scale(&inv)),
                    Value::Field(f) => Value::Field(f.iter().map(|c| c.scale(&inv)).collect()),
                }
            }
            ExprKind::Neg(a) => match self.eval(a)? {
                Value::Poly(x) => Value::Poly(x.neg()),
                Value::Field(f) => Value::Field(f.iter().map(MPoly::neg).collect()),
            },
            ExprKind::Pow(a, k) => {
                if let ExprKind::Abs(inner) = &a.kind {
                    if k % 2 == 1 {
                        return Err(Error::Parse { pos: e.pos, msg: "|.| needs an even exponent".into() });
                    }
                    let x = poly(self.eval(inner)?, inner.pos)?;
                    Value::Poly(x.mul(&self.conj(&x)).pow(k / 2))
                } else {
                    Value::Poly(poly(self.eval(a)?, a.pos)?.pow(*k))
                }
            }
            ExprKind::Abs(_) => {
                return Err(Error::Parse { pos: e.pos, msg: "|.| must be raised to an even power".into() })
            }
            ExprKind::Conj(a) => Value::Poly(self.conj(&poly(self.eval(a)?, a.pos)?)),
            ExprKind::Re(a) => {
                let x = poly(self.eval(a)?, a.pos)?;
                let half = GaussRat::real(Rat::new(1.into(), 2.into()));
                Value::Poly(x.add(&self.conj(&x)).scale(&half))
            }
            ExprKind::Im(a) => {
                let x = poly(self.eval(a)?, a.pos)?;
                // (x - conj x) / (2i) = -i/2 (x - conj x)
                let f = GaussRat::new(Rat::from_integer(0.into()), Rat::new((-1).into(), 2.into()));
                Value::Poly(x.sub(&self.conj(&x)).scale(&f))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_imaginary_literals() {
        let t = lex("2i*z + i").unwrap();
        assert_eq!(t[0].1, Tok::Imag(Rat::from_integer(2.into())));
        assert!(lex("2z").is_err());
    }

    #[test]
    fn statement_shapes() {
        let s = parse_statements("coord z : weight 1; # c\nparam a; Im(u) = |z|^2; field S = d(z);").unwrap();
        assert_eq!(s.len(), 4);
        assert!(matches!(&s[2], Stmt::Equation { coord, .. } if coord == "u"));
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_statements("coord z weight 1;") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{other:?}"),
        }
    }
}
