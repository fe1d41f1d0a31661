//! Height-function expressions over `x1`, `x2` with exact second-order jets.
//!
//! Grammar (lowest to highest precedence):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'x1' | 'x2' | func '(' expr ')' | '(' expr ')'
//! func    := exp | sin | cos | sqrt | ln
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x1^2`
//! is `-(x1^2)` and `2^3^2` is `2^(3^2)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Value, gradient and Hessian of a scalar function of two variables.
///
/// The Hessian keeps a single triangle `[h11, h12, h22]`, so it is symmetric
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [f64; 3],
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Self { value, grad: [0.0; 2], hess: [0.0; 3] }
    }

    pub fn x1(value: f64) -> Self {
        Self { value, grad: [1.0, 0.0], hess: [0.0; 3] }
    }

    pub fn x2(value: f64) -> Self {
        Self { value, grad: [0.0, 1.0], hess: [0.0; 3] }
    }

    pub fn h11(&self) -> f64 {
        self.hess[0]
    }

    pub fn h12(&self) -> f64 {
        self.hess[1]
    }

    pub fn h22(&self) -> f64 {
        self.hess[2]
    }

    /// Hessian as a full 2×2 matrix.
    pub fn hessian(&self) -> [[f64; 2]; 2] {
        [[self.hess[0], self.hess[1]], [self.hess[1], self.hess[2]]]
    }

    pub fn is_constant(&self) -> bool {
        self.grad == [0.0; 2] && self.hess == [0.0; 3]
    }

    /// Chain rule for `g(self)` given `g`, `g'` and `g''` at `self.value`.
    pub fn chain(&self, g: f64, dg: f64, ddg: f64) -> Self {
        let [a, b] = self.grad;
        Self {
            value: g,
            grad: [dg * a, dg * b],
            hess: [
                ddg * a * a + dg * self.hess[0],
                ddg * a * b + dg * self.hess[1],
                ddg * b * b + dg * self.hess[2],
            ],
        }
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    /// Square root; the caller guarantees a positive argument.
    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    /// Natural logarithm; the caller guarantees a positive argument.
    pub fn ln(self) -> Self {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn recip(self) -> Self {
        let v = self.value;
        let r = 1.0 / v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn powi(self, n: i32) -> Self {
        let v = self.value;
        match n {
            0 => Self::constant(1.0),
            1 => self,
            _ => {
                let nf = n as f64;
                self.chain(v.powi(n), nf * v.powi(n - 1), nf * (nf - 1.0) * v.powi(n - 2))
            }
        }
    }

    pub fn powf(self, c: f64) -> Self {
        let v = self.value;
        self.chain(v.powf(c), c * v.powf(c - 1.0), c * (c - 1.0) * v.powf(c - 2.0))
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + o.value,
            grad: [self.grad[0] + o.grad[0], self.grad[1] + o.grad[1]],
            hess: [self.hess[0] + o.hess[0], self.hess[1] + o.hess[1], self.hess[2] + o.hess[2]],
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            grad: [-self.grad[0], -self.grad[1]],
            hess: [-self.hess[0], -self.hess[1], -self.hess[2]],
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let (u, v) = (self, o);
        Jet2 {
            value: u.value * v.value,
            grad: [
                u.grad[0] * v.value + u.value * v.grad[0],
                u.grad[1] * v.value + u.value * v.grad[1],
            ],
            hess: [
                u.hess[0] * v.value + 2.0 * u.grad[0] * v.grad[0] + u.value * v.hess[0],
                u.hess[1] * v.value
                    + u.grad[0] * v.grad[1]
                    + u.grad[1] * v.grad[0]
                    + u.value * v.hess[1],
                u.hess[2] * v.value + 2.0 * u.grad[1] * v.grad[1] + u.value * v.hess[2],
            ],
        }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        Jet2 {
            value: self.value * c,
            grad: [self.grad[0] * c, self.grad[1] * c],
            hess: [self.hess[0] * c, self.hess[1] * c, self.hess[2] * c],
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X1,
    X2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Ln,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "ln" => Func::Ln,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Ln => "ln",
        }
    }
}

/// Parsed expression tree. Literals produced by the parser are never negative;
/// negation is always an explicit [`Expr::Neg`] node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    /// Fully parenthesized form; re-parsing it yields the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(Var::X1) => f.write_str("x1"),
            Expr::Var(Var::X2) => f.write_str("x2"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

pub fn parse(source: &str) -> Result<Expr> {
    if source.trim().is_empty() {
        return Err(Error::Syntax { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser { src: source.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat(b'^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            Some(_) => Err(self.syntax("expected a number, variable, function or '('")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let s = self.src;
        let mut i = self.pos;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        if i < s.len() && s[i] == b'.' {
            i += 1;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
            let mut j = i + 1;
            if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
                j += 1;
            }
            if j < s.len() && s[j].is_ascii_digit() {
                while j < s.len() && s[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = std::str::from_utf8(&s[start..i]).expect("ascii slice");
        let v: f64 = text
            .parse()
            .map_err(|_| Error::Syntax { offset: start, message: format!("malformed number '{text}'") })?;
        self.pos = i;
        Ok(Expr::Num(v))
    }

    fn ident(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        match name {
            "x1" => return Ok(Expr::Var(Var::X1)),
            "x2" => return Ok(Expr::Var(Var::X2)),
            _ => {}
        }
        let Some(func) = Func::from_name(name) else {
            return Err(Error::UnknownIdentifier { name: name.into(), offset: start });
        };
        if !self.eat(b'(') {
            return Err(self.syntax("expected '(' after function name"));
        }
        let mut args = Vec::new();
        if self.peek() != Some(b')') {
            loop {
                args.push(self.expr()?);
                if !self.eat(b',') {
                    break;
                }
            }
        }
        if !self.eat(b')') {
            return Err(self.syntax("expected ')'"));
        }
        if args.len() != 1 {
            return Err(Error::Arity { name: name.into(), expected: 1, found: args.len(), offset: start });
        }
        Ok(Expr::Call(func, Box::new(args.pop().expect("one argument"))))
    }
}

fn domain(e: &Expr, message: &str, value: f64) -> Error {
    Error::Domain { expr: e.to_string(), message: message.into(), value }
}

impl Expr {
    /// Plain value at a point.
    pub fn eval(&self, x1: f64, x2: f64) -> Result<f64> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::X1) => x1,
            Expr::Var(Var::X2) => x2,
            Expr::Neg(e) => -e.eval(x1, x2)?,
            Expr::Bin(op, a, b) => {
                let u = a.eval(x1, x2)?;
                let v = b.eval(x1, x2)?;
                match op {
                    BinOp::Add => u + v,
                    BinOp::Sub => u - v,
                    BinOp::Mul => u * v,
                    BinOp::Div => {
                        if v == 0.0 {
                            return Err(domain(b, "division by zero", v));
                        }
                        u / v
                    }
                    BinOp::Pow => {
                        if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 {
                            if u == 0.0 && v < 0.0 {
                                return Err(domain(a, "zero raised to a negative power", u));
                            }
                            u.powi(v as i32)
                        } else {
                            if u < 0.0 {
                                return Err(domain(a, "negative base with non-integer exponent", u));
                            }
                            u.powf(v)
                        }
                    }
                }
            }
            Expr::Call(func, a) => {
                let u = a.eval(x1, x2)?;
                match func {
                    Func::Exp => u.exp(),
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Sqrt => {
                        if u < 0.0 {
                            return Err(domain(a, "sqrt of negative argument", u));
                        }
                        u.sqrt()
                    }
                    Func::Ln => {
                        if u <= 0.0 {
                            return Err(domain(a, "ln of non-positive argument", u));
                        }
                        u.ln()
                    }
                }
            }
        })
    }

    /// Value, gradient and Hessian at a point.
    pub fn eval_jet2(&self, x1: f64, x2: f64) -> Result<Jet2> {
        Ok(match self {
            Expr::Num(v) => Jet2::constant(*v),
            Expr::Var(Var::X1) => Jet2::x1(x1),
            Expr::Var(Var::X2) => Jet2::x2(x2),
            Expr::Neg(e) => -e.eval_jet2(x1, x2)?,
            Expr::Bin(op, a, b) => {
                let u = a.eval_jet2(x1, x2)?;
                let v = b.eval_jet2(x1, x2)?;
                match op {
                    BinOp::Add => u + v,
                    BinOp::Sub => u - v,
                    BinOp::Mul => u * v,
                    BinOp::Div => {
                        if v.value == 0.0 {
                            return Err(domain(b, "division by zero", v.value));
                        }
                        u / v
                    }
                    BinOp::Pow => pow_jet(a, u, b, v)?,
                }
            }
            Expr::Call(func, a) => {
                let u = a.eval_jet2(x1, x2)?;
                match func {
                    Func::Exp => u.exp(),
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Sqrt => {
                        if u.value <= 0.0 {
                            return Err(domain(a, "sqrt needs a positive argument", u.value));
                        }
                        u.sqrt()
                    }
                    Func::Ln => {
                        if u.value <= 0.0 {
                            return Err(domain(a, "ln of non-positive argument", u.value));
                        }
                        u.ln()
                    }
                }
            }
        })
    }
}

fn pow_jet(a: &Expr, u: Jet2, b: &Expr, v: Jet2) -> Result<Jet2> {
    if v.is_constant() {
        let c = v.value;
        if c.fract() == 0.0 && c.abs() <= i32::MAX as f64 {
            let n = c as i32;
            if u.value == 0.0 && n < 0 {
                return Err(domain(a, "zero raised to a negative power", u.value));
            }
            return Ok(u.powi(n));
        }
        if u.value <= 0.0 {
            return Err(domain(a, "non-integer power needs a positive base", u.value));
        }
        return Ok(u.powf(c));
    }
    if u.value <= 0.0 {
        return Err(domain(b, "variable exponent needs a positive base", u.value));
    }
    Ok((v * u.ln()).exp())
}
