//! Text syntax for polynomials, rational functions, symmetric forms and
//! plane maps.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' nat)?
//! atom   := nat | x | y | dx | dy | '(' expr ')'
//! map    := 'map' '(' expr ',' expr ')'
//! ```
//!
//! Forms must be homogeneous in `(dx, dy)`. Polynomial denominators of a
//! form are cleared, which does not change the web it defines.

use std::collections::BTreeMap;

use num::BigInt;

use crate::error::{Result, WebError};
use crate::exactalg::{gcd, Poly2, RatFunc2, Rational};
use crate::planemaps::PlaneMap;
use crate::symforms::SymForm;

/// Result of [`parse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Poly(Poly2),
    RatFunc(RatFunc2),
    Form(SymForm),
    Map(PlaneMap),
}

/// Coordinate names accepted by the parser; `dx`-style differentials are
/// `d` followed by the name.
#[derive(Clone, Copy, Debug)]
pub struct Vars<'a> {
    pub first: &'a str,
    pub second: &'a str,
}

pub const XY: Vars<'static> = Vars { first: "x", second: "y" };

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(WebError::Syntax { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

/// Sum of `coeff * dx^i dy^j` with rational-function coefficients.
#[derive(Clone, Debug)]
struct Value(BTreeMap<(u32, u32), RatFunc2>);

impl Value {
    fn scalar(r: RatFunc2) -> Self {
        Value::diff(r, 0, 0)
    }

    fn diff(r: RatFunc2, i: u32, j: u32) -> Self {
        let mut m = BTreeMap::new();
        if !r.is_zero() {
            m.insert((i, j), r);
        }
        Value(m)
    }

    fn add(mut self, other: Value) -> Value {
        for (key, c) in other.0 {
            let sum = match self.0.remove(&key) {
                Some(a) => &a + &c,
                None => c,
            };
            if !sum.is_zero() {
                self.0.insert(key, sum);
            }
        }
        self
    }

    fn neg(self) -> Value {
        Value(self.0.into_iter().map(|(k, c)| (k, -&c)).collect())
    }

    fn mul(&self, other: &Value) -> Value {
        let mut out = Value(BTreeMap::new());
        for ((i, j), a) in &self.0 {
            for ((p, q), b) in &other.0 {
                out = out.add(Value::diff(a * b, i + p, j + q));
            }
        }
        out
    }

    fn as_scalar(&self) -> Option<RatFunc2> {
        match self.0.len() {
            0 => Some(RatFunc2::zero()),
            1 => self.0.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn has_differentials(&self) -> bool {
        self.0.keys().any(|&(i, j)| i + j > 0)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: Vars<'a>,
    allow_diff: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: Vars<'a>) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len(), vars, allow_diff: true })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(WebError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.factor()?;
                let Some(d) = d.as_scalar() else {
                    return Err(WebError::Syntax { pos: at, msg: "division by a differential".into() });
                };
                if d.is_zero() {
                    return Err(WebError::Syntax { pos: at, msg: "division by zero".into() });
                }
                let inv = d.recip().expect("nonzero");
                acc = Value(acc.0.into_iter().map(|(k, c)| (k, &c * &inv)).collect());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(&n).or_else(|_| self.err("exponent too large"))?;
                    let mut acc = Value::scalar(RatFunc2::one());
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    Ok(acc)
                }
                _ => self.err("expected a natural exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let at = self.offset();
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(Value::scalar(RatFunc2::constant(Rational::from_integer(n))))
            }
            Some((_, Tok::Sym('('))) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some((_, Tok::Ident(name))) => {
                self.pos += 1;
                let (dfirst, dsecond) = (format!("d{}", self.vars.first), format!("d{}", self.vars.second));
                if name == self.vars.first {
                    Ok(Value::scalar(RatFunc2::x()))
                } else if name == self.vars.second {
                    Ok(Value::scalar(RatFunc2::y()))
                } else if name == dfirst || name == dsecond {
                    if !self.allow_diff {
                        return Err(WebError::DifferentialInMap);
                    }
                    let one = RatFunc2::one();
                    Ok(if name == dfirst { Value::diff(one, 1, 0) } else { Value::diff(one, 0, 1) })
                } else {
                    Err(WebError::Syntax { pos: at, msg: format!("unknown identifier '{name}'") })
                }
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }

    fn map(&mut self) -> Result<PlaneMap> {
        self.allow_diff = false;
        self.expect('(')?;
        let a = self.expr()?;
        self.expect(',')?;
        let b = self.expr()?;
        self.expect(')')?;
        let (a, b) = (a.as_scalar().expect("no differentials"), b.as_scalar().expect("no differentials"));
        PlaneMap::new(a, b)
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

fn to_form(v: Value) -> Result<SymForm> {
    let orders: std::collections::BTreeSet<u32> = v.0.keys().map(|(i, j)| i + j).collect();
    if orders.len() > 1 {
        return Err(WebError::MixedFormOrders);
    }
    let k = *orders.iter().next().ok_or(WebError::ZeroForm)? as usize;
    let mut den = Poly2::one();
    for c in v.0.values() {
        let g = gcd(&den, c.denom());
        den = &den.exact_div(&g).expect("gcd divides") * c.denom();
    }
    let mut coeffs = vec![Poly2::zero(); k + 1];
    for (&(i, _), c) in &v.0 {
        coeffs[i as usize] = c.numer() * &den.exact_div(c.denom()).expect("common denominator");
    }
    SymForm::new(coeffs)
}

/// Parse with custom coordinate names.
pub fn parse_with(text: &str, vars: Vars<'_>) -> Result<Parsed> {
    let mut p = Parser::new(text, vars)?;
    if let Some(Tok::Ident(name)) = p.peek() {
        if name == "map" {
            p.pos += 1;
            let m = p.map()?;
            p.finish()?;
            return Ok(Parsed::Map(m));
        }
    }
    let v = p.expr()?;
    p.finish()?;
    if v.has_differentials() {
        return Ok(Parsed::Form(to_form(v)?));
    }
    let r = v.as_scalar().expect("no differentials");
    Ok(if r.is_polynomial() { Parsed::Poly(r.numer().clone()) } else { Parsed::RatFunc(r) })
}

pub fn parse(text: &str) -> Result<Parsed> {
    parse_with(text, XY)
}

pub fn parse_poly(text: &str) -> Result<Poly2> {
    match parse(text)? {
        Parsed::Poly(p) => Ok(p),
        _ => Err(WebError::Syntax { pos: 0, msg: "expected a polynomial".into() }),
    }
}

pub fn parse_ratfunc_with(text: &str, vars: Vars<'_>) -> Result<RatFunc2> {
    match parse_with(text, vars)? {
        Parsed::Poly(p) => Ok(p.into()),
        Parsed::RatFunc(r) => Ok(r),
        _ => Err(WebError::Syntax { pos: 0, msg: "expected a rational function".into() }),
    }
}

pub fn parse_ratfunc(text: &str) -> Result<RatFunc2> {
    parse_ratfunc_with(text, XY)
}

pub fn parse_form(text: &str) -> Result<SymForm> {
    match parse(text)? {
        Parsed::Form(f) => Ok(f),
        Parsed::Poly(p) if p.is_zero() => Err(WebError::ZeroForm),
        _ => Err(WebError::Syntax { pos: 0, msg: "expected a form in dx, dy".into() }),
    }
}

pub fn parse_map(text: &str) -> Result<PlaneMap> {
    match parse(text)? {
        Parsed::Map(m) => Ok(m),
        _ => Err(WebError::Syntax { pos: 0, msg: "expected map(EXPR, EXPR)".into() }),
    }
}

impl std::fmt::Display for Parsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parsed::Poly(p) => write!(f, "{p}"),
            Parsed::RatFunc(r) => write!(f, "{r}"),
            Parsed::Form(w) => write!(f, "{w}"),
            Parsed::Map(m) => write!(f, "{m}"),
        }
    }
}
