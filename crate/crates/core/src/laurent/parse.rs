//! Text syntax for Laurent polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'] power)*          juxtaposition multiplies
//! power  := atom ['^' ['-'] int]
//! atom   := int | 't' int | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted only on units (`±t^k`).

use std::fmt;

use num_bigint::BigInt;

use super::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    /// The offending input with a caret under the error position.
    pub fn caret(&self) -> String {
        format!("{}\n{}^", self.input, " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at column {}\n{}", self.message, self.position + 1, self.caret())
    }
}

impl std::error::Error for ParseError {}

/// Expression tree; the variable count is only known after a full scan.
enum Node {
    Int(BigInt),
    Var(usize),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, i32, usize),
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    max_var: usize,
}

/// Parses `text`; with `nvars = None` the ring is the smallest containing every
/// variable mentioned (at least one variable).
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<LaurentPoly, ParseError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0, max_var: 0 };
    p.skip_ws();
    if p.pos == p.bytes.len() {
        return Err(p.error("empty polynomial"));
    }
    let node = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected character"));
    }
    let n = match nvars {
        Some(n) if p.max_var > n => {
            let at = text.find(&format!("t{}", p.max_var)).unwrap_or(0);
            return Err(ParseError {
                input: text.to_string(),
                position: at,
                message: format!("variable t{} exceeds ring with {} variables", p.max_var, n),
            });
        }
        Some(n) => n,
        None => p.max_var.max(1),
    };
    eval(&node, n, text)
}

fn eval(node: &Node, n: usize, text: &str) -> Result<LaurentPoly, ParseError> {
    Ok(match node {
        Node::Int(c) => LaurentPoly::constant(n, c.clone()),
        Node::Var(v) => LaurentPoly::var(n, v - 1),
        Node::Add(a, b) => eval(a, n, text)? + eval(b, n, text)?,
        Node::Sub(a, b) => eval(a, n, text)? - eval(b, n, text)?,
        Node::Mul(a, b) => eval(a, n, text)? * eval(b, n, text)?,
        Node::Neg(a) => -eval(a, n, text)?,
        Node::Pow(a, k, at) => {
            let base = eval(a, n, text)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                match base.as_unit() {
                    Some((sign, m)) => {
                        let s = if k % 2 == 0 { 1 } else { sign as i64 };
                        LaurentPoly::term(m.pow(*k), s)
                    }
                    None => {
                        return Err(ParseError {
                            input: text.to_string(),
                            position: *at,
                            message: "negative exponent on a non-unit".into(),
                        })
                    }
                }
            }
        }
    })
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError { input: self.text.to_string(), position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Node::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Node::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Node::Mul(Box::new(acc), Box::new(self.power()?));
                }
                Some(b'(') | Some(b't') | Some(b'0'..=b'9') => {
                    acc = Node::Mul(Box::new(acc), Box::new(self.power()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.uint()?;
            let k = i32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(Node::Pow(Box::new(base), if neg { -k } else { k }, at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                if !self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index after 't'"));
                }
                let start = self.pos;
                let idx = self.uint()?;
                if idx == 0 {
                    self.pos = start;
                    return Err(self.error("variables are numbered from t1"));
                }
                let idx = idx as usize;
                self.max_var = self.max_var.max(idx);
                Ok(Node::Var(idx))
            }
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let c: BigInt = self.text[start..self.pos].parse().expect("digits");
                Ok(Node::Int(c))
            }
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.text[start..self.pos].parse().map_err(|_| {
            let mut e = self.error("integer out of range");
            e.position = start;
            e
        })
    }
}
