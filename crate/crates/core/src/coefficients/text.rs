//! Text form of ring elements.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr     := [sign] term (sign term)*
//! term     := factor ('*'? factor)*
//! factor   := integer ['/' integer] | variable ['^' ['-'] integer]
//! variable := q | q1 | q2
//! ```
//!
//! Rendering produces the same grammar with exponents ascending, e.g.
//! `1 - q + q^2`, `-2*q^-1 + 3`, `1 + q1 + q2 + 2*q1*q2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// One monomial `coeff * vars^exps` read from text.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTerm {
    pub coeff: BigRational,
    pub exps: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Num(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in `{s}`"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Vec<ParsedTerm>, Error> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let mut t = self.term()?;
            if sign < 0 {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.next() {
                None => break,
                Some(Token::Plus) => sign = 1,
                Some(Token::Minus) => sign = -1,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<ParsedTerm, Error> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0i64; self.vars.len()];
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(Token::Num(_)) => {
                    let Some(Token::Num(n)) = self.next() else {
                        unreachable!()
                    };
                    let mut value = BigRational::from_integer(n);
                    if self.peek() == Some(&Token::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Token::Num(d)) if !d.is_zero() => {
                                value /= BigRational::from_integer(d);
                            }
                            _ => return Err(self.err("expected nonzero denominator")),
                        }
                    }
                    coeff *= value;
                }
                Some(Token::Ident(_)) => {
                    let Some(Token::Ident(name)) = self.next() else {
                        unreachable!()
                    };
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                    let mut e = 1i64;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        let neg = if self.peek() == Some(&Token::Minus) {
                            self.pos += 1;
                            true
                        } else {
                            false
                        };
                        match self.next() {
                            Some(Token::Num(n)) => {
                                e = i64::try_from(n).map_err(|_| self.err("exponent too large"))?;
                                if neg {
                                    e = -e;
                                }
                            }
                            _ => return Err(self.err("expected exponent")),
                        }
                    }
                    exps[idx] += e;
                }
                _ => {
                    if factors == 0 {
                        return Err(self.err("expected a term"));
                    }
                    return Ok(ParsedTerm { coeff, exps });
                }
            }
            factors += 1;
            if self.peek() == Some(&Token::Star) {
                self.pos += 1;
                if !matches!(self.peek(), Some(Token::Num(_)) | Some(Token::Ident(_))) {
                    return Err(self.err("dangling `*`"));
                }
            }
        }
    }
}

/// Parse a polynomial expression in the given variables. Terms are not merged.
pub fn parse_terms(s: &str, vars: &[&str]) -> Result<Vec<ParsedTerm>, Error> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
        src: s,
    };
    p.expr()
}

/// Parse a rational constant (an expression without variables).
pub(crate) fn parse_constant(s: &str) -> Result<BigRational, Error> {
    let terms = parse_terms(s, &[])?;
    Ok(terms
        .into_iter()
        .fold(BigRational::zero(), |acc, t| acc + t.coeff))
}

pub(crate) fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Join `(coefficient text, monomial text)` pairs into a signed sum.
pub(crate) fn render_sum(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let (negative, mag) = match c.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, c.as_str()),
        };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == "1" {
            mono.clone()
        } else {
            format!("{mag}*{mono}")
        };
        match (i, negative) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

pub(crate) fn render_power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}
