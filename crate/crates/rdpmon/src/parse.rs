//! Text syntax for polynomials over truncated π-adic scalars.
//!
//! Accepted: integer literals, `pi`, the variables `x`, `y`, `z`, `t1`,
//! `t2`, …, the operators `+ - * ^`, parentheses, and digit literals
//! `[d0,d1,…]@v` standing for `π^v (d0 + d1 π + …)`. The output of
//! `MultiPoly`'s `Display` parses back to the same polynomial.

use std::fmt;

use rdpmon_core::poly::{xyz, MultiPoly};
use rdpmon_core::scalar::{PadicScalar, ScalarConfig};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into `input`.
    pub position: usize,
    pub message: String,
    pub input: String,
}

impl ParseError {
    /// The input line followed by a caret under the offending character.
    pub fn caret(&self) -> String {
        format!("{}\n{}^", self.input, " ".repeat(self.position))
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}\n{}", self.position + 1, self.message, self.caret())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    At,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::At => f.write_str("`@`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let err = |position: usize, message: String| ParseError { position, message, input: input.to_string() };
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse::<u64>().map_err(|_| err(start, format!("integer literal {text} is too large")))?;
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '@' => Tok::At,
            other => return Err(err(start, format!("unexpected character `{other}`"))),
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

/// Index of a parameter variable `t<k>` with `k ≥ 1` and no leading zero.
fn parameter_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('t')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Variable list for an input: `x, y, z`, then `t1..tk` up to the largest
/// parameter index that occurs.
fn variables(tokens: &[(usize, Tok)], input: &str) -> Result<Vec<String>, ParseError> {
    let mut max_t = 0;
    for (pos, tok) in tokens {
        if let Tok::Ident(name) = tok {
            match name.as_str() {
                "x" | "y" | "z" | "pi" => {}
                other => match parameter_index(other) {
                    Some(k) => max_t = max_t.max(k),
                    None => {
                        return Err(ParseError {
                            position: *pos,
                            message: format!("unknown identifier `{other}`"),
                            input: input.to_string(),
                        })
                    }
                },
            }
        }
    }
    let mut vars = xyz();
    vars.extend((1..=max_t).map(|k| format!("t{k}")));
    Ok(vars)
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<(usize, Tok)>,
    at: usize,
    vars: Vec<String>,
    cfg: ScalarConfig,
}

type Poly = MultiPoly<PadicScalar>;

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].1
    }

    fn position(&self) -> usize {
        self.tokens[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].1.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError { position, message: message.into(), input: self.input.to_string() }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_at(self.position(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_int(&mut self, expected: &str) -> Result<(usize, u64), ParseError> {
        let pos = self.position();
        match self.peek() {
            Tok::Int(n) => {
                let n = *n;
                self.bump();
                Ok((pos, n))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn constant(&self, c: PadicScalar) -> Poly {
        MultiPoly::constant(self.vars.clone(), c)
    }

    fn combine(&self, pos: usize, r: rdpmon_core::Result<Poly>) -> Result<Poly, ParseError> {
        r.map_err(|e| self.error_at(pos, e.to_string()))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            let pos = self.position();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.combine(pos, acc.add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.combine(pos, acc.sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.position();
            self.bump();
            let rhs = self.factor()?;
            acc = self.combine(pos, acc.mul(&rhs))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.factor()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (pos, e) = self.expect_int("an exponent")?;
        if e > MAX_EXPONENT as u64 {
            return Err(self.error_at(pos, format!("exponent {e} exceeds {MAX_EXPONENT}")));
        }
        Ok(base.pow(e as u32))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.position();
        if !matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen | Tok::LBracket) {
            return Err(self.unexpected("a number, `pi`, a variable, `(` or `[`"));
        }
        match self.bump() {
            Tok::Int(n) => {
                let n =
                    i64::try_from(n).map_err(|_| self.error_at(pos, format!("integer literal {n} is too large")))?;
                Ok(self.constant(PadicScalar::from_int(self.cfg, n)))
            }
            Tok::Ident(name) if name == "pi" => Ok(self.constant(PadicScalar::pi(self.cfg))),
            Tok::Ident(name) => {
                MultiPoly::var(self.vars.clone(), self.cfg, &name).map_err(|e| self.error_at(pos, e.to_string()))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.digit_literal(pos),
        }
    }

    fn digit_literal(&mut self, pos: usize) -> Result<Poly, ParseError> {
        let mut digits = vec![self.expect_int("a digit")?.1];
        while *self.peek() == Tok::Comma {
            self.bump();
            digits.push(self.expect_int("a digit")?.1);
        }
        self.expect(Tok::RBracket, "`,` or `]`")?;
        self.expect(Tok::At, "`@` and a valuation")?;
        let (vpos, v) = self.expect_int("a valuation")?;
        let v = u32::try_from(v).map_err(|_| self.error_at(vpos, "valuation is too large"))?;
        let c = PadicScalar::from_digits(self.cfg, &digits, v).map_err(|e| self.error_at(pos, e.to_string()))?;
        Ok(self.constant(c))
    }
}

/// Parses `input` into a polynomial in `x, y, z, t1, …` over `cfg`.
pub fn parse_poly(input: &str, cfg: ScalarConfig) -> Result<MultiPoly<PadicScalar>, ParseError> {
    let tokens = tokenize(input)?;
    let vars = variables(&tokens, input)?;
    let mut p = Parser { input, tokens, at: 0, vars, cfg };
    if *p.peek() == Tok::End {
        return Err(p.error_at(0, "empty input"));
    }
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(poly)
}
