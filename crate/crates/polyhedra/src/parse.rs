//! Text syntax for constraint lists: `0 <= t1, 2 - a <= t1 <= 5 - a, c = 2 + 3a`.
//!
//! Terms are `k`, `x`, `k x`, `k*x` with `k` an integer, decimal or `p/q`.
//! Comparison chains expand into one constraint per adjacent pair.

use std::fmt;

use crate::linear::{Constraint, LinearExpr};
use crate::rational::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Le,
    Ge,
    Eq,
    Comma,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |offset: usize, message: String| ParseError { offset, message };
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())]
            .iter()
            .map(|p| p.1)
            .collect();
        match two.as_str() {
            "<=" => {
                out.push((off, Tok::Le));
                i += 2;
                continue;
            }
            ">=" => {
                out.push((off, Tok::Ge));
                i += 2;
                continue;
            }
            "==" => {
                out.push((off, Tok::Eq));
                i += 2;
                continue;
            }
            _ => {}
        }
        match c {
            '+' => out.push((off, Tok::Plus)),
            '-' => out.push((off, Tok::Minus)),
            '*' => out.push((off, Tok::Star)),
            '=' => out.push((off, Tok::Eq)),
            ',' => out.push((off, Tok::Comma)),
            '<' | '>' => {
                return Err(err(off, "strict comparisons are not supported".into()));
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].1.is_ascii_digit() || chars[i].1 == '.' || chars[i].1 == '/')
                {
                    i += 1;
                }
                let lexeme: String = chars[start..i].iter().map(|p| p.1).collect();
                let value = parse_rational(&lexeme)
                    .ok_or_else(|| err(off, format!("bad number `{lexeme}`")))?;
                out.push((off, Tok::Num(value)));
                continue;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                let lexeme: String = chars[start..i].iter().map(|p| p.1).collect();
                out.push((off, Tok::Ident(lexeme)));
                continue;
            }
            other => return Err(err(off, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<LinearExpr, ParseError> {
        let mut acc = LinearExpr::zero();
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            negate = true;
            self.pos += 1;
        } else if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        loop {
            let term = self.term()?;
            acc = if negate { acc - term } else { acc + term };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LinearExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                }
                if let Some(Tok::Ident(name)) = self.peek().cloned() {
                    self.pos += 1;
                    Ok(LinearExpr::term(k, name))
                } else if self.toks.get(self.pos - 1).map(|t| &t.1) == Some(&Tok::Star) {
                    self.fail("expected a variable after `*`")
                } else {
                    Ok(LinearExpr::constant(k))
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(LinearExpr::var(name))
            }
            _ => self.fail("expected a number or a variable"),
        }
    }

    fn chain(&mut self) -> Result<Vec<Constraint>, ParseError> {
        let mut lhs = self.expr()?;
        let mut out = Vec::new();
        while let Some(op @ (Tok::Le | Tok::Ge | Tok::Eq)) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.expr()?;
            out.push(match op {
                Tok::Le => Constraint::le(lhs.clone(), rhs.clone()),
                Tok::Ge => Constraint::ge(lhs.clone(), rhs.clone()),
                _ => Constraint::eq(lhs.clone(), rhs.clone()),
            });
            lhs = rhs;
        }
        if out.is_empty() {
            return self.fail("expected `<=`, `>=` or `=`");
        }
        Ok(out)
    }
}

pub fn parse_constraints(text: &str) -> Result<Vec<Constraint>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let mut out = Vec::new();
    if p.toks.is_empty() {
        return Ok(out);
    }
    loop {
        out.extend(p.chain()?);
        match p.peek() {
            None => return Ok(out),
            Some(Tok::Comma) => p.pos += 1,
            Some(_) => return p.fail("expected `,` or end of input"),
        }
    }
}
