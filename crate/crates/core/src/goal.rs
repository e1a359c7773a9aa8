//! Goal predicates over markings: comparisons `place op n` joined by `and`
//! and `or` (`and` binds tighter).

use std::fmt;

use thiserror::Error;

use crate::net::{Marking, Net};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ge,
    Le,
}

impl fmt::Display for Cmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cmp::Eq => "==",
            Cmp::Ge => ">=",
            Cmp::Le => "<=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub place: usize,
    pub cmp: Cmp,
    pub value: u32,
}

impl Atom {
    pub fn holds(&self, m: &Marking) -> bool {
        let x = m.tokens(self.place);
        match self.cmp {
            Cmp::Eq => x == self.value,
            Cmp::Ge => x >= self.value,
            Cmp::Le => x <= self.value,
        }
    }
}

/// Disjunction of conjunctions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub disjuncts: Vec<Vec<Atom>>,
    text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("goal predicate, column {column}: {message}")]
pub struct GoalError {
    pub column: usize,
    pub message: String,
}

impl Goal {
    pub fn parse(text: &str, net: &Net) -> Result<Goal, GoalError> {
        let toks = tokenize(text)?;
        let mut disjuncts = Vec::new();
        let mut current = Vec::new();
        let mut i = 0;
        let fail = |col: usize, msg: String| GoalError {
            column: col,
            message: msg,
        };
        loop {
            let Some((col, Tok::Word(place))) = toks.get(i).cloned() else {
                let col = toks.get(i).map_or(text.len() + 1, |t| t.0);
                return Err(fail(col, "expected a place name".into()));
            };
            let place_idx = net
                .place_index(&place)
                .ok_or_else(|| fail(col, format!("unknown place `{place}`")))?;
            let Some((_, Tok::Op(cmp))) = toks.get(i + 1).cloned() else {
                let col = toks.get(i + 1).map_or(text.len() + 1, |t| t.0);
                return Err(fail(col, "expected one of `==`, `>=`, `<=`".into()));
            };
            let Some((_, Tok::Num(value))) = toks.get(i + 2).cloned() else {
                let col = toks.get(i + 2).map_or(text.len() + 1, |t| t.0);
                return Err(fail(col, "expected a natural number".into()));
            };
            current.push(Atom {
                place: place_idx,
                cmp,
                value,
            });
            i += 3;
            match toks.get(i) {
                None => break,
                Some((_, Tok::Word(w))) if w == "and" => {}
                Some((_, Tok::Word(w))) if w == "or" => {
                    disjuncts.push(std::mem::take(&mut current));
                }
                Some((col, _)) => {
                    return Err(fail(*col, "expected `and`, `or` or end of input".into()))
                }
            }
            i += 1;
        }
        disjuncts.push(current);
        Ok(Goal {
            disjuncts,
            text: text.trim().to_string(),
        })
    }

    pub fn holds(&self, m: &Marking) -> bool {
        self.disjuncts.iter().any(|c| c.iter().all(|a| a.holds(m)))
    }

    /// The source text, trimmed.
    pub fn text(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Op(Cmp),
    Num(u32),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, GoalError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Word(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| GoalError {
                column: col,
                message: format!("number `{s}` is too large"),
            })?;
            out.push((col, Tok::Num(n)));
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let cmp = match two.as_str() {
                "==" => Cmp::Eq,
                ">=" => Cmp::Ge,
                "<=" => Cmp::Le,
                _ => {
                    return Err(GoalError {
                        column: col,
                        message: format!("unexpected `{c}`; comparisons are `==`, `>=`, `<=`"),
                    })
                }
            };
            out.push((col, Tok::Op(cmp)));
            i += 2;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::example_net;

    #[test]
    fn parses_and_evaluates() {
        let net = example_net();
        let g = Goal::parse("p2>=1", &net).unwrap();
        assert!(g.holds(&Marking(vec![1, 0, 1])));
        assert!(!g.holds(&Marking(vec![1, 1, 0])));

        let g = Goal::parse("p0 == 0 and p1 <= 0 or p2 >= 1", &net).unwrap();
        assert_eq!(g.disjuncts.len(), 2);
        assert!(g.holds(&Marking(vec![0, 0, 0])));
        assert!(!g.holds(&Marking(vec![1, 0, 0])));
    }

    #[test]
    fn reports_columns() {
        let net = example_net();
        assert_eq!(Goal::parse("p2 > 1", &net).unwrap_err().column, 4);
        assert_eq!(Goal::parse("p9 >= 1", &net).unwrap_err().column, 1);
        assert_eq!(Goal::parse("p2 >= 1 and", &net).unwrap_err().column, 12);
        assert!(Goal::parse("", &net).is_err());
        assert!(Goal::parse("p2 >= 1 p1", &net).is_err());
    }
}
