//! Sparse linear expressions and non-strict constraints over named variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// `sum(coeff * var) + constant`; a missing variable has coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearExpr {
    coeffs: BTreeMap<String, Rational>,
    constant: Rational,
}

impl LinearExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self::term(int(1), name)
    }

    pub fn term(coeff: Rational, name: impl Into<String>) -> Self {
        let mut e = Self::zero();
        e.add_term(coeff, name);
        e
    }

    pub fn constant(value: Rational) -> Self {
        LinearExpr {
            coeffs: BTreeMap::new(),
            constant: value,
        }
    }

    pub fn add_term(&mut self, coeff: Rational, name: impl Into<String>) {
        let name = name.into();
        let entry = self
            .coeffs
            .entry(name.clone())
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&name);
        }
    }

    pub fn add_constant(&mut self, value: &Rational) {
        self.constant += value;
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.coeffs
            .get(name)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Rational> {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    /// Exact evaluation; variables absent from `point` are an error.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Option<Rational> {
        let mut acc = self.constant.clone();
        for (name, c) in &self.coeffs {
            acc += c * point.get(name)?;
        }
        Some(acc)
    }
}

impl From<i64> for LinearExpr {
    fn from(value: i64) -> Self {
        LinearExpr::constant(int(value))
    }
}

impl From<Rational> for LinearExpr {
    fn from(value: Rational) -> Self {
        LinearExpr::constant(value)
    }
}

impl From<&str> for LinearExpr {
    fn from(name: &str) -> Self {
        LinearExpr::var(name)
    }
}

impl Add for LinearExpr {
    type Output = LinearExpr;
    fn add(mut self, rhs: LinearExpr) -> LinearExpr {
        for (name, c) in rhs.coeffs {
            self.add_term(c, name);
        }
        self.constant += rhs.constant;
        self
    }
}

impl Neg for LinearExpr {
    type Output = LinearExpr;
    fn neg(self) -> LinearExpr {
        LinearExpr {
            coeffs: self.coeffs.into_iter().map(|(k, v)| (k, -v)).collect(),
            constant: -self.constant,
        }
    }
}

impl Sub for LinearExpr {
    type Output = LinearExpr;
    fn sub(self, rhs: LinearExpr) -> LinearExpr {
        self + (-rhs)
    }
}

impl Mul<&Rational> for LinearExpr {
    type Output = LinearExpr;
    fn mul(self, k: &Rational) -> LinearExpr {
        if k.is_zero() {
            return LinearExpr::zero();
        }
        LinearExpr {
            coeffs: self.coeffs.into_iter().map(|(n, c)| (n, c * k)).collect(),
            constant: self.constant * k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `expr <= 0`
    LessEq,
    /// `expr = 0`
    Eq,
}

/// `expr <= 0` or `expr = 0`. Strict constraints are not representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub expr: LinearExpr,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(expr: LinearExpr, relation: Relation) -> Self {
        Constraint { expr, relation }
    }

    /// `lhs <= rhs`
    pub fn le(lhs: impl Into<LinearExpr>, rhs: impl Into<LinearExpr>) -> Self {
        Self::new(lhs.into() - rhs.into(), Relation::LessEq)
    }

    /// `lhs >= rhs`
    pub fn ge(lhs: impl Into<LinearExpr>, rhs: impl Into<LinearExpr>) -> Self {
        Self::new(rhs.into() - lhs.into(), Relation::LessEq)
    }

    /// `lhs = rhs`
    pub fn eq(lhs: impl Into<LinearExpr>, rhs: impl Into<LinearExpr>) -> Self {
        Self::new(lhs.into() - rhs.into(), Relation::Eq)
    }

    pub fn is_satisfied_by(&self, point: &BTreeMap<String, Rational>) -> Option<bool> {
        let v = self.expr.evaluate(point)?;
        Some(match self.relation {
            Relation::LessEq => !v.is_positive(),
            Relation::Eq => v.is_zero(),
        })
    }
}

fn write_side(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Rational, &str)],
    constant: &Rational,
) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if c.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{c}*{name}")?;
        }
    }
    if !constant.is_zero() || first {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{constant}")?;
    }
    Ok(())
}

impl fmt::Display for Constraint {
    /// Positive terms on the left, negative terms moved right, so that
    /// `2 - a <= 0` prints as `2 <= a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (name, c) in &self.expr.coeffs {
            if c.is_positive() {
                left.push((c.clone(), name.as_str()));
            } else {
                right.push((-c, name.as_str()));
            }
        }
        let k = &self.expr.constant;
        let (lc, rc) = if k.is_positive() {
            (k.clone(), Rational::zero())
        } else {
            (Rational::zero(), -k)
        };
        // Keep variables on the left when one side would be a bare constant.
        if left.is_empty() && !right.is_empty() && self.relation == Relation::Eq {
            write_side(f, &right, &rc)?;
            write!(f, " = ")?;
            return write_side(f, &left, &lc);
        }
        write_side(f, &left, &lc)?;
        write!(
            f,
            " {} ",
            match self.relation {
                Relation::LessEq => "<=",
                Relation::Eq => "=",
            }
        )?;
        write_side(f, &right, &rc)
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            if self.constant.is_negative() {
                write!(f, " - {}", -&self.constant)?;
            } else {
                write!(f, " + {}", self.constant)?;
            }
        }
        Ok(())
    }
}
