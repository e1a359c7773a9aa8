//! Integer hulls with respect to the parameter dimensions.
//!
//! The hull is taken over the integer points of a bounded parameter box:
//! `conv( U_{v integer in box} P ∩ {params = v} )`. Clock and cost coordinates
//! of each slice are kept as they are. For firing domains of state classes
//! this is the integer hull proper, because every slice at an integer
//! parameter valuation already has integer vertices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::dd::Cone;
use crate::linear::{Constraint, LinearExpr};
use crate::polyhedron::{Optimum, Polyhedron};
use crate::rational::{int, Rational};
use crate::space::Role;
use crate::GeometryError;

/// Inclusive integer bounds per parameter name.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntegerBox {
    bounds: BTreeMap<String, (i64, i64)>,
}

impl IntegerBox {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, lo: i64, hi: i64) -> Self {
        self.insert(name, lo, hi);
        self
    }

    pub fn insert(&mut self, name: impl Into<String>, lo: i64, hi: i64) {
        self.bounds.insert(name.into(), (lo, hi));
    }

    pub fn get(&self, name: &str) -> Option<(i64, i64)> {
        self.bounds.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64, i64)> {
        self.bounds
            .iter()
            .map(|(k, &(lo, hi))| (k.as_str(), lo, hi))
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    /// Every integer point of the box restricted to `names`, in lexicographic
    /// order.
    pub fn points(&self, names: &[&str]) -> Result<Vec<Vec<i64>>, GeometryError> {
        let ranges = names
            .iter()
            .map(|n| {
                self.get(n)
                    .ok_or_else(|| GeometryError::UnboundedBox(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(enumerate(&ranges))
    }
}

impl fmt::Display for IntegerBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, lo, hi)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{name}={lo}..{hi}")?;
        }
        Ok(())
    }
}

fn enumerate(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn ceil(r: &Rational) -> i64 {
    let q = r.numer().div_ceil(r.denom());
    i64::try_from(q).unwrap_or(i64::MAX)
}

fn floor(r: &Rational) -> i64 {
    let q = r.numer().div_floor(r.denom());
    i64::try_from(q).unwrap_or(i64::MIN)
}

impl Polyhedron {
    /// Integer hull over the parameter-role variables inside `bx`.
    ///
    /// Every parameter of the space must be bounded by `bx`; otherwise the
    /// enumeration would not be finite and the call is refused.
    pub fn integer_hull(&self, bx: &IntegerBox) -> Result<Polyhedron, GeometryError> {
        let params = self.space().indices_with_role(Role::Parameter);
        let names: Vec<String> = params
            .iter()
            .map(|&i| self.space().vars()[i].name.clone())
            .collect();
        let mut ranges = Vec::with_capacity(names.len());
        for name in &names {
            let (lo, hi) = bx
                .get(name)
                .ok_or_else(|| GeometryError::UnboundedBox(name.clone()))?;
            ranges.push((lo, hi));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        // Tighten the box to the parameter range actually present.
        for (name, range) in names.iter().zip(ranges.iter_mut()) {
            let e = LinearExpr::var(name.as_str());
            if let Optimum::Finite(lo) = self.minimize(&e)? {
                range.0 = range.0.max(ceil(&lo));
            }
            if let Optimum::Finite(hi) = self.maximize(&e)? {
                range.1 = range.1.min(floor(&hi));
            }
            if range.0 > range.1 {
                return Ok(Polyhedron::empty(self.space().clone()));
            }
        }
        let mut pooled = Cone::default();
        for point in enumerate(&ranges) {
            let fix: Vec<Constraint> = names
                .iter()
                .zip(&point)
                .map(|(n, &v)| Constraint::eq(n.as_str(), int(v)))
                .collect();
            let slice = self.with_constraints(&fix)?;
            if let Some(cone) = slice.pooled_cone() {
                pooled.rays.extend(cone.rays.iter().cloned());
                pooled.lines.extend(cone.lines.iter().cloned());
            }
        }
        pooled.rays.sort();
        pooled.rays.dedup();
        Ok(Polyhedron::from_pooled(self.space().clone(), &pooled))
    }

    /// True when every vertex has integer coordinates.
    pub fn has_integer_vertices(&self) -> Result<bool, GeometryError> {
        let gens = self.generators()?;
        Ok(gens
            .vertices
            .iter()
            .all(|v| v.iter().all(|x| x.denom() == &BigInt::from(1))))
    }
}
