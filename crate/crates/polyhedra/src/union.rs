//! Finite unions of closed polyhedra.

use num_traits::Signed;

use crate::linear::{Constraint, LinearExpr, Relation};
use crate::polyhedron::{Optimum, Polyhedron};
use crate::GeometryError;

/// `p ⊆ cover[0] ∪ … ∪ cover[k]`.
///
/// Splits `p \ cover[0]` into closed pieces `p ∩ {h_1 <= 0, …, h_{j-1} <= 0,
/// h_j >= 0}` for the constraints `h_j` of `cover[0]` and recurses on the
/// remaining members. Using closures of the pieces is exact because a
/// finite union of closed sets is closed.
pub fn union_covers(cover: &[Polyhedron], p: &Polyhedron) -> Result<bool, GeometryError> {
    if p.is_empty() {
        return Ok(true);
    }
    let Some((first, rest)) = cover.split_first() else {
        return Ok(false);
    };
    if p.is_subset_of(first)? {
        return Ok(true);
    }
    let mut halfspaces: Vec<LinearExpr> = Vec::new();
    for c in first.constraints() {
        match c.relation {
            Relation::LessEq => halfspaces.push(c.expr),
            Relation::Eq => {
                halfspaces.push(c.expr.clone());
                halfspaces.push(-c.expr);
            }
        }
    }
    let mut inside = p.clone();
    for h in halfspaces {
        if inside.is_empty() {
            break;
        }
        let violated = match inside.maximize(&h)? {
            Optimum::Unbounded => true,
            Optimum::Finite(v) => v.is_positive(),
        };
        if violated {
            let piece = inside.with_constraint(Constraint::new(-h.clone(), Relation::LessEq))?;
            if !union_covers(rest, &piece)? {
                return Ok(false);
            }
        }
        inside = inside.with_constraint(Constraint::new(h, Relation::LessEq))?;
    }
    Ok(true)
}

/// Set equality of two finite unions.
pub fn unions_equal(a: &[Polyhedron], b: &[Polyhedron]) -> Result<bool, GeometryError> {
    for p in a {
        if !union_covers(b, p)? {
            return Ok(false);
        }
    }
    for q in b {
        if !union_covers(a, q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a point in a union.
pub fn union_contains(
    members: &[Polyhedron],
    point: &[crate::Rational],
) -> Result<bool, GeometryError> {
    for m in members {
        if m.contains_point(point)? {
            return Ok(true);
        }
    }
    Ok(false)
}
