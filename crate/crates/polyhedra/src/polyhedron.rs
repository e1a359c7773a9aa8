//! Closed convex polyhedra with exact rational data.
//!
//! Constraints are stored homogenised: a row `(a, b)` stands for
//! `a . x + b <= 0` (or `= 0`). Generators are the extreme rays of the cone
//! `{(x, t) | a . x + b t <= 0, t >= 0}`; rays with `t > 0` are vertices.
//! Both descriptions are computed lazily and at most once.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dd::{self, dot, Cone, HalfSpace, IVec};
use crate::linear::{Constraint, LinearExpr, Relation};
use crate::rational::{make_primitive, primitive_from_rationals, Rational};
use crate::space::{Variable, VariableSpace};
use crate::GeometryError;

/// Result of minimising a linear objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Finite(Rational),
    Unbounded,
}

impl Optimum {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Optimum::Finite(v) => Some(v),
            Optimum::Unbounded => None,
        }
    }
}

/// Vertices, extreme rays and a lineality basis of a non-empty polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Generators {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lines: Vec<Vec<Rational>>,
}

#[derive(Clone)]
pub struct Polyhedron {
    space: Arc<VariableSpace>,
    rows: Vec<HalfSpace>,
    cone: OnceLock<Option<Cone>>,
    minimal: OnceLock<Vec<HalfSpace>>,
}

fn normalize_row(mut h: HalfSpace) -> Option<HalfSpace> {
    make_primitive(&mut h.normal);
    let n = h.normal.len();
    if h.normal[..n - 1].iter().all(Zero::is_zero) {
        let b = &h.normal[n - 1];
        let trivially_true = if h.equality {
            b.is_zero()
        } else {
            !b.is_positive()
        };
        if trivially_true {
            return None;
        }
        // Canonical contradiction `1 <= 0`.
        let mut normal = vec![BigInt::zero(); n];
        normal[n - 1] = BigInt::from(1);
        return Some(HalfSpace {
            normal,
            equality: false,
        });
    }
    if h.equality {
        if let Some(first) = h.normal.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in h.normal.iter_mut() {
                    *x = -&*x;
                }
            }
        }
    }
    Some(h)
}

fn dedup_rows(rows: Vec<HalfSpace>) -> Vec<HalfSpace> {
    let mut out: Vec<HalfSpace> = Vec::with_capacity(rows.len());
    for r in rows.into_iter().filter_map(normalize_row) {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn rational_dot(c: &[Rational], v: &[BigInt]) -> Rational {
    c.iter()
        .zip(v)
        .map(|(a, b)| a * Rational::from_integer(b.clone()))
        .fold(Rational::zero(), |acc, x| acc + x)
}

impl Polyhedron {
    fn from_rows(space: Arc<VariableSpace>, rows: Vec<HalfSpace>) -> Self {
        debug_assert!(rows.iter().all(|r| r.normal.len() == space.len() + 1));
        Polyhedron {
            space,
            rows: dedup_rows(rows),
            cone: OnceLock::new(),
            minimal: OnceLock::new(),
        }
    }

    fn from_cone(space: Arc<VariableSpace>, cone: &Cone) -> Self {
        let n = space.len();
        if !cone.rays.iter().any(|r| r[n].is_positive()) {
            return Self::empty(space);
        }
        let rows = dd::constraints(n + 1, cone)
            .into_iter()
            .filter(|h| h.normal[..n].iter().any(|x| !x.is_zero()))
            .collect();
        Self::from_rows(space, rows)
    }

    /// The whole space.
    pub fn universe(space: impl Into<Arc<VariableSpace>>) -> Self {
        Self::from_rows(space.into(), Vec::new())
    }

    pub fn empty(space: impl Into<Arc<VariableSpace>>) -> Self {
        let space = space.into();
        let mut normal = vec![BigInt::zero(); space.len() + 1];
        normal[space.len()] = BigInt::from(1);
        Self::from_rows(
            space,
            vec![HalfSpace {
                normal,
                equality: false,
            }],
        )
    }

    pub fn from_constraints(
        space: impl Into<Arc<VariableSpace>>,
        constraints: &[Constraint],
    ) -> Result<Self, GeometryError> {
        let space = space.into();
        let rows = constraints
            .iter()
            .map(|c| constraint_row(&space, c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_rows(space, rows))
    }

    /// Builds `conv(vertices) + cone(rays) + span(lines)`; no vertex means empty.
    pub fn from_generators(
        space: impl Into<Arc<VariableSpace>>,
        gens: &Generators,
    ) -> Result<Self, GeometryError> {
        let space = space.into();
        let n = space.len();
        let check = |v: &Vec<Rational>| {
            if v.len() == n {
                Ok(())
            } else {
                Err(GeometryError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                })
            }
        };
        let mut cone = Cone::default();
        for v in &gens.vertices {
            check(v)?;
            let mut h: Vec<Rational> = v.clone();
            h.push(Rational::from_integer(BigInt::from(1)));
            cone.rays.push(primitive_from_rationals(&h));
        }
        for (src, dst) in [(&gens.rays, &mut cone.rays), (&gens.lines, &mut cone.lines)] {
            for r in src {
                check(r)?;
                let mut h = r.clone();
                h.push(Rational::zero());
                let iv = primitive_from_rationals(&h);
                if iv.iter().any(|x| !x.is_zero()) {
                    dst.push(iv);
                }
            }
        }
        Ok(Self::from_cone(space, &cone))
    }

    /// Parses a comma separated constraint list such as `0 <= x <= 2, y = x`.
    pub fn parse(space: impl Into<Arc<VariableSpace>>, text: &str) -> Result<Self, GeometryError> {
        let constraints = crate::parse::parse_constraints(text)
            .map_err(|e| GeometryError::Syntax(e.to_string()))?;
        Self::from_constraints(space, &constraints)
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    fn homogeneous_cone(&self) -> Option<&Cone> {
        self.cone
            .get_or_init(|| {
                let n = self.dim();
                let mut rows = self.rows.clone();
                let mut positivity = vec![BigInt::zero(); n + 1];
                positivity[n] = BigInt::from(-1);
                rows.push(HalfSpace {
                    normal: positivity,
                    equality: false,
                });
                let cone = dd::generators(n + 1, &rows);
                if cone.rays.iter().any(|r| r[n].is_positive()) {
                    Some(cone)
                } else {
                    None
                }
            })
            .as_ref()
    }

    fn minimal_rows(&self) -> &[HalfSpace] {
        self.minimal.get_or_init(|| match self.homogeneous_cone() {
            None => Self::empty(self.space.clone()).rows,
            Some(cone) => Self::from_cone(self.space.clone(), cone).rows,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.homogeneous_cone().is_none()
    }

    pub fn is_universe(&self) -> bool {
        self.minimal_rows().is_empty()
    }

    /// Irredundant constraint description (affine hull equalities first
    /// normalised, then facets).
    pub fn constraints(&self) -> Vec<Constraint> {
        self.minimal_rows()
            .iter()
            .map(|h| row_constraint(&self.space, h))
            .collect()
    }

    pub fn generators(&self) -> Result<Generators, GeometryError> {
        let cone = self.homogeneous_cone().ok_or(GeometryError::Empty)?;
        let n = self.dim();
        let to_rat = |v: &IVec, scale: &BigInt| -> Vec<Rational> {
            v[..n]
                .iter()
                .map(|x| Rational::new(x.clone(), scale.clone()))
                .collect()
        };
        let one = BigInt::from(1);
        let mut gens = Generators::default();
        for r in &cone.rays {
            if r[n].is_positive() {
                gens.vertices.push(to_rat(r, &r[n]));
            } else {
                gens.rays.push(to_rat(r, &one));
            }
        }
        gens.lines = cone.lines.iter().map(|l| to_rat(l, &one)).collect();
        Ok(gens)
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool, GeometryError> {
        if point.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: point.len(),
            });
        }
        let n = self.dim();
        Ok(self.rows.iter().all(|h| {
            let v =
                rational_dot(point, &h.normal[..n]) + Rational::from_integer(h.normal[n].clone());
            if h.equality {
                v.is_zero()
            } else {
                !v.is_positive()
            }
        }))
    }

    fn same_space(&self, other: &Polyhedron) -> Result<(), GeometryError> {
        if self.space == other.space || *self.space == *other.space {
            Ok(())
        } else {
            Err(GeometryError::SpaceMismatch)
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool, GeometryError> {
        self.same_space(other)?;
        let Some(cone) = self.homogeneous_cone() else {
            return Ok(true);
        };
        if other.is_empty() {
            return Ok(false);
        }
        Ok(other.rows.iter().all(|h| {
            cone.lines.iter().all(|l| dot(&h.normal, l).is_zero())
                && cone.rays.iter().all(|r| {
                    let v = dot(&h.normal, r);
                    if h.equality {
                        v.is_zero()
                    } else {
                        !v.is_positive()
                    }
                })
        }))
    }

    /// Semantic equality, insensitive to redundant constraints.
    pub fn equals(&self, other: &Polyhedron) -> Result<bool, GeometryError> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron, GeometryError> {
        self.same_space(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self::from_rows(self.space.clone(), rows))
    }

    pub fn with_constraints(
        &self,
        constraints: &[Constraint],
    ) -> Result<Polyhedron, GeometryError> {
        let mut rows = self.rows.clone();
        for c in constraints {
            rows.push(constraint_row(&self.space, c)?);
        }
        Ok(Self::from_rows(self.space.clone(), rows))
    }

    pub fn with_constraint(&self, constraint: Constraint) -> Result<Polyhedron, GeometryError> {
        self.with_constraints(&[constraint])
    }

    /// Cylindrification: appends unconstrained variables to the space.
    pub fn add_variables(&self, vars: &[Variable]) -> Result<Polyhedron, GeometryError> {
        let space = Arc::new(self.space.extended(vars)?);
        let n = self.dim();
        let rows = self
            .rows
            .iter()
            .map(|h| {
                let mut normal = h.normal[..n].to_vec();
                normal.extend(std::iter::repeat_n(BigInt::zero(), vars.len()));
                normal.push(h.normal[n].clone());
                HalfSpace {
                    normal,
                    equality: h.equality,
                }
            })
            .collect();
        Ok(Self::from_rows(space, rows))
    }

    /// Exact projection eliminating `names` by Fourier-Motzkin.
    pub fn project_out<S: AsRef<str>>(&self, names: &[S]) -> Result<Polyhedron, GeometryError> {
        let mut drop = names
            .iter()
            .map(|n| self.space.require(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        drop.sort_unstable();
        drop.dedup();
        if self.is_empty() {
            return Ok(Self::empty(Arc::new(self.space.without(&drop))));
        }
        let mut current = self.clone();
        // Eliminate from the highest index so earlier indices stay valid.
        for &j in drop.iter().rev() {
            let rows = fourier_motzkin(current.minimal_rows(), j);
            let space = Arc::new(current.space.without(&[j]));
            current = Self::from_rows(space, rows);
        }
        Ok(current)
    }

    /// Keeps only `names` (in the polyhedron's own order).
    pub fn project_onto<S: AsRef<str>>(&self, names: &[S]) -> Result<Polyhedron, GeometryError> {
        for n in names {
            self.space.require(n.as_ref())?;
        }
        let drop: Vec<String> = self
            .space
            .names()
            .filter(|v| !names.iter().any(|n| n.as_ref() == *v))
            .map(str::to_string)
            .collect();
        self.project_out(&drop)
    }

    /// Projection computed on the generator side: drop coordinates of every
    /// generator, then convert back.
    pub fn project_out_by_generators<S: AsRef<str>>(
        &self,
        names: &[S],
    ) -> Result<Polyhedron, GeometryError> {
        let drop = names
            .iter()
            .map(|n| self.space.require(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let space = Arc::new(self.space.without(&drop));
        let Some(cone) = self.homogeneous_cone() else {
            return Ok(Self::empty(space));
        };
        let keep = |v: &IVec| -> IVec {
            v.iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, x)| x.clone())
                .collect()
        };
        let projected = Cone {
            rays: cone
                .rays
                .iter()
                .map(keep)
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect(),
            lines: cone
                .lines
                .iter()
                .map(keep)
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect(),
        };
        Ok(Self::from_cone(space, &projected))
    }

    /// Re-expresses the polyhedron over `target`, where source variable `v`
    /// becomes target variable `rename(v)`. The mapping must be a bijection.
    pub fn remap(
        &self,
        target: impl Into<Arc<VariableSpace>>,
        rename: impl Fn(&Variable) -> String,
    ) -> Result<Polyhedron, GeometryError> {
        let target = target.into();
        if target.len() != self.dim() {
            return Err(GeometryError::SpaceMismatch);
        }
        let mut position = Vec::with_capacity(self.dim());
        for v in self.space.vars() {
            let j = target.require(&rename(v))?;
            if position.contains(&j) {
                return Err(GeometryError::SpaceMismatch);
            }
            position.push(j);
        }
        let n = self.dim();
        let permute = |v: &IVec| -> IVec {
            let mut out = vec![BigInt::zero(); n + 1];
            for (i, &j) in position.iter().enumerate() {
                out[j] = v[i].clone();
            }
            out[n] = v[n].clone();
            out
        };
        let rows = self
            .rows
            .iter()
            .map(|h| HalfSpace {
                normal: permute(&h.normal),
                equality: h.equality,
            })
            .collect();
        let result = Self::from_rows(target, rows);
        if let Some(Some(cone)) = self.cone.get() {
            let moved = Cone {
                rays: cone.rays.iter().map(permute).collect(),
                lines: cone.lines.iter().map(permute).collect(),
            };
            let _ = result.cone.set(Some(moved));
        }
        Ok(result)
    }

    fn objective(&self, obj: &LinearExpr) -> Result<Vec<Rational>, GeometryError> {
        let mut c = vec![Rational::zero(); self.dim()];
        for (name, coeff) in obj.coeffs() {
            c[self.space.require(name)?] = coeff.clone();
        }
        Ok(c)
    }

    fn optimum(&self, obj: &LinearExpr) -> Result<(Optimum, Option<Vec<Rational>>), GeometryError> {
        let c = self.objective(obj)?;
        let cone = self.homogeneous_cone().ok_or(GeometryError::Empty)?;
        let n = self.dim();
        if cone
            .lines
            .iter()
            .any(|l| !rational_dot(&c, &l[..n]).is_zero())
            || cone
                .rays
                .iter()
                .any(|r| r[n].is_zero() && rational_dot(&c, &r[..n]).is_negative())
        {
            return Ok((Optimum::Unbounded, None));
        }
        let mut best: Option<(Rational, &IVec)> = None;
        for r in cone.rays.iter().filter(|r| r[n].is_positive()) {
            let value = rational_dot(&c, &r[..n]) / Rational::from_integer(r[n].clone());
            if best.as_ref().is_none_or(|(b, _)| value < *b) {
                best = Some((value, r));
            }
        }
        let (value, r) = best.expect("non-empty polyhedron has a vertex");
        let point = r[..n]
            .iter()
            .map(|x| Rational::new(x.clone(), r[n].clone()))
            .collect();
        Ok((Optimum::Finite(value + obj.constant_term()), Some(point)))
    }

    /// Exact minimum of `obj`; attained at a vertex whenever bounded.
    pub fn minimize(&self, obj: &LinearExpr) -> Result<Optimum, GeometryError> {
        Ok(self.optimum(obj)?.0)
    }

    pub fn maximize(&self, obj: &LinearExpr) -> Result<Optimum, GeometryError> {
        Ok(match self.minimize(&(-obj.clone()))? {
            Optimum::Finite(v) => Optimum::Finite(-v),
            Optimum::Unbounded => Optimum::Unbounded,
        })
    }

    /// A vertex minimising `obj`, or `None` when the objective is unbounded.
    pub fn argmin(&self, obj: &LinearExpr) -> Result<Option<Vec<Rational>>, GeometryError> {
        Ok(self.optimum(obj)?.1)
    }

    /// Minkowski sum with the half-line spanned by `direction`.
    pub fn with_ray(&self, direction: &[Rational]) -> Result<Polyhedron, GeometryError> {
        if direction.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                found: direction.len(),
            });
        }
        let Some(cone) = self.homogeneous_cone() else {
            return Ok(self.clone());
        };
        let mut h = direction.to_vec();
        h.push(Rational::zero());
        let mut cone = cone.clone();
        let ray = primitive_from_rationals(&h);
        if ray.iter().any(|x| !x.is_zero()) {
            cone.rays.push(ray);
        }
        Ok(Self::from_cone(self.space.clone(), &cone))
    }

    /// Drops every upper bound on `name` (Minkowski sum with `+e_name`).
    pub fn relax_upward(&self, name: &str) -> Result<Polyhedron, GeometryError> {
        let j = self.space.require(name)?;
        let mut dir = vec![Rational::zero(); self.dim()];
        dir[j] = Rational::from_integer(BigInt::from(1));
        self.with_ray(&dir)
    }

    /// Smallest closed convex set containing every member.
    pub fn convex_hull_union(
        space: impl Into<Arc<VariableSpace>>,
        members: &[Polyhedron],
    ) -> Result<Polyhedron, GeometryError> {
        let space = space.into();
        let mut pooled = Cone::default();
        for p in members {
            if *p.space != *space {
                return Err(GeometryError::SpaceMismatch);
            }
            if let Some(cone) = p.homogeneous_cone() {
                pooled.rays.extend(cone.rays.iter().cloned());
                pooled.lines.extend(cone.lines.iter().cloned());
            }
        }
        pooled.rays.sort();
        pooled.rays.dedup();
        Ok(Self::from_cone(space, &pooled))
    }

    pub(crate) fn pooled_cone(&self) -> Option<&Cone> {
        self.homogeneous_cone()
    }

    pub(crate) fn from_pooled(space: Arc<VariableSpace>, cone: &Cone) -> Polyhedron {
        Self::from_cone(space, cone)
    }
}

/// One Fourier-Motzkin step on column `j`; the column is removed.
fn fourier_motzkin(rows: &[HalfSpace], j: usize) -> Vec<HalfSpace> {
    let strip = |mut h: HalfSpace| {
        h.normal.remove(j);
        h
    };
    if let Some(k) = rows
        .iter()
        .position(|h| h.equality && !h.normal[j].is_zero())
    {
        let mut e = rows[k].clone();
        if e.normal[j].is_negative() {
            for x in e.normal.iter_mut() {
                *x = -&*x;
            }
        }
        let ej = e.normal[j].clone();
        return rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, h)| h)
            .map(|h| {
                let hj = &h.normal[j];
                let normal = if hj.is_zero() {
                    h.normal.clone()
                } else {
                    h.normal
                        .iter()
                        .zip(&e.normal)
                        .map(|(x, y)| x * &ej - y * hj)
                        .collect()
                };
                strip(HalfSpace {
                    normal,
                    equality: h.equality,
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    let pos: Vec<&HalfSpace> = rows.iter().filter(|h| h.normal[j].is_positive()).collect();
    let neg: Vec<&HalfSpace> = rows.iter().filter(|h| h.normal[j].is_negative()).collect();
    for h in rows.iter().filter(|h| h.normal[j].is_zero()) {
        out.push(strip(h.clone()));
    }
    for p in &pos {
        for q in &neg {
            let wp = -&q.normal[j];
            let wq = &p.normal[j];
            let normal = p
                .normal
                .iter()
                .zip(&q.normal)
                .map(|(x, y)| x * &wp + y * wq)
                .collect();
            out.push(strip(HalfSpace {
                normal,
                equality: false,
            }));
        }
    }
    out
}

fn constraint_row(space: &VariableSpace, c: &Constraint) -> Result<HalfSpace, GeometryError> {
    let n = space.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (name, coeff) in c.expr.coeffs() {
        coeffs[space.require(name)?] = coeff.clone();
    }
    coeffs[n] = c.expr.constant_term().clone();
    Ok(HalfSpace {
        normal: primitive_from_rationals(&coeffs),
        equality: c.relation == Relation::Eq,
    })
}

fn row_constraint(space: &VariableSpace, h: &HalfSpace) -> Constraint {
    let n = space.len();
    let mut expr = LinearExpr::constant(Rational::from_integer(h.normal[n].clone()));
    for (v, coeff) in space.vars().iter().zip(&h.normal[..n]) {
        if !coeff.is_zero() {
            expr.add_term(Rational::from_integer(coeff.clone()), v.name.clone());
        }
    }
    Constraint::new(
        expr,
        if h.equality {
            Relation::Eq
        } else {
            Relation::LessEq
        },
    )
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{ false }}");
        }
        let cs = self.constraints();
        if cs.is_empty() {
            return write!(f, "{{ true }}");
        }
        write!(f, "{{ ")?;
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " }}")
    }
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polyhedron{} {}", self.space, self)
    }
}
