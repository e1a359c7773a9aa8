//! Parametric cost state classes and their successor computation.
//!
//! A class is a marking plus a firing domain over the clock variable of each
//! enabled transition, the accumulated cost and the parameters, laid out in
//! that order. Keeping one canonical layout per marking makes domains of
//! classes with equal markings directly comparable.

use std::fmt;
use std::sync::Arc;

use polyhedra::rational::int;
use polyhedra::{
    Constraint, GeometryError, IntegerBox, LinearExpr, Optimum, Polyhedron, Variable, VariableSpace,
};
use thiserror::Error;

use crate::net::{Bound, Marking, Net, COST_VAR};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("no parameter valuation makes every static interval non-empty")]
    NoFeasibleValuation,
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
    #[error("transition `{0}` is not firable from this class")]
    NotFirable(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Debug)]
pub struct StateClass {
    pub marking: Marking,
    pub domain: Polyhedron,
}

/// How classes are compared and costed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubsumptionMode {
    Continuous,
    /// Work on integer hulls over the given parameter box.
    Integer(IntegerBox),
}

fn delay_var(k: usize) -> String {
    format!("delay#{k}")
}

/// Variable layout of a class domain at `m`, followed by `history` delay
/// variables recording the firing dates of a fixed sequence.
pub fn class_space(net: &Net, m: &Marking, history: usize) -> Arc<VariableSpace> {
    let mut vars: Vec<Variable> = net
        .enabled(m)
        .into_iter()
        .map(|t| Variable::clock(net.clock_var(t)))
        .collect();
    vars.push(Variable::cost(COST_VAR));
    vars.extend(net.params().iter().map(Variable::parameter));
    vars.extend((0..history).map(|k| Variable::clock(delay_var(k))));
    Arc::new(VariableSpace::new(vars).expect("class variable names are distinct"))
}

fn bound_expr(b: &Bound) -> Option<LinearExpr> {
    match b {
        Bound::Const(c) => Some(LinearExpr::constant(c.clone())),
        Bound::Param(p) => Some(LinearExpr::var(p.as_str())),
        Bound::Infinity => None,
    }
}

/// `left <= var <= right` for the static interval of `t`.
fn interval_constraints(net: &Net, t: usize, var: &str) -> Vec<Constraint> {
    let iv = &net.transition(t).interval;
    let mut out = Vec::new();
    if let Some(l) = bound_expr(&iv.left) {
        out.push(Constraint::ge(var, l));
    }
    if let Some(r) = bound_expr(&iv.right) {
        out.push(Constraint::le(var, r));
    }
    out
}

/// Parameter constraints of the initial domain: every static interval is
/// non-empty and parameters are non-negative.
pub fn feasibility_constraints(net: &Net) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = net
        .params()
        .iter()
        .map(|p| Constraint::ge(p.as_str(), int(0)))
        .collect();
    for t in net.transitions() {
        if let (Some(l), Some(r)) = (bound_expr(&t.interval.left), bound_expr(&t.interval.right)) {
            out.push(Constraint::le(l, r));
        }
    }
    out
}

/// The initial class, with `extra` parameter constraints (such as a
/// parameter box) added to its domain.
pub fn initial_class_within(net: &Net, extra: &[Constraint]) -> Result<StateClass, ClassError> {
    let m0 = net.initial_marking().clone();
    let mut cs = feasibility_constraints(net);
    for t in net.enabled(&m0) {
        cs.extend(interval_constraints(net, t, &net.clock_var(t)));
    }
    cs.push(Constraint::eq(COST_VAR, int(0)));
    cs.extend(extra.iter().cloned());
    let domain = Polyhedron::from_constraints(class_space(net, &m0, 0), &cs)?;
    if domain.is_empty() {
        return Err(ClassError::NoFeasibleValuation);
    }
    Ok(StateClass {
        marking: m0,
        domain,
    })
}

pub fn initial_class(net: &Net) -> Result<StateClass, ClassError> {
    initial_class_within(net, &[])
}

/// `θ_f <= θ_i` for every other enabled transition.
fn fire_first(net: &Net, m: &Marking, tf: usize) -> Vec<Constraint> {
    let f = net.clock_var(tf);
    net.enabled(m)
        .into_iter()
        .filter(|&i| i != tf)
        .map(|i| Constraint::le(f.as_str(), net.clock_var(i).as_str()))
        .collect()
}

fn check_enabled(net: &Net, m: &Marking, tf: usize) -> Result<(), ClassError> {
    if net.is_enabled(m, tf) {
        Ok(())
    } else {
        Err(ClassError::NotEnabled(net.transition(tf).name.clone()))
    }
}

fn primed(name: &str) -> String {
    format!("{name}'")
}

/// Successor domain by firing `tf`, for a domain laid out by
/// [`class_space`] with `history` delay variables. When `record` is set the
/// firing date of `tf` is kept as one more delay variable. Returns `None`
/// when `tf` is not firable.
pub(crate) fn successor(
    net: &Net,
    m: &Marking,
    domain: &Polyhedron,
    tf: usize,
    history: usize,
    record: bool,
) -> Result<Option<(Marking, Polyhedron)>, ClassError> {
    check_enabled(net, m, tf)?;
    let first = domain.with_constraints(&fire_first(net, m, tf))?;
    if first.is_empty() {
        return Ok(None);
    }
    let enabled = net.enabled(m);
    let next_marking = net.fire_marking(m, tf);
    let fresh = net.newly_enabled(m, tf).expect("enabled");
    let persistent: Vec<usize> = net
        .enabled(&next_marking)
        .into_iter()
        .filter(|t| !fresh.contains(t))
        .collect();

    let theta_f = LinearExpr::var(net.clock_var(tf));
    let mut new_vars = Vec::new();
    let mut cs = Vec::new();
    for &i in &persistent {
        let name = primed(&net.clock_var(i));
        cs.push(Constraint::eq(
            name.as_str(),
            LinearExpr::var(net.clock_var(i)) - theta_f.clone(),
        ));
        new_vars.push(Variable::clock(name));
    }
    let cost_next = primed(COST_VAR);
    let rate = net.rate().eval(m);
    cs.push(Constraint::eq(
        cost_next.as_str(),
        LinearExpr::var(COST_VAR)
            + LinearExpr::term(int(rate), net.clock_var(tf))
            + LinearExpr::from(net.transition(tf).cost),
    ));
    new_vars.push(Variable::clock(cost_next));
    if record {
        cs.push(Constraint::eq(delay_var(history).as_str(), theta_f.clone()));
        new_vars.push(Variable::clock(delay_var(history)));
    }

    let mut old: Vec<String> = enabled.iter().map(|&t| net.clock_var(t)).collect();
    old.push(COST_VAR.to_string());
    let projected = first
        .add_variables(&new_vars)?
        .with_constraints(&cs)?
        .project_out(&old)?;

    let fresh_vars: Vec<Variable> = fresh
        .iter()
        .map(|&t| Variable::clock(net.clock_var(t)))
        .collect();
    let mut fresh_cs = Vec::new();
    for &t in &fresh {
        fresh_cs.extend(interval_constraints(net, t, &net.clock_var(t)));
    }
    let widened = projected
        .add_variables(&fresh_vars)?
        .with_constraints(&fresh_cs)?;
    let target = class_space(net, &next_marking, history + usize::from(record));
    let domain = widened.remap(target, |v| v.name.trim_end_matches('\'').to_string())?;
    Ok(Some((next_marking, domain)))
}

impl StateClass {
    /// Transitions firable from this class, in declaration order.
    pub fn firable(&self, net: &Net) -> Result<Vec<usize>, ClassError> {
        let mut out = Vec::new();
        for t in net.enabled(&self.marking) {
            if !self
                .domain
                .with_constraints(&fire_first(net, &self.marking, t))?
                .is_empty()
            {
                out.push(t);
            }
        }
        Ok(out)
    }

    /// The successor class by firing `tf`.
    pub fn next(&self, net: &Net, tf: usize) -> Result<StateClass, ClassError> {
        match successor(net, &self.marking, &self.domain, tf, 0, false)? {
            Some((marking, domain)) => Ok(StateClass { marking, domain }),
            None => Err(ClassError::NotFirable(net.transition(tf).name.clone())),
        }
    }

    /// Minimum of the cost variable over the domain (over its integer hull in
    /// integer mode). `Unbounded` means unbounded below.
    pub fn cost(&self, mode: &SubsumptionMode) -> Result<Optimum, ClassError> {
        let obj = LinearExpr::var(COST_VAR);
        Ok(match mode {
            SubsumptionMode::Continuous => self.domain.minimize(&obj)?,
            SubsumptionMode::Integer(bx) => self.domain.integer_hull(bx)?.minimize(&obj)?,
        })
    }

    /// `(m, IH(D))`.
    pub fn ih(&self, bx: &IntegerBox) -> Result<StateClass, ClassError> {
        Ok(StateClass {
            marking: self.marking.clone(),
            domain: self.domain.integer_hull(bx)?,
        })
    }

    pub fn int_firable(&self, net: &Net, bx: &IntegerBox) -> Result<Vec<usize>, ClassError> {
        self.ih(bx)?.firable(net)
    }

    /// `IH(Next(IH(C), t))`.
    pub fn next_ih(&self, net: &Net, t: usize, bx: &IntegerBox) -> Result<StateClass, ClassError> {
        self.ih(bx)?.next(net, t)?.ih(bx)
    }

    /// `self ≼ other`, decided by cost relaxation and inclusion.
    pub fn subsumed_by(
        &self,
        other: &StateClass,
        mode: &SubsumptionMode,
    ) -> Result<bool, ClassError> {
        if self.marking != other.marking {
            return Ok(false);
        }
        match mode {
            SubsumptionMode::Continuous => {
                Ok(self.domain.is_subset_of(&relaxed(&other.domain)?)?)
            }
            SubsumptionMode::Integer(bx) => {
                let mine = self.domain.integer_hull(bx)?;
                let theirs = other.domain.integer_hull(bx)?;
                Ok(mine.is_subset_of(&relaxed(&theirs)?)?)
            }
        }
    }

    /// `self ≼ other` checked directly: every generator of the domain must be
    /// dominated by the cheapest point of `other` with the same clock and
    /// parameter coordinates. Kept as an independent cross-check of
    /// [`StateClass::subsumed_by`].
    pub fn subsumed_by_lp(
        &self,
        other: &StateClass,
        mode: &SubsumptionMode,
    ) -> Result<bool, ClassError> {
        if self.marking != other.marking {
            return Ok(false);
        }
        let (d, d2) = match mode {
            SubsumptionMode::Continuous => (self.domain.clone(), other.domain.clone()),
            SubsumptionMode::Integer(bx) => (
                self.domain.integer_hull(bx)?,
                other.domain.integer_hull(bx)?,
            ),
        };
        if d.is_empty() {
            return Ok(true);
        }
        if d2.is_empty() {
            return Ok(false);
        }
        let space = d.space().clone();
        let names: Vec<String> = space.names().map(str::to_string).collect();
        let cost_idx = space.require(COST_VAR)?;
        let gens = d.generators()?;
        for v in &gens.vertices {
            let pin: Vec<Constraint> = names
                .iter()
                .zip(v)
                .enumerate()
                .filter(|(i, _)| *i != cost_idx)
                .map(|(_, (n, x))| Constraint::eq(n.as_str(), x.clone()))
                .collect();
            let slice = d2.with_constraints(&pin)?;
            if slice.is_empty() {
                return Ok(false);
            }
            if let Optimum::Finite(best) = slice.minimize(&LinearExpr::var(COST_VAR))? {
                if best > v[cost_idx] {
                    return Ok(false);
                }
            }
        }
        // Directions: r must lie in rec(D2) + cone(+cost).
        let rec_rows: Vec<Constraint> = d2
            .constraints()
            .into_iter()
            .map(|c| {
                let mut e = c.expr.clone();
                e.add_constant(&(-c.expr.constant_term().clone()));
                Constraint::new(e, c.relation)
            })
            .collect();
        let mut dirs: Vec<Vec<polyhedra::Rational>> = gens.rays.clone();
        for l in &gens.lines {
            dirs.push(l.clone());
            dirs.push(l.iter().map(|x| -x.clone()).collect());
        }
        let lambda_space = Arc::new(VariableSpace::parameters(&["lambda"]));
        for r in dirs {
            // Substitute x = r - lambda * e_cost into each homogeneous row.
            let mut cs = vec![Constraint::ge("lambda", int(0))];
            for row in &rec_rows {
                let mut e = LinearExpr::zero();
                let mut k = polyhedra::Rational::from(int(0));
                for (i, n) in names.iter().enumerate() {
                    k += row.expr.coeff(n) * &r[i];
                }
                e.add_constant(&k);
                e.add_term(-row.expr.coeff(COST_VAR), "lambda");
                cs.push(Constraint::new(e, row.relation));
            }
            if Polyhedron::from_constraints(lambda_space.clone(), &cs)?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Marking and constraint list, for diagnostics and golden tests.
    pub fn describe(&self, net: &Net) -> String {
        format!("{} {}", net.marking_string(&self.marking), self.domain)
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {}", self.marking.0, self.domain)
    }
}

/// Removes every upper bound on the cost variable.
pub fn relaxed(domain: &Polyhedron) -> Result<Polyhedron, ClassError> {
    Ok(domain.relax_upward(COST_VAR)?)
}

/// Domain reached by firing `sequence` from the initial class, with one
/// extra variable per step holding its firing delay.
pub fn sequence_domain(
    net: &Net,
    initial: &StateClass,
    sequence: &[usize],
) -> Result<(Marking, Polyhedron), ClassError> {
    let mut m = initial.marking.clone();
    let mut d = initial.domain.clone();
    for (k, &t) in sequence.iter().enumerate() {
        match successor(net, &m, &d, t, k, true)? {
            Some((m2, d2)) => {
                m = m2;
                d = d2;
            }
            None => return Err(ClassError::NotFirable(net.transition(t).name.clone())),
        }
    }
    Ok((m, d))
}

/// Name of the variable holding the delay before the `k`-th firing in a
/// [`sequence_domain`].
pub fn sequence_delay_var(k: usize) -> String {
    delay_var(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::example_net;
    use crate::net::{NetDescription, StaticInterval, TransitionDescription};

    fn dom(net: &Net, m: &Marking, text: &str) -> Polyhedron {
        let text = text
            .replace("t0", "theta_t0")
            .replace("t1", "theta_t1")
            .replace(" c ", " cost ");
        Polyhedron::parse(class_space(net, m, 0), &text).unwrap()
    }

    #[test]
    fn initial_and_first_successors() {
        let net = example_net();
        let c0 = initial_class(&net).unwrap();
        let m0 = c0.marking.clone();
        assert!(c0
            .domain
            .equals(&dom(&net, &m0, "t0 = a, 2 <= t1 <= 5, cost = 0, a >= 0"))
            .unwrap());
        assert_eq!(c0.firable(&net).unwrap(), vec![0, 1]);
        let c1 = c0.next(&net, 0).unwrap();
        let d1 = dom(
            &net,
            &m0,
            "t0 = a, 0 <= t1, 2 - a <= t1 <= 5 - a, cost = 2 + 3a, a <= 5, a >= 0",
        );
        assert!(c1.domain.equals(&d1).unwrap(), "{}", c1.domain);
        assert_eq!(
            c0.cost(&SubsumptionMode::Continuous).unwrap(),
            Optimum::Finite(int(0))
        );
    }

    fn single(interval: StaticInterval, extra: Option<StaticInterval>) -> Net {
        let mut transitions = vec![TransitionDescription {
            name: "u".into(),
            pre: vec![("p".into(), 1)],
            post: vec![],
            interval,
            cost: 0,
            span: None,
        }];
        if let Some(iv) = extra {
            transitions.push(TransitionDescription {
                name: "w".into(),
                pre: vec![("q".into(), 1)],
                post: vec![],
                interval: iv,
                cost: 0,
                span: None,
            });
        }
        let desc = NetDescription {
            name: "n".into(),
            params: vec![("a".into(), None)],
            places: vec![("p".into(), 1, None), ("q".into(), 0, None)],
            transitions,
            ..Default::default()
        };
        Net::new(desc).unwrap().0
    }

    #[test]
    fn disabled_transition_still_constrains_parameters() {
        let net = single(
            StaticInterval::new(Bound::constant(1), Bound::constant(2)),
            Some(StaticInterval::new(Bound::param("a"), Bound::constant(3))),
        );
        let c0 = initial_class(&net).unwrap();
        let m0 = c0.marking.clone();
        let expected = Polyhedron::parse(
            class_space(&net, &m0, 0),
            "1 <= theta_u <= 2, cost = 0, 0 <= a <= 3",
        )
        .unwrap();
        assert!(c0.domain.equals(&expected).unwrap());
    }

    #[test]
    fn earlier_deadline_blocks_later_transition() {
        let mut desc = single(
            StaticInterval::new(Bound::constant(3), Bound::constant(3)),
            None,
        )
        .description();
        desc.places[1].1 = 1;
        desc.transitions.push(TransitionDescription {
            name: "w".into(),
            pre: vec![("q".into(), 1)],
            post: vec![],
            interval: StaticInterval::new(Bound::constant(0), Bound::constant(1)),
            cost: 0,
            span: None,
        });
        let net = Net::new(desc).unwrap().0;
        let c0 = initial_class(&net).unwrap();
        assert_eq!(c0.firable(&net).unwrap(), vec![1]);
        assert!(matches!(c0.next(&net, 0), Err(ClassError::NotFirable(_))));
    }

    #[test]
    fn subsumption_checks_agree_on_the_example_chain() {
        let net = example_net();
        let mut chain = vec![initial_class(&net).unwrap()];
        for _ in 0..4 {
            let next = chain.last().unwrap().next(&net, 0).unwrap();
            chain.push(next);
        }
        let bx = IntegerBox::new().with("a", 0, 10);
        for mode in [SubsumptionMode::Continuous, SubsumptionMode::Integer(bx)] {
            for a in &chain {
                for b in &chain {
                    assert_eq!(
                        a.subsumed_by(b, &mode).unwrap(),
                        a.subsumed_by_lp(b, &mode).unwrap()
                    );
                }
                assert!(a.subsumed_by(a, &mode).unwrap());
            }
        }
    }
}
