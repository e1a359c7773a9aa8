//! Exploration of the state-class graph for bounded-cost and infimum-cost
//! parameter synthesis, in continuous and integer-parameter variants.
//!
//! One engine implements all four procedures. The integer variants differ
//! only in applying the integer hull before collecting results, testing
//! subsumption and computing firability; successors are always computed on
//! the original classes.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use polyhedra::{
    union_contains, union_covers, Constraint, GeometryError, IntegerBox, LinearExpr, Optimum,
    Polyhedron, Rational, VariableSpace,
};
use thiserror::Error;

use crate::class::{
    class_space, initial_class_within, relaxed, sequence_delay_var, sequence_domain, ClassError,
    StateClass,
};
use crate::goal::Goal;
use crate::net::{Marking, Net, NetError, Valuation, COST_VAR};
use crate::semantics::{replay, ReplayError, Step, TimedWord};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("integer mode needs a bound for every parameter; missing `{0}`")]
    MissingParameterBound(String),
    #[error("parameter box mentions undeclared parameter `{0}`")]
    UnknownBoxParameter(String),
    #[error("max_classes must be positive")]
    ZeroBudget,
    #[error(
        "the net has negative costs or rates; assert that run costs are bounded below to proceed"
    )]
    CostLowerBoundNotAsserted,
    #[error(
        "marking {marking} exceeds the cap of {cap} tokens per place; the net may be unbounded"
    )]
    MarkingCapExceeded { marking: String, cap: u32 },
    #[error("the cost of a goal class is unbounded below")]
    CostUnboundedBelow,
    #[error("valuation {0} is not covered by the result")]
    ValuationNotInResult(String),
    #[error("no run reaches the goal within the result's cost at this valuation")]
    NoWitness,
    #[error("witness failed to replay: {0}")]
    WitnessReplay(#[from] ReplayError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Class(#[from] ClassError),
}

impl From<GeometryError> for SynthesisError {
    fn from(e: GeometryError) -> Self {
        SynthesisError::Class(ClassError::Geometry(e))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone, Debug)]
pub struct ExplorationConfig {
    /// Restrict to integer parameter valuations (requires a total box).
    pub integer: bool,
    /// Parameter bounds. Mandatory in integer mode; in continuous mode they
    /// are added to the initial domain when present.
    pub param_box: Option<IntegerBox>,
    pub order: SearchOrder,
    /// Number of classes taken from the waiting list before giving up.
    pub max_classes: usize,
    pub marking_cap: u32,
    pub assert_cost_lower_bounded: bool,
}

impl Default for ExplorationConfig {
    fn default() -> Self {
        ExplorationConfig {
            integer: false,
            param_box: None,
            order: SearchOrder::BreadthFirst,
            max_classes: 10_000,
            marking_cap: 1_000,
            assert_cost_lower_bounded: false,
        }
    }
}

impl ExplorationConfig {
    pub fn integer(bx: IntegerBox) -> Self {
        ExplorationConfig {
            integer: true,
            param_box: Some(bx),
            ..Default::default()
        }
    }

    pub fn with_max_classes(mut self, n: usize) -> Self {
        self.max_classes = n;
        self
    }

    pub fn with_order(mut self, order: SearchOrder) -> Self {
        self.order = order;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The waiting list emptied: the result is exact.
    Complete,
    /// `max_classes` was reached first: the result is sound but partial.
    BudgetExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Complete => "complete",
            Status::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Classes taken from the waiting list.
    pub explored: usize,
    /// Classes found subsumed by a passed class.
    pub subsumed: usize,
    /// Classes with a goal marking.
    pub goal_hits: usize,
    pub passed: usize,
    pub max_waiting: usize,
}

/// One convex piece of the result, with the firing sequence of the class it
/// came from.
#[derive(Clone, Debug)]
pub struct Disjunct {
    pub params: Polyhedron,
    pub sequence: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub cost_max: Rational,
    pub integer: bool,
    pub disjuncts: Vec<Disjunct>,
    pub status: Status,
    pub stats: Stats,
    initial: StateClass,
    param_space: Arc<VariableSpace>,
}

#[derive(Clone, Debug)]
pub struct OptResult {
    /// `None` stands for +∞: no goal class was found.
    pub cost: Option<Rational>,
    pub integer: bool,
    pub disjuncts: Vec<Disjunct>,
    pub status: Status,
    pub stats: Stats,
    initial: StateClass,
    param_space: Arc<VariableSpace>,
}

/// Snapshot handed to progress observers after each explored class.
#[derive(Clone, Debug)]
pub struct Progress {
    pub stats: Stats,
    pub waiting: usize,
    pub best_cost: Option<Rational>,
}

#[derive(Clone, Debug)]
enum Query {
    Bounded(Rational),
    Infimum,
}

struct Node {
    parent: Option<usize>,
    via: Option<usize>,
}

fn sequence_of(nodes: &[Node], mut id: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while let (Some(p), Some(t)) = (nodes[id].parent, nodes[id].via) {
        out.push(t);
        id = p;
    }
    out.reverse();
    out
}

struct Outcome {
    cost: Option<Rational>,
    disjuncts: Vec<Disjunct>,
    status: Status,
    stats: Stats,
    initial: StateClass,
    param_space: Arc<VariableSpace>,
}

fn check_config(net: &Net, cfg: &ExplorationConfig) -> Result<Vec<Constraint>, SynthesisError> {
    if cfg.max_classes == 0 {
        return Err(SynthesisError::ZeroBudget);
    }
    if net.has_negative_costs() && !cfg.assert_cost_lower_bounded {
        return Err(SynthesisError::CostLowerBoundNotAsserted);
    }
    let mut extra = Vec::new();
    if let Some(bx) = &cfg.param_box {
        for (name, lo, hi) in bx.iter() {
            if !net.params().iter().any(|p| p == name) {
                return Err(SynthesisError::UnknownBoxParameter(name.to_string()));
            }
            extra.push(Constraint::ge(name, polyhedra::rational::int(lo)));
            extra.push(Constraint::le(name, polyhedra::rational::int(hi)));
        }
    }
    if cfg.integer {
        let bx = cfg.param_box.as_ref();
        for p in net.params() {
            if bx.and_then(|b| b.get(p)).is_none() {
                return Err(SynthesisError::MissingParameterBound(p.clone()));
            }
        }
    }
    Ok(extra)
}

fn check_cap(net: &Net, m: &Marking, cap: u32) -> Result<(), SynthesisError> {
    if m.0.iter().any(|&k| k > cap) {
        return Err(SynthesisError::MarkingCapExceeded {
            marking: net.marking_string(m),
            cap,
        });
    }
    Ok(())
}

fn explore(
    net: &Net,
    goal: &Goal,
    query: Query,
    cfg: &ExplorationConfig,
    observer: &mut dyn FnMut(&Progress),
) -> Result<Outcome, SynthesisError> {
    let extra = check_config(net, cfg)?;
    let bx = if cfg.integer {
        cfg.param_box.clone()
    } else {
        None
    };
    let param_space = Arc::new(VariableSpace::parameters(net.params()));
    let initial = match initial_class_within(net, &extra) {
        Ok(c) => c,
        // No valuation at all: the exact answer is the empty set.
        Err(ClassError::NoFeasibleValuation) => {
            let m0 = net.initial_marking().clone();
            let domain = Polyhedron::empty(class_space(net, &m0, 0));
            return Ok(Outcome {
                cost: None,
                disjuncts: Vec::new(),
                status: Status::Complete,
                stats: Stats::default(),
                initial: StateClass {
                    marking: m0,
                    domain,
                },
                param_space,
            });
        }
        Err(e) => return Err(e.into()),
    };

    let mut nodes = vec![Node {
        parent: None,
        via: None,
    }];
    let mut waiting: VecDeque<(StateClass, usize)> = VecDeque::from([(initial.clone(), 0)]);
    // Relaxed (hulled, in integer mode) domains of passed classes, by marking.
    let mut passed: HashMap<Marking, Vec<Polyhedron>> = HashMap::new();
    let mut stats = Stats {
        max_waiting: 1,
        ..Default::default()
    };
    let mut best: Option<Rational> = None;
    let mut disjuncts: Vec<Disjunct> = Vec::new();
    let cost = LinearExpr::var(COST_VAR);
    let mut status = Status::Complete;

    loop {
        let next = match cfg.order {
            SearchOrder::BreadthFirst => waiting.pop_front(),
            SearchOrder::DepthFirst => waiting.pop_back(),
        };
        let Some((class, id)) = next else { break };
        if stats.explored == cfg.max_classes {
            waiting.push_front((class, id));
            status = Status::BudgetExhausted;
            break;
        }
        stats.explored += 1;

        let view = match &bx {
            Some(b) => class.ih(b)?,
            None => class.clone(),
        };

        if goal.holds(&class.marking) && !view.domain.is_empty() {
            stats.goal_hits += 1;
            match &query {
                Query::Bounded(cmax) => {
                    let piece = view
                        .domain
                        .with_constraint(Constraint::le(COST_VAR, cmax.clone()))?
                        .project_onto(net.params())?;
                    let piece = piece.remap(param_space.clone(), |v| v.name.clone())?;
                    let current: Vec<Polyhedron> =
                        disjuncts.iter().map(|d| d.params.clone()).collect();
                    if !piece.is_empty() && !union_covers(&current, &piece)? {
                        disjuncts.push(Disjunct {
                            params: piece,
                            sequence: sequence_of(&nodes, id),
                        });
                    }
                }
                Query::Infimum => {
                    let c = match view.domain.minimize(&cost)? {
                        Optimum::Finite(c) => c,
                        Optimum::Unbounded => return Err(SynthesisError::CostUnboundedBelow),
                    };
                    let improves = best.as_ref().is_none_or(|b| c < *b);
                    if improves || best.as_ref() == Some(&c) {
                        let piece = view
                            .domain
                            .with_constraint(Constraint::eq(COST_VAR, c.clone()))?
                            .project_onto(net.params())?
                            .remap(param_space.clone(), |v| v.name.clone())?;
                        if improves {
                            best = Some(c);
                            disjuncts.clear();
                        }
                        let current: Vec<Polyhedron> =
                            disjuncts.iter().map(|d| d.params.clone()).collect();
                        if !union_covers(&current, &piece)? {
                            disjuncts.push(Disjunct {
                                params: piece,
                                sequence: sequence_of(&nodes, id),
                            });
                        }
                    }
                }
            }
        }

        let entries = passed.entry(class.marking.clone()).or_default();
        let mut subsumed = false;
        for r in entries.iter() {
            if view.domain.is_subset_of(r)? {
                subsumed = true;
                break;
            }
        }
        if subsumed {
            stats.subsumed += 1;
        } else {
            entries.push(relaxed(&view.domain)?);
            stats.passed += 1;
            for t in view.firable(net)? {
                let succ = class.next(net, t)?;
                check_cap(net, &succ.marking, cfg.marking_cap)?;
                nodes.push(Node {
                    parent: Some(id),
                    via: Some(t),
                });
                waiting.push_back((succ, nodes.len() - 1));
            }
            stats.max_waiting = stats.max_waiting.max(waiting.len());
        }
        observer(&Progress {
            stats,
            waiting: waiting.len(),
            best_cost: best.clone(),
        });
    }

    Ok(Outcome {
        cost: best,
        disjuncts,
        status,
        stats,
        initial,
        param_space,
    })
}

fn bounded(
    net: &Net,
    goal: &Goal,
    cost_max: &Rational,
    cfg: &ExplorationConfig,
    observer: &mut dyn FnMut(&Progress),
) -> Result<SynthesisResult, SynthesisError> {
    let o = explore(net, goal, Query::Bounded(cost_max.clone()), cfg, observer)?;
    Ok(SynthesisResult {
        cost_max: cost_max.clone(),
        integer: cfg.integer,
        disjuncts: o.disjuncts,
        status: o.status,
        stats: o.stats,
        initial: o.initial,
        param_space: o.param_space,
    })
}

fn infimum(
    net: &Net,
    goal: &Goal,
    cfg: &ExplorationConfig,
    observer: &mut dyn FnMut(&Progress),
) -> Result<OptResult, SynthesisError> {
    let o = explore(net, goal, Query::Infimum, cfg, observer)?;
    Ok(OptResult {
        cost: o.cost,
        integer: cfg.integer,
        disjuncts: o.disjuncts,
        status: o.status,
        stats: o.stats,
        initial: o.initial,
        param_space: o.param_space,
    })
}

fn continuous(cfg: &ExplorationConfig) -> ExplorationConfig {
    ExplorationConfig {
        integer: false,
        ..cfg.clone()
    }
}

fn integral(cfg: &ExplorationConfig) -> ExplorationConfig {
    ExplorationConfig {
        integer: true,
        ..cfg.clone()
    }
}

/// Valuations reaching the goal with cost at most `cost_max`.
pub fn bounded_synth(
    net: &Net,
    goal: &Goal,
    cost_max: &Rational,
    cfg: &ExplorationConfig,
) -> Result<SynthesisResult, SynthesisError> {
    bounded(net, goal, cost_max, &continuous(cfg), &mut |_| {})
}

/// Infimum goal cost and the valuations achieving it.
pub fn inf_synth(
    net: &Net,
    goal: &Goal,
    cfg: &ExplorationConfig,
) -> Result<OptResult, SynthesisError> {
    infimum(net, goal, &continuous(cfg), &mut |_| {})
}

/// [`bounded_synth`] over integer valuations in the parameter box.
pub fn int_bounded_synth(
    net: &Net,
    goal: &Goal,
    cost_max: &Rational,
    cfg: &ExplorationConfig,
) -> Result<SynthesisResult, SynthesisError> {
    bounded(net, goal, cost_max, &integral(cfg), &mut |_| {})
}

/// [`inf_synth`] over integer valuations in the parameter box.
pub fn int_inf_synth(
    net: &Net,
    goal: &Goal,
    cfg: &ExplorationConfig,
) -> Result<OptResult, SynthesisError> {
    infimum(net, goal, &integral(cfg), &mut |_| {})
}

/// Bounded-cost synthesis in the mode selected by `cfg.integer`, reporting
/// progress after every explored class.
pub fn bounded_synth_with_progress(
    net: &Net,
    goal: &Goal,
    cost_max: &Rational,
    cfg: &ExplorationConfig,
    observer: &mut dyn FnMut(&Progress),
) -> Result<SynthesisResult, SynthesisError> {
    bounded(net, goal, cost_max, cfg, observer)
}

/// Infimum-cost synthesis in the mode selected by `cfg.integer`, reporting
/// progress after every explored class.
pub fn inf_synth_with_progress(
    net: &Net,
    goal: &Goal,
    cfg: &ExplorationConfig,
    observer: &mut dyn FnMut(&Progress),
) -> Result<OptResult, SynthesisError> {
    infimum(net, goal, cfg, observer)
}

fn params_of(disjuncts: &[Disjunct]) -> Vec<Polyhedron> {
    disjuncts.iter().map(|d| d.params.clone()).collect()
}

fn point_of(net: &Net, v: &Valuation) -> Result<Vec<Rational>, SynthesisError> {
    net.check_valuation(v)?;
    Ok(v.values_for(net.params())?)
}

fn contains(
    space: &VariableSpace,
    disjuncts: &[Disjunct],
    net: &Net,
    v: &Valuation,
) -> Result<bool, SynthesisError> {
    debug_assert_eq!(space.len(), net.params().len());
    Ok(union_contains(&params_of(disjuncts), &point_of(net, v)?)?)
}

#[derive(Clone, Copy)]
enum CostTarget<'a> {
    AtMost(&'a Rational),
    Exactly(&'a Rational),
}

/// Rebuilds a run for `v` from the disjunct sequences: the cheapest run
/// meeting `target` along the first sequence that admits one.
fn witness(
    net: &Net,
    initial: &StateClass,
    disjuncts: &[Disjunct],
    v: &Valuation,
    target: CostTarget<'_>,
) -> Result<(TimedWord, Rational), SynthesisError> {
    let point = point_of(net, v)?;
    let mut best: Option<(Vec<Rational>, Vec<usize>, Rational)> = None;
    for d in disjuncts {
        if !d.params.contains_point(&point)? {
            continue;
        }
        let (_, dom) = sequence_domain(net, initial, &d.sequence)?;
        let mut pin: Vec<Constraint> = net
            .params()
            .iter()
            .zip(&point)
            .map(|(p, x)| Constraint::eq(p.as_str(), x.clone()))
            .collect();
        pin.push(match target {
            CostTarget::AtMost(c) => Constraint::le(COST_VAR, c.clone()),
            CostTarget::Exactly(c) => Constraint::eq(COST_VAR, c.clone()),
        });
        let slice = dom.with_constraints(&pin)?;
        let Some(arg) = slice.argmin(&LinearExpr::var(COST_VAR))? else {
            continue;
        };
        let c = arg[slice.space().require(COST_VAR)?].clone();
        if best.as_ref().is_none_or(|b| c < b.2) {
            let delays = (0..d.sequence.len())
                .map(|k| {
                    slice
                        .space()
                        .require(&sequence_delay_var(k))
                        .map(|i| arg[i].clone())
                })
                .collect::<Result<Vec<_>, _>>()?;
            best = Some((delays, d.sequence.clone(), c));
        }
    }
    let (delays, sequence, _) = best.ok_or(SynthesisError::NoWitness)?;
    let word = TimedWord(
        sequence
            .iter()
            .zip(delays)
            .map(|(&t, delay)| Step {
                transition: net.transition(t).name.clone(),
                delay,
            })
            .collect(),
    );
    let end = replay(net, v, &word)?;
    Ok((word, end.cost))
}

impl SynthesisResult {
    pub fn params(&self) -> Vec<Polyhedron> {
        params_of(&self.disjuncts)
    }

    pub fn param_space(&self) -> &Arc<VariableSpace> {
        &self.param_space
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn contains(&self, net: &Net, v: &Valuation) -> Result<bool, SynthesisError> {
        contains(&self.param_space, &self.disjuncts, net, v)
    }

    /// A timed word reaching the goal at `v` with cost at most `cost_max`,
    /// checked by replay. Returns the word and its cost.
    pub fn explore_trace(
        &self,
        net: &Net,
        v: &Valuation,
    ) -> Result<(TimedWord, Rational), SynthesisError> {
        if !self.contains(net, v)? {
            return Err(SynthesisError::ValuationNotInResult(v.to_string()));
        }
        witness(
            net,
            &self.initial,
            &self.disjuncts,
            v,
            CostTarget::AtMost(&self.cost_max),
        )
    }
}

impl OptResult {
    pub fn params(&self) -> Vec<Polyhedron> {
        params_of(&self.disjuncts)
    }

    pub fn param_space(&self) -> &Arc<VariableSpace> {
        &self.param_space
    }

    pub fn contains(&self, net: &Net, v: &Valuation) -> Result<bool, SynthesisError> {
        contains(&self.param_space, &self.disjuncts, net, v)
    }

    /// A timed word reaching the goal at `v` with exactly the optimal cost,
    /// checked by replay.
    pub fn explore_trace(
        &self,
        net: &Net,
        v: &Valuation,
    ) -> Result<(TimedWord, Rational), SynthesisError> {
        let cost = match &self.cost {
            Some(c) if self.contains(net, v)? => c,
            _ => return Err(SynthesisError::ValuationNotInResult(v.to_string())),
        };
        witness(
            net,
            &self.initial,
            &self.disjuncts,
            v,
            CostTarget::Exactly(cost),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::example_net;
    use polyhedra::rational::int;

    fn goal(net: &Net) -> Goal {
        Goal::parse("p2 >= 1", net).unwrap()
    }

    fn members(net: &Net, params: &[Polyhedron], lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi)
            .filter(|&a| union_contains(params, &[int(a)]).unwrap())
            .inspect(|_| assert_eq!(net.params().len(), 1))
            .collect()
    }

    #[test]
    fn integer_bounded_synthesis_on_the_example() {
        let net = example_net();
        let cfg = ExplorationConfig::integer(IntegerBox::new().with("a", 0, 10));
        for (cmax, expected) in [
            (5, vec![]),
            (6, (2..=10).collect()),
            (8, (1..=10).collect::<Vec<_>>()),
        ] {
            let r = int_bounded_synth(&net, &goal(&net), &int(cmax), &cfg).unwrap();
            assert_eq!(r.status, Status::Complete);
            assert_eq!(
                members(&net, &r.params(), -2, 12),
                expected,
                "c_max = {cmax}"
            );
        }
    }

    #[test]
    fn integer_infimum_and_witnesses() {
        let net = example_net();
        let cfg = ExplorationConfig::integer(IntegerBox::new().with("a", 0, 10));
        let r = int_inf_synth(&net, &goal(&net), &cfg).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.cost, Some(int(6)));
        assert_eq!(
            members(&net, &r.params(), 0, 10),
            (2..=10).collect::<Vec<_>>()
        );
        let (w, c) = r
            .explore_trace(&net, &Valuation::new().with("a", int(2)))
            .unwrap();
        assert_eq!(w.to_string(), "t1@2");
        assert_eq!(c, int(6));
        assert!(r
            .explore_trace(&net, &Valuation::new().with("a", int(1)))
            .is_err());

        let small = ExplorationConfig::integer(IntegerBox::new().with("a", 0, 1));
        let r = int_inf_synth(&net, &goal(&net), &small).unwrap();
        assert_eq!(r.cost, Some(int(8)));
        assert_eq!(members(&net, &r.params(), 0, 1), vec![1]);

        let b = int_bounded_synth(&net, &goal(&net), &int(8), &cfg).unwrap();
        let (w, c) = b
            .explore_trace(&net, &Valuation::new().with("a", int(1)))
            .unwrap();
        assert_eq!(w.to_string(), "t0@1 t1@1");
        assert_eq!(c, int(8));
    }

    #[test]
    fn continuous_exploration_runs_out_of_budget() {
        let net = example_net();
        let cfg = ExplorationConfig::default().with_max_classes(60);
        let r = bounded_synth(&net, &goal(&net), &int(8), &cfg).unwrap();
        assert_eq!(r.status, Status::BudgetExhausted);
        assert_eq!(r.stats.explored, 60);
        let a_ge_1 = Polyhedron::parse(r.param_space().clone(), "1 <= a <= 5").unwrap();
        assert!(union_covers(&r.params(), &a_ge_1).unwrap());
    }

    #[test]
    fn configuration_errors() {
        let net = example_net();
        let g = goal(&net);
        let cfg = ExplorationConfig {
            integer: true,
            ..Default::default()
        };
        assert!(matches!(
            int_inf_synth(&net, &g, &cfg),
            Err(SynthesisError::MissingParameterBound(_))
        ));
        let cfg = ExplorationConfig::default().with_max_classes(0);
        assert!(matches!(
            inf_synth(&net, &g, &cfg),
            Err(SynthesisError::ZeroBudget)
        ));
    }

    #[test]
    fn infeasible_box_gives_an_empty_complete_result() {
        let net = example_net();
        let cfg = ExplorationConfig {
            param_box: Some(IntegerBox::new().with("a", 0, 10)),
            ..Default::default()
        };
        let mut desc = net.description();
        desc.transitions[1].interval = crate::net::StaticInterval::new(
            crate::net::Bound::constant(3),
            crate::net::Bound::constant(3),
        );
        desc.transitions[0].interval.right = crate::net::Bound::constant(2);
        desc.transitions[0].interval.left = crate::net::Bound::param("a");
        let bad = Net::new(desc).unwrap().0;
        let boxed = ExplorationConfig {
            param_box: Some(IntegerBox::new().with("a", 5, 10)),
            ..cfg
        };
        let r = inf_synth(&bad, &goal(&bad), &boxed).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert!(r.cost.is_none() && r.disjuncts.is_empty());
    }

    #[test]
    fn initial_goal_costs_nothing() {
        let net = example_net();
        let g = Goal::parse("p0 >= 1", &net).unwrap();
        let cfg = ExplorationConfig::integer(IntegerBox::new().with("a", 0, 3));
        let r = int_inf_synth(&net, &g, &cfg).unwrap();
        assert_eq!(r.cost, Some(int(0)));
        assert_eq!(members(&net, &r.params(), 0, 3), vec![0, 1, 2, 3]);
    }
}
