//! Concrete semantics at a fixed parameter valuation.
//!
//! States carry the dynamic firing interval of every enabled transition and
//! the accumulated cost. This is the ground truth the symbolic engine is
//! tested against, and the replay engine behind `simulate`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};
use polyhedra::rational::{int, is_integer, parse_rational};
use polyhedra::Rational;
use thiserror::Error;

use crate::goal::Goal;
use crate::net::{Marking, Net, NetError, Valuation};

/// Closed interval `[lo, hi]`; `hi = None` is `+inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Option<Rational>,
}

impl Interval {
    /// `I ⊖ d`: shift down by `d`, clamping the left end at zero.
    fn shifted(&self, d: &Rational) -> Interval {
        let lo = &self.lo - d;
        Interval {
            lo: if lo.is_negative() {
                Rational::zero()
            } else {
                lo
            },
            hi: self.hi.as_ref().map(|h| h - d),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("deadline violated: `{transition}` must fire within {deadline}, cannot delay {delay}")]
    DeadlineViolated {
        transition: String,
        deadline: Rational,
        delay: Rational,
    },
    #[error("negative delay {0}")]
    NegativeDelay(Rational),
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
    #[error("transition `{transition}` is not firable yet: {remaining} time units remain")]
    NotFirable {
        transition: String,
        remaining: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("step {index} (`{step}`): {source}")]
pub struct ReplayError {
    /// Zero-based index of the failing step in the word.
    pub index: usize,
    pub step: String,
    pub source: SemanticsError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteState {
    pub marking: Marking,
    /// Dynamic interval of every enabled transition.
    pub intervals: BTreeMap<usize, Interval>,
    pub cost: Rational,
    pub valuation: Valuation,
}

fn static_interval(net: &Net, t: usize, v: &Valuation) -> Interval {
    let iv = &net.transition(t).interval;
    Interval {
        lo: iv
            .left
            .value(v)
            .expect("left end is finite and valuation total"),
        hi: iv.right.value(v),
    }
}

impl ConcreteState {
    /// `(m0, I0, 0, v)`.
    pub fn initial(net: &Net, v: &Valuation) -> Result<ConcreteState, SemanticsError> {
        net.instantiate(v)?;
        let marking = net.initial_marking().clone();
        let intervals = net
            .enabled(&marking)
            .into_iter()
            .map(|t| (t, static_interval(net, t, v)))
            .collect();
        Ok(ConcreteState {
            marking,
            intervals,
            cost: Rational::zero(),
            valuation: v.clone(),
        })
    }

    /// Lets `d` time units elapse.
    pub fn delay(&self, net: &Net, d: &Rational) -> Result<ConcreteState, SemanticsError> {
        if d.is_negative() {
            return Err(SemanticsError::NegativeDelay(d.clone()));
        }
        for (&t, iv) in &self.intervals {
            if let Some(h) = &iv.hi {
                if d > h {
                    return Err(SemanticsError::DeadlineViolated {
                        transition: net.transition(t).name.clone(),
                        deadline: h.clone(),
                        delay: d.clone(),
                    });
                }
            }
        }
        Ok(ConcreteState {
            marking: self.marking.clone(),
            intervals: self
                .intervals
                .iter()
                .map(|(&t, iv)| (t, iv.shifted(d)))
                .collect(),
            cost: &self.cost + int(net.rate().eval(&self.marking)) * d,
            valuation: self.valuation.clone(),
        })
    }

    /// Fires `t` now.
    pub fn fire(&self, net: &Net, t: usize) -> Result<ConcreteState, SemanticsError> {
        let name = || net.transition(t).name.clone();
        let iv = self
            .intervals
            .get(&t)
            .ok_or_else(|| SemanticsError::NotEnabled(name()))?;
        if iv.lo.is_positive() {
            return Err(SemanticsError::NotFirable {
                transition: name(),
                remaining: iv.lo.clone(),
            });
        }
        let marking = net.fire_marking(&self.marking, t);
        let fresh = net.newly_enabled(&self.marking, t)?;
        let intervals = net
            .enabled(&marking)
            .into_iter()
            .map(|u| {
                let iv = if fresh.contains(&u) {
                    static_interval(net, u, &self.valuation)
                } else {
                    self.intervals[&u].clone()
                };
                (u, iv)
            })
            .collect();
        Ok(ConcreteState {
            marking,
            intervals,
            cost: &self.cost + int(net.transition(t).cost),
            valuation: self.valuation.clone(),
        })
    }

    /// Transitions that can fire right now.
    pub fn firable_now(&self) -> Vec<usize> {
        self.intervals
            .iter()
            .filter(|(_, iv)| iv.lo.is_zero())
            .map(|(&t, _)| t)
            .collect()
    }

    pub fn describe(&self, net: &Net) -> String {
        let ivs: Vec<String> = self
            .intervals
            .iter()
            .map(|(&t, iv)| format!("I({})={iv}", net.transition(t).name))
            .collect();
        format!(
            "{} {} cost {}",
            net.marking_string(&self.marking),
            ivs.join(" "),
            self.cost
        )
    }
}

/// One `t@d` step: wait `d`, then fire `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub transition: String,
    pub delay: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimedWord(pub Vec<Step>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("timed word, step {index}: {message}")]
pub struct WordSyntaxError {
    pub index: usize,
    pub message: String,
}

impl TimedWord {
    /// Parses whitespace separated `t@d` steps, e.g. `t0@2 t1@0.2`.
    pub fn parse(text: &str) -> Result<TimedWord, WordSyntaxError> {
        text.split_whitespace()
            .enumerate()
            .map(|(index, item)| {
                let (t, d) = item.split_once('@').ok_or_else(|| WordSyntaxError {
                    index,
                    message: format!("expected `transition@delay`, got `{item}`"),
                })?;
                let delay = parse_rational(d).ok_or_else(|| WordSyntaxError {
                    index,
                    message: format!("bad delay `{d}`"),
                })?;
                if t.is_empty() {
                    return Err(WordSyntaxError {
                        index,
                        message: "missing transition name".into(),
                    });
                }
                Ok(Step {
                    transition: t.to_string(),
                    delay,
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TimedWord)
    }
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| format!("{}@{}", s.transition, s.delay))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// States visited by a replay: the initial one, then after each delay and
/// after each firing.
pub fn replay_trace(
    net: &Net,
    v: &Valuation,
    w: &TimedWord,
) -> Result<Vec<ConcreteState>, ReplayError> {
    let wrap = |index: usize, step: String| {
        move |source: SemanticsError| ReplayError {
            index,
            step,
            source,
        }
    };
    let mut states = vec![ConcreteState::initial(net, v).map_err(wrap(0, String::new()))?];
    for (i, step) in w.0.iter().enumerate() {
        let label = format!("{}@{}", step.transition, step.delay);
        let t = net
            .transition_index(&step.transition)
            .map_err(|e| wrap(i, label.clone())(e.into()))?;
        let last = states.last().expect("non-empty");
        let waited = last
            .delay(net, &step.delay)
            .map_err(wrap(i, label.clone()))?;
        let fired = waited.fire(net, t).map_err(wrap(i, label))?;
        states.push(waited);
        states.push(fired);
    }
    Ok(states)
}

/// Final state of a replay.
pub fn replay(net: &Net, v: &Valuation, w: &TimedWord) -> Result<ConcreteState, ReplayError> {
    Ok(replay_trace(net, v, w)?.pop().expect("non-empty"))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error("oracle needs integer interval bounds; `{0}` has a non-integer bound")]
    NonIntegerBound(String),
    #[error("oracle node budget of {0} states exceeded")]
    BudgetExceeded(usize),
}

/// Answer of the brute-force oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    /// Minimum cost of a run reaching the goal, if one was found.
    pub min_cost: Option<Rational>,
    /// True when the search ran to a fixed point before the firing budget, in
    /// which case `min_cost` is exact over all runs.
    pub exhaustive: bool,
}

type StateKey = (Marking, Vec<(usize, Interval)>);

fn key(s: &ConcreteState) -> StateKey {
    (
        s.marking.clone(),
        s.intervals.iter().map(|(&t, iv)| (t, iv.clone())).collect(),
    )
}

/// Minimum cost to reach `goal` at valuation `v`, exploring integer delays
/// only.
///
/// Layered label-correcting search: layer `k` holds states reached with `k`
/// firings, and a state is expanded only when it improves the best cost
/// recorded for it. Delays range over `0..=D` where `D` is the earliest
/// deadline, or the latest earliest-firing time when no deadline exists.
/// Sound for nets with integer bounds since optimal runs can be taken at
/// integer dates; exact when `exhaustive` is reported.
pub fn oracle_min_cost(
    net: &Net,
    v: &Valuation,
    goal: &Goal,
    max_firings: usize,
    node_cap: usize,
) -> Result<OracleOutcome, OracleError> {
    let inst = net.instantiate(v).map_err(SemanticsError::from)?;
    for t in inst.transitions() {
        for b in [&t.interval.left, &t.interval.right] {
            if let crate::net::Bound::Const(c) = b {
                if !is_integer(c) {
                    return Err(OracleError::NonIntegerBound(t.name.clone()));
                }
            }
        }
    }
    let s0 = ConcreteState::initial(net, v)?;
    let mut best: HashMap<StateKey, Rational> = HashMap::new();
    let mut min_cost: Option<Rational> = None;
    let record = |s: &ConcreteState, min_cost: &mut Option<Rational>| {
        if goal.holds(&s.marking) && min_cost.as_ref().is_none_or(|c| s.cost < *c) {
            *min_cost = Some(s.cost.clone());
        }
    };
    record(&s0, &mut min_cost);
    best.insert(key(&s0), s0.cost.clone());
    let mut frontier = vec![s0];
    let mut nodes = 0usize;
    for _ in 0..max_firings {
        let mut next: HashMap<StateKey, ConcreteState> = HashMap::new();
        for s in &frontier {
            nodes += 1;
            if nodes > node_cap {
                return Err(OracleError::BudgetExceeded(node_cap));
            }
            let deadline = s.intervals.values().filter_map(|iv| iv.hi.clone()).min();
            let horizon = deadline.unwrap_or_else(|| {
                s.intervals
                    .values()
                    .map(|iv| iv.lo.clone())
                    .max()
                    .unwrap_or_else(Rational::zero)
            });
            let mut d = Rational::zero();
            while d <= horizon {
                let waited = s.delay(net, &d)?;
                for t in waited.firable_now() {
                    let fired = waited.fire(net, t)?;
                    let k = key(&fired);
                    if best.get(&k).is_some_and(|c| *c <= fired.cost) {
                        continue;
                    }
                    record(&fired, &mut min_cost);
                    best.insert(k.clone(), fired.cost.clone());
                    next.insert(k, fired);
                }
                d += int(1);
            }
        }
        if next.is_empty() {
            return Ok(OracleOutcome {
                min_cost,
                exhaustive: true,
            });
        }
        frontier = next.into_values().collect();
    }
    Ok(OracleOutcome {
        min_cost,
        exhaustive: frontier.is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::example_net;
    use polyhedra::rational::ratio;

    fn va(a: i64) -> Valuation {
        Valuation::new().with("a", int(a))
    }

    #[test]
    fn example_run_costs() {
        let net = example_net();
        let w = TimedWord::parse("t0@2 t1@0.2").unwrap();
        let trace = replay_trace(&net, &va(2), &w).unwrap();
        let costs: Vec<_> = trace.iter().map(|s| s.cost.clone()).collect();
        assert_eq!(
            costs,
            vec![int(0), int(6), int(8), ratio(43, 5), ratio(43, 5)]
        );
        assert_eq!(
            trace[1].intervals[&0],
            Interval {
                lo: int(0),
                hi: Some(int(0))
            }
        );
        assert_eq!(
            trace[1].intervals[&1],
            Interval {
                lo: int(0),
                hi: Some(int(3))
            }
        );
        assert_eq!(
            trace[2].intervals[&0],
            Interval {
                lo: int(2),
                hi: Some(int(2))
            }
        );
        assert_eq!(trace[4].marking, Marking(vec![1, 0, 1]));
    }

    #[test]
    fn replay_reports_failing_step() {
        let net = example_net();
        let err = replay(&net, &va(2), &TimedWord::parse("t0@2 t0@3").unwrap()).unwrap_err();
        assert_eq!(err.index, 1);
        assert!(matches!(
            err.source,
            SemanticsError::DeadlineViolated { .. }
        ));
        let err = replay(&net, &va(2), &TimedWord::parse("t1@1").unwrap()).unwrap_err();
        assert!(matches!(err.source, SemanticsError::NotFirable { .. }));
        let err = replay(&net, &va(2), &TimedWord::parse("t9@1").unwrap()).unwrap_err();
        assert!(matches!(
            err.source,
            SemanticsError::Net(NetError::UnknownTransition(_))
        ));
        assert_eq!(
            replay(&net, &va(2), &TimedWord::default()).unwrap(),
            ConcreteState::initial(&net, &va(2)).unwrap()
        );
    }

    #[test]
    fn delays_compose() {
        let net = example_net();
        let s = ConcreteState::initial(&net, &va(5)).unwrap();
        let a = s
            .delay(&net, &ratio(1, 2))
            .unwrap()
            .delay(&net, &ratio(3, 2))
            .unwrap();
        let b = s.delay(&net, &int(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(s.delay(&net, &int(0)).unwrap(), s);
    }

    #[test]
    fn oracle_minimum_costs() {
        let net = example_net();
        let goal = Goal::parse("p2 >= 1", &net).unwrap();
        let out = oracle_min_cost(&net, &va(2), &goal, 3, 100_000).unwrap();
        assert_eq!(out.min_cost, Some(int(6)));
        let out = oracle_min_cost(&net, &va(1), &goal, 10, 100_000).unwrap();
        assert_eq!(out.min_cost, Some(int(8)));
        assert!(out.exhaustive);
        let init = Goal::parse("p1 >= 1", &net).unwrap();
        assert_eq!(
            oracle_min_cost(&net, &va(1), &init, 3, 1000)
                .unwrap()
                .min_cost,
            Some(int(0))
        );
    }

    #[test]
    fn timed_word_syntax() {
        let w = TimedWord::parse("t0@2  t1@1/5").unwrap();
        assert_eq!(w.0[1].delay, ratio(1, 5));
        assert_eq!(w.to_string(), "t0@2 t1@1/5");
        assert_eq!(TimedWord::parse("t0@2 t1").unwrap_err().index, 1);
        assert!(TimedWord::parse("@2").is_err());
    }
}
