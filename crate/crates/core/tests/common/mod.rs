//! Shared fixtures: the running example and a generator of small safe nets.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use pctpn::net::{Bound, NetDescription, StaticInterval, TransitionDescription};
use pctpn::polyhedra::rational::int;
use pctpn::{parse_model, Marking, Net, Valuation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const FIG1: &str = include_str!("../../../../models/fig1.pctpn");

pub fn fig1() -> Net {
    parse_model(FIG1).expect("example model parses").net
}

pub fn va(a: i64) -> Valuation {
    Valuation::new().with("a", int(a))
}

/// Untimed reachability; `None` once a marking exceeds one token per place
/// or more than `limit` markings are found.
pub fn safe_markings(net: &Net, limit: usize) -> Option<BTreeSet<Marking>> {
    let mut seen = BTreeSet::from([net.initial_marking().clone()]);
    let mut queue = VecDeque::from([net.initial_marking().clone()]);
    while let Some(m) = queue.pop_front() {
        for t in net.enabled(&m) {
            let m2 = net.fire_marking(&m, t);
            if m2.0.iter().any(|&k| k > 1) {
                return None;
            }
            if seen.insert(m2.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(m2);
            }
        }
    }
    Some(seen)
}

fn random_bound(rng: &mut StdRng, param: bool) -> Bound {
    if param && rng.gen_bool(0.35) {
        Bound::param("a")
    } else {
        Bound::constant(rng.gen_range(0..=3))
    }
}

/// A random candidate: up to 4 places and 4 transitions, constants at most
/// 3, parameter `a`, rate coefficients and discrete costs in [0, 2].
pub fn random_net(rng: &mut StdRng) -> Net {
    let n_places = rng.gen_range(2..=4);
    let n_trans = rng.gen_range(2..=4);
    let places: Vec<String> = (0..n_places).map(|i| format!("p{i}")).collect();
    let mut initial: Vec<i64> = (0..n_places)
        .map(|_| i64::from(rng.gen_bool(0.5)))
        .collect();
    initial[0] = 1;
    let pick = |rng: &mut StdRng, lo: usize| -> Vec<(String, i64)> {
        let k = rng.gen_range(lo..=2);
        let mut chosen = BTreeSet::new();
        for _ in 0..k {
            chosen.insert(rng.gen_range(0..n_places));
        }
        chosen.into_iter().map(|i| (places[i].clone(), 1)).collect()
    };
    let transitions = (0..n_trans)
        .map(|i| {
            let pre = pick(rng, 1);
            let post = pick(rng, 0);
            let left = random_bound(rng, true);
            let right = loop {
                let r = match rng.gen_range(0..6) {
                    0 => Bound::Infinity,
                    1 => Bound::param("a"),
                    _ => Bound::constant(rng.gen_range(0..=3)),
                };
                match (&left, &r) {
                    (Bound::Const(l), Bound::Const(h)) if l > h => continue,
                    _ => break r,
                }
            };
            TransitionDescription {
                name: format!("t{i}"),
                pre,
                post,
                interval: StaticInterval::new(left, right),
                cost: rng.gen_range(0..=2),
                span: None,
            }
        })
        .collect();
    let desc = NetDescription {
        name: "random".into(),
        params: vec![("a".into(), None)],
        places: places
            .iter()
            .zip(&initial)
            .map(|(p, &k)| (p.clone(), k, None))
            .collect(),
        transitions,
        rate: places
            .iter()
            .map(|p| (p.clone(), rng.gen_range(0..=2)))
            .filter(|(_, k)| *k != 0)
            .collect(),
        rate_constant: 0,
        rate_span: None,
    };
    Net::new(desc).expect("generated nets are well formed").0
}

/// `count` safe nets from a fixed seed that use the parameter, each paired
/// with a goal place that is initially empty and reachable in the untimed
/// net.
pub fn safe_suite(seed: u64, count: usize) -> Vec<(Net, String)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let net = random_net(&mut rng);
        let uses_param = net.transitions().iter().any(|t| {
            matches!(t.interval.left, Bound::Param(_))
                || matches!(t.interval.right, Bound::Param(_))
        });
        if !uses_param {
            continue;
        }
        let Some(reach) = safe_markings(&net, 64) else {
            continue;
        };
        let candidates: Vec<usize> = (0..net.places().len())
            .filter(|&p| {
                net.initial_marking().tokens(p) == 0 && reach.iter().any(|m| m.tokens(p) > 0)
            })
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let goal = candidates[rng.gen_range(0..candidates.len())];
        out.push((net.clone(), format!("{} >= 1", net.places()[goal])));
    }
    out
}
