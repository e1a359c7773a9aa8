//! Static structure of a parametric cost time Petri net.
//!
//! A [`NetDescription`] is the raw, possibly ill-formed input (as produced by
//! the model parser or by hand). [`Net::new`] validates it and resolves names
//! to indices; a [`Net`] is immutable afterwards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use polyhedra::rational::{int, to_fraction_string};
use polyhedra::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Line and column (both 1-based) in a model source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Option<Span>,
    pub message: String,
}

impl Diagnostic {
    pub fn error(span: Option<Span>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span,
            message: message.into(),
        }
    }

    pub fn warning(span: Option<Span>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            span,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        match self.span {
            Some(s) => write!(f, "{s}: {kind}: {}", self.message),
            None => write!(f, "{kind}: {}", self.message),
        }
    }
}

/// Every diagnostic produced while validating, errors first.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", render_diagnostics(.0))]
pub struct Diagnostics(pub Vec<Diagnostic>);

fn render_diagnostics(ds: &[Diagnostic]) -> String {
    ds.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("transition `{0}` is not enabled")]
    NotEnabled(String),
    #[error("valuation misses parameter `{0}`")]
    MissingParameter(String),
    #[error("valuation gives a value to undeclared parameter `{0}`")]
    UndeclaredParameter(String),
    #[error("parameter `{0}` must be non-negative")]
    NegativeParameter(String),
    #[error("infeasible valuation: interval of `{transition}` becomes [{left}, {right}]")]
    InfeasibleValuation {
        transition: String,
        left: String,
        right: String,
    },
    #[error("bad valuation syntax: {0}")]
    ValuationSyntax(String),
}

/// End point of a static firing interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Const(Rational),
    Param(String),
    /// Only allowed as a right end point.
    Infinity,
}

impl Bound {
    pub fn constant(n: i64) -> Self {
        Bound::Const(int(n))
    }

    pub fn param(name: impl Into<String>) -> Self {
        Bound::Param(name.into())
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Bound::Infinity)
    }

    /// Value under `v`; `None` for infinity.
    pub fn value(&self, v: &Valuation) -> Option<Rational> {
        match self {
            Bound::Const(c) => Some(c.clone()),
            Bound::Param(p) => v.get(p).cloned(),
            Bound::Infinity => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Const(c) => write!(f, "{c}"),
            Bound::Param(p) => write!(f, "{p}"),
            Bound::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaticInterval {
    pub left: Bound,
    pub right: Bound,
}

impl StaticInterval {
    pub fn new(left: Bound, right: Bound) -> Self {
        StaticInterval { left, right }
    }
}

impl fmt::Display for StaticInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.left, self.right)
    }
}

/// Linear cost rate `Σ k_p · m(p) + k_0` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CostRate {
    pub terms: Vec<(usize, i64)>,
    pub constant: i64,
}

impl CostRate {
    pub fn eval(&self, m: &Marking) -> i64 {
        self.terms
            .iter()
            .map(|&(p, k)| k * i64::from(m.0[p]))
            .sum::<i64>()
            + self.constant
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.constant < 0 || self.terms.iter().any(|&(_, k)| k < 0)
    }
}

/// Token count per place, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marking(pub Vec<u32>);

impl Marking {
    pub fn tokens(&self, place: usize) -> u32 {
        self.0[place]
    }

    /// Component-wise `self >= other`.
    pub fn covers(&self, other: &Marking) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

/// Parameter name to non-negative rational value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Valuation(pub BTreeMap<String, Rational>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, value: Rational) -> Self {
        self.0.insert(name.into(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.get(name)
    }

    /// Parses `a=2,b=1/2` (whitespace tolerant; empty text is the empty valuation).
    pub fn parse(text: &str) -> Result<Self, NetError> {
        let mut out = Valuation::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| {
                NetError::ValuationSyntax(format!("expected name=value, got `{item}`"))
            })?;
            let value = polyhedra::rational::parse_rational(value.trim())
                .ok_or_else(|| NetError::ValuationSyntax(format!("bad number in `{item}`")))?;
            out.0.insert(name.trim().to_string(), value);
        }
        Ok(out)
    }

    /// Values in the order of `names`.
    pub fn values_for(&self, names: &[String]) -> Result<Vec<Rational>, NetError> {
        names
            .iter()
            .map(|n| {
                self.get(n)
                    .cloned()
                    .ok_or_else(|| NetError::MissingParameter(n.clone()))
            })
            .collect()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Raw transition as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionDescription {
    pub name: String,
    pub pre: Vec<(String, i64)>,
    pub post: Vec<(String, i64)>,
    pub interval: StaticInterval,
    pub cost: i64,
    pub span: Option<Span>,
}

/// Raw net as written by the user; names are not resolved yet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NetDescription {
    pub name: String,
    pub params: Vec<(String, Option<Span>)>,
    pub places: Vec<(String, i64, Option<Span>)>,
    pub transitions: Vec<TransitionDescription>,
    /// `(place, coefficient)` terms and a constant.
    pub rate: Vec<(String, i64)>,
    pub rate_constant: i64,
    pub rate_span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub pre: Marking,
    pub post: Marking,
    pub interval: StaticInterval,
    pub cost: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    name: String,
    places: Vec<String>,
    params: Vec<String>,
    transitions: Vec<Transition>,
    initial: Marking,
    rate: CostRate,
}

/// Prefix of the clock variable of each transition in class domains.
pub const CLOCK_PREFIX: &str = "theta_";
/// Name of the cost variable in class domains.
pub const COST_VAR: &str = "cost";

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

impl Net {
    /// Validates `desc`. Warnings are returned alongside the net.
    pub fn new(desc: NetDescription) -> Result<(Net, Vec<Diagnostic>), Diagnostics> {
        let mut diags = Vec::new();
        let mut check_name =
            |kind: &str, name: &str, span: Option<Span>, seen: &mut BTreeSet<String>| {
                if !is_identifier(name) {
                    diags.push(Diagnostic::error(
                        span,
                        format!("{kind} name `{name}` is not an identifier"),
                    ));
                }
                if !seen.insert(name.to_string()) {
                    diags.push(Diagnostic::error(
                        span,
                        format!("duplicate {kind} `{name}`"),
                    ));
                }
            };

        let mut seen = BTreeSet::new();
        for (p, span) in &desc.params {
            check_name("parameter", p, *span, &mut seen);
        }
        let mut place_seen = BTreeSet::new();
        for (p, _, span) in &desc.places {
            check_name("place", p, *span, &mut place_seen);
        }
        let mut trans_seen = BTreeSet::new();
        for t in &desc.transitions {
            check_name("transition", &t.name, t.span, &mut trans_seen);
        }
        for (p, span) in &desc.params {
            if p == COST_VAR || p.starts_with(CLOCK_PREFIX) {
                diags.push(Diagnostic::error(
                    *span,
                    format!("parameter name `{p}` is reserved for class variables"),
                ));
            }
        }

        let places: Vec<String> = desc.places.iter().map(|p| p.0.clone()).collect();
        let params: Vec<String> = desc.params.iter().map(|p| p.0.clone()).collect();
        let place_index = |name: &str| places.iter().position(|p| p == name);

        let mut initial = vec![0u32; places.len()];
        for (i, (name, tokens, span)) in desc.places.iter().enumerate() {
            match u32::try_from(*tokens) {
                Ok(n) => initial[i] = n,
                Err(_) => diags.push(Diagnostic::error(
                    *span,
                    format!("initial marking of `{name}` must be a natural number, got {tokens}"),
                )),
            }
        }

        let mut transitions = Vec::new();
        for t in &desc.transitions {
            let mut arcs = |list: &[(String, i64)], what: &str| -> Marking {
                let mut m = vec![0u32; places.len()];
                for (p, w) in list {
                    match place_index(p) {
                        None => diags.push(Diagnostic::error(
                            t.span,
                            format!("transition `{}` refers to undeclared place `{p}` in its {what} arcs", t.name),
                        )),
                        Some(i) => match u32::try_from(*w) {
                            Ok(w) => m[i] += w,
                            Err(_) => diags.push(Diagnostic::error(
                                t.span,
                                format!("negative or oversized arc weight {w} on `{p}` in {what} of `{}`", t.name),
                            )),
                        },
                    }
                }
                Marking(m)
            };
            let pre = arcs(&t.pre, "input");
            let post = arcs(&t.post, "output");
            for (side, b) in [("left", &t.interval.left), ("right", &t.interval.right)] {
                match b {
                    Bound::Param(p) if !params.contains(p) => diags.push(Diagnostic::error(
                        t.span,
                        format!("interval of `{}` uses undeclared parameter `{p}`", t.name),
                    )),
                    Bound::Const(c) if c.is_negative() => diags.push(Diagnostic::error(
                        t.span,
                        format!("interval of `{}` has a negative {side} end {c}", t.name),
                    )),
                    Bound::Infinity if side == "left" => diags.push(Diagnostic::error(
                        t.span,
                        format!("interval of `{}` cannot start at infinity", t.name),
                    )),
                    _ => {}
                }
            }
            if let (Bound::Const(l), Bound::Const(r)) = (&t.interval.left, &t.interval.right) {
                if l > r {
                    diags.push(Diagnostic::error(
                        t.span,
                        format!("interval of `{}` is empty: {l} > {r}", t.name),
                    ));
                }
            }
            if pre.0.iter().all(|&w| w == 0) {
                diags.push(Diagnostic::warning(
                    t.span,
                    format!(
                        "transition `{}` has no input place and is always enabled",
                        t.name
                    ),
                ));
            }
            if post.covers(&pre) && post != pre {
                diags.push(Diagnostic::warning(
                    t.span,
                    format!("transition `{}` produces more tokens than it consumes; the net may be unbounded", t.name),
                ));
            }
            transitions.push(Transition {
                name: t.name.clone(),
                pre,
                post,
                interval: t.interval.clone(),
                cost: t.cost,
            });
        }

        let mut rate = CostRate {
            terms: Vec::new(),
            constant: desc.rate_constant,
        };
        for (p, k) in &desc.rate {
            match place_index(p) {
                Some(i) => rate.terms.push((i, *k)),
                None => diags.push(Diagnostic::error(
                    desc.rate_span,
                    format!("cost rate refers to undeclared place `{p}`"),
                )),
            }
        }

        diags.sort_by_key(|d| (!d.is_error(), d.span));
        if diags.iter().any(Diagnostic::is_error) {
            return Err(Diagnostics(diags));
        }
        let net = Net {
            name: desc.name,
            places,
            params,
            transitions,
            initial: Marking(initial),
            rate,
        };
        Ok((net, diags))
    }

    /// Inverse of [`Net::new`], used for rendering.
    pub fn description(&self) -> NetDescription {
        let arcs = |m: &Marking| -> Vec<(String, i64)> {
            m.0.iter()
                .enumerate()
                .filter(|(_, &w)| w > 0)
                .map(|(i, &w)| (self.places[i].clone(), i64::from(w)))
                .collect()
        };
        NetDescription {
            name: self.name.clone(),
            params: self.params.iter().map(|p| (p.clone(), None)).collect(),
            places: self
                .places
                .iter()
                .zip(&self.initial.0)
                .map(|(p, &n)| (p.clone(), i64::from(n), None))
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionDescription {
                    name: t.name.clone(),
                    pre: arcs(&t.pre),
                    post: arcs(&t.post),
                    interval: t.interval.clone(),
                    cost: t.cost,
                    span: None,
                })
                .collect(),
            rate: self
                .rate
                .terms
                .iter()
                .map(|&(p, k)| (self.places[p].clone(), k))
                .collect(),
            rate_constant: self.rate.constant,
            rate_span: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: usize) -> &Transition {
        &self.transitions[t]
    }

    pub fn initial_marking(&self) -> &Marking {
        &self.initial
    }

    pub fn rate(&self) -> &CostRate {
        &self.rate
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.places.iter().position(|p| p == name)
    }

    pub fn transition_index(&self, name: &str) -> Result<usize, NetError> {
        self.transitions
            .iter()
            .position(|t| t.name == name)
            .ok_or_else(|| NetError::UnknownTransition(name.to_string()))
    }

    /// Name of the clock variable of transition `t`.
    pub fn clock_var(&self, t: usize) -> String {
        format!("{CLOCK_PREFIX}{}", self.transitions[t].name)
    }

    pub fn is_enabled(&self, m: &Marking, t: usize) -> bool {
        m.covers(&self.transitions[t].pre)
    }

    /// Transitions enabled at `m`, in declaration order.
    pub fn enabled(&self, m: &Marking) -> Vec<usize> {
        (0..self.transitions.len())
            .filter(|&t| self.is_enabled(m, t))
            .collect()
    }

    /// `m - Pre(t) + Post(t)`; `t` must be enabled.
    pub fn fire_marking(&self, m: &Marking, t: usize) -> Marking {
        let tr = &self.transitions[t];
        Marking(
            m.0.iter()
                .zip(tr.pre.0.iter().zip(&tr.post.0))
                .map(|(&x, (&pre, &post))| x - pre + post)
                .collect(),
        )
    }

    /// Transitions newly enabled by firing `t` from `m` (intermediate semantics:
    /// disabled by `m - Pre(t)`, or `t` itself).
    pub fn newly_enabled(&self, m: &Marking, t: usize) -> Result<Vec<usize>, NetError> {
        if !self.is_enabled(m, t) {
            return Err(NetError::NotEnabled(self.transitions[t].name.clone()));
        }
        let tr = &self.transitions[t];
        let intermediate = Marking(m.0.iter().zip(&tr.pre.0).map(|(&x, &p)| x - p).collect());
        let next = self.fire_marking(m, t);
        Ok(self
            .enabled(&next)
            .into_iter()
            .filter(|&u| u == t || !self.is_enabled(&intermediate, u))
            .collect())
    }

    /// True when some discrete cost or rate coefficient is negative, so that
    /// run costs are not obviously bounded from below.
    pub fn has_negative_costs(&self) -> bool {
        self.rate.has_negative_coefficient() || self.transitions.iter().any(|t| t.cost < 0)
    }

    /// Checks that `v` is total, non-negative and mentions only declared
    /// parameters.
    pub fn check_valuation(&self, v: &Valuation) -> Result<(), NetError> {
        for p in &self.params {
            match v.get(p) {
                None => return Err(NetError::MissingParameter(p.clone())),
                Some(x) if x.is_negative() => return Err(NetError::NegativeParameter(p.clone())),
                Some(_) => {}
            }
        }
        if let Some(extra) = v.0.keys().find(|k| !self.params.contains(k)) {
            return Err(NetError::UndeclaredParameter(extra.clone()));
        }
        Ok(())
    }

    /// The parameter-free net `v(N)`.
    pub fn instantiate(&self, v: &Valuation) -> Result<Net, NetError> {
        self.check_valuation(v)?;
        let mut out = self.clone();
        out.params.clear();
        for t in &mut out.transitions {
            let subst = |b: &Bound| match b {
                Bound::Param(p) => Bound::Const(v.get(p).expect("checked").clone()),
                other => other.clone(),
            };
            t.interval = StaticInterval::new(subst(&t.interval.left), subst(&t.interval.right));
            if let (Bound::Const(l), Bound::Const(r)) = (&t.interval.left, &t.interval.right) {
                if l > r {
                    return Err(NetError::InfeasibleValuation {
                        transition: t.name.clone(),
                        left: to_fraction_string(l),
                        right: to_fraction_string(r),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Renders a marking as `{p0, p1}` listing marked places (with counts above one).
    pub fn marking_string(&self, m: &Marking) -> String {
        let parts: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(i, &n)| {
                    if n == 1 {
                        self.places[i].clone()
                    } else {
                        format!("{}:{n}", self.places[i])
                    }
                })
                .collect();
        format!("{{{}}}", parts.join(", "))
    }
}
