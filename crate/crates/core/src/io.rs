//! Text model format, result documents and their renderings.
//!
//! Model files are line oriented, `#` starts a comment:
//!
//! ```text
//! net fig1
//! param a
//! place p0 init 1
//! trans t0 in p0:1 out p0:1 interval [a,a] cost 2
//! rate 2*p0 + 1*p1
//! ```

use std::sync::Arc;

use polyhedra::rational::{int, to_fraction_string};
use polyhedra::{
    parse_constraints, Constraint, LinearExpr, Optimum, Polyhedron, Rational, VariableSpace,
};
use serde::{Deserialize, Serialize};

use crate::net::{
    Bound, Diagnostic, Diagnostics, Net, NetDescription, Span, StaticInterval,
    TransitionDescription,
};
use crate::synthesis::{Disjunct, OptResult, Stats, Status, SynthesisResult};

/// A validated model together with its source-level description.
#[derive(Clone, Debug)]
pub struct ModelDocument {
    pub net: Net,
    /// Parsed description, with source spans.
    pub description: NetDescription,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(i64),
    Punct(char),
}

struct Line {
    no: usize,
    toks: Vec<(usize, Tok)>,
    end: usize,
}

impl Line {
    fn span(&self, col: usize) -> Option<Span> {
        Some(Span {
            line: self.no,
            column: col,
        })
    }

    fn at(&self, i: usize) -> Option<Span> {
        self.span(self.toks.get(i).map_or(self.end, |t| t.0))
    }
}

fn tokenize(no: usize, text: &str) -> Result<Line, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((col, Tok::Word(chars[s..i].iter().collect())));
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[s..i].iter().collect();
            let n = lit.parse().map_err(|_| {
                Diagnostic::error(
                    Some(Span {
                        line: no,
                        column: col,
                    }),
                    format!("number `{lit}` is too large"),
                )
            })?;
            toks.push((col, Tok::Num(n)));
        } else if "[],:*+-".contains(c) {
            toks.push((col, Tok::Punct(c)));
            i += 1;
        } else {
            return Err(Diagnostic::error(
                Some(Span {
                    line: no,
                    column: col,
                }),
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(Line {
        no,
        toks,
        end: chars.len() + 1,
    })
}

struct Cursor<'a> {
    line: &'a Line,
    i: usize,
}

type Parsed<T> = Result<T, Diagnostic>;

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.line.toks.get(self.i).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Parsed<T> {
        Err(Diagnostic::error(self.line.at(self.i), msg))
    }

    fn span(&self) -> Option<Span> {
        self.line.at(self.i)
    }

    fn ident(&mut self, what: &str) -> Parsed<String> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                self.i += 1;
                Ok(w.clone())
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn nat(&mut self, what: &str) -> Parsed<i64> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(*n)
            }
            _ => self.err(format!("expected {what} (a natural number)")),
        }
    }

    fn int(&mut self, what: &str) -> Parsed<i64> {
        let neg = self.eat('-');
        let n = self.nat(what)?;
        Ok(if neg { -n } else { n })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == kw) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> bool {
        self.i >= self.line.toks.len()
    }

    fn finish(&self) -> Parsed<()> {
        if self.done() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn arc_list(cur: &mut Cursor<'_>) -> Parsed<Vec<(String, i64)>> {
    let mut out = Vec::new();
    loop {
        let p = cur.ident("a place name")?;
        cur.expect(':')?;
        out.push((p, cur.nat("an arc weight")?));
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}

fn bound(cur: &mut Cursor<'_>, right: bool) -> Parsed<Bound> {
    match cur.peek() {
        Some(Tok::Num(n)) => {
            let n = *n;
            cur.i += 1;
            Ok(Bound::constant(n))
        }
        Some(Tok::Word(w)) if w == "inf" => {
            if !right {
                return cur.err("the left end of an interval must be finite");
            }
            cur.i += 1;
            Ok(Bound::Infinity)
        }
        Some(Tok::Word(w)) => {
            let w = w.clone();
            cur.i += 1;
            Ok(Bound::Param(w))
        }
        _ => cur.err("expected a natural number, a parameter or `inf`"),
    }
}

fn transition(cur: &mut Cursor<'_>) -> Parsed<TransitionDescription> {
    let span = cur.span();
    let name = cur.ident("a transition name")?;
    let (mut pre, mut post, mut interval, mut cost) = (None, None, None, None);
    while !cur.done() {
        let at = cur.i;
        let kw = cur.ident("`in`, `out`, `interval` or `cost`")?;
        let seen = match kw.as_str() {
            "in" => pre.replace(arc_list(cur)?).is_some(),
            "out" => post.replace(arc_list(cur)?).is_some(),
            "interval" => {
                cur.expect('[')?;
                let l = bound(cur, false)?;
                cur.expect(',')?;
                let r = bound(cur, true)?;
                cur.expect(']')?;
                interval.replace(StaticInterval::new(l, r)).is_some()
            }
            "cost" => cost.replace(cur.int("a discrete cost")?).is_some(),
            _ => {
                cur.i = at;
                return cur.err(format!("unknown transition clause `{kw}`"));
            }
        };
        if seen {
            cur.i = at;
            return cur.err(format!("clause `{kw}` given twice"));
        }
    }
    let Some(interval) = interval else {
        return cur.err(format!("transition `{name}` has no `interval` clause"));
    };
    Ok(TransitionDescription {
        name,
        pre: pre.unwrap_or_default(),
        post: post.unwrap_or_default(),
        interval,
        cost: cost.unwrap_or(0),
        span,
    })
}

fn rate(cur: &mut Cursor<'_>) -> Parsed<(Vec<(String, i64)>, i64)> {
    let mut terms = Vec::new();
    let mut constant = 0;
    let mut first = true;
    loop {
        let neg = if first {
            cur.eat('-')
        } else if cur.eat('+') {
            false
        } else if cur.eat('-') {
            true
        } else {
            return cur.err("expected `+` or `-`");
        };
        first = false;
        let sign = if neg { -1 } else { 1 };
        match cur.peek() {
            Some(Tok::Num(k)) => {
                let k = *k;
                cur.i += 1;
                if cur.eat('*') {
                    terms.push((cur.ident("a place name")?, sign * k));
                } else {
                    constant += sign * k;
                }
            }
            Some(Tok::Word(_)) => terms.push((cur.ident("a place name")?, sign)),
            _ => return cur.err("expected a rate term `<int>*<place>` or a constant"),
        }
        if cur.peek() == Some(&Tok::Punct('*')) {
            return cur.err("nonlinear cost rate: only one place per term is supported");
        }
        if cur.done() {
            return Ok((terms, constant));
        }
    }
}

/// Parses a model. All syntax errors are reported at once; validation errors
/// come from [`Net::new`].
pub fn parse_model(text: &str) -> Result<ModelDocument, Diagnostics> {
    let mut desc = NetDescription::default();
    let mut header: Option<Span> = None;
    let mut rate_seen = false;
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match tokenize(i + 1, raw) {
            Ok(l) => l,
            Err(d) => {
                errors.push(d);
                continue;
            }
        };
        if line.toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { line: &line, i: 0 };
        let span = cur.span();
        let res: Parsed<()> = (|| {
            let kw = cur.ident("a declaration keyword")?;
            match kw.as_str() {
                "net" => {
                    if header.is_some() {
                        cur.i = 0;
                        return cur.err("duplicate `net` header");
                    }
                    desc.name = cur.ident("a net name")?;
                    header = span;
                }
                "param" => desc.params.push((cur.ident("a parameter name")?, span)),
                "place" => {
                    let name = cur.ident("a place name")?;
                    if !cur.keyword("init") {
                        return cur.err("expected `init`");
                    }
                    desc.places
                        .push((name, cur.nat("an initial marking")?, span));
                }
                "trans" => desc.transitions.push(transition(&mut cur)?),
                "rate" => {
                    if rate_seen {
                        cur.i = 0;
                        return cur.err("duplicate `rate` line");
                    }
                    rate_seen = true;
                    let (terms, k) = rate(&mut cur)?;
                    desc.rate = terms;
                    desc.rate_constant = k;
                    desc.rate_span = span;
                }
                other => {
                    cur.i = 0;
                    return cur.err(format!("unknown declaration `{other}`"));
                }
            }
            cur.finish()
        })();
        if let Err(d) = res {
            errors.push(d);
        }
    }
    if header.is_none() {
        errors.insert(
            0,
            Diagnostic::error(Some(Span { line: 1, column: 1 }), "missing net header"),
        );
    }
    if !errors.is_empty() {
        return Err(Diagnostics(errors));
    }
    let (net, warnings) = Net::new(desc.clone())?;
    Ok(ModelDocument {
        net,
        description: desc,
        warnings,
    })
}

/// Writes `net` in the model format; `parse_model` reads it back to an
/// equal net.
pub fn render_model(net: &Net) -> String {
    let d = net.description();
    let mut out = format!("net {}\n", d.name);
    for (p, _) in &d.params {
        out += &format!("param {p}\n");
    }
    for (p, k, _) in &d.places {
        out += &format!("place {p} init {k}\n");
    }
    let arcs = |l: &[(String, i64)]| {
        l.iter()
            .map(|(p, w)| format!("{p}:{w}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    for t in &d.transitions {
        out += &format!("trans {}", t.name);
        if !t.pre.is_empty() {
            out += &format!(" in {}", arcs(&t.pre));
        }
        if !t.post.is_empty() {
            out += &format!(" out {}", arcs(&t.post));
        }
        out += &format!(" interval {} cost {}\n", t.interval, t.cost);
    }
    let mut terms: Vec<String> = d.rate.iter().map(|(p, k)| format!("{k}*{p}")).collect();
    if d.rate_constant != 0 || terms.is_empty() {
        terms.push(d.rate_constant.to_string());
    }
    out += &format!("rate {}\n", terms.join(" + ").replace("+ -", "- "));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryEcho {
    /// `reach` or `mincost`.
    pub kind: String,
    pub goal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_max: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_bounds: Option<String>,
    pub order: String,
    pub max_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDocument {
    pub explored: usize,
    pub subsumed: usize,
    pub goal_hits: usize,
    pub passed: usize,
    pub max_waiting: usize,
}

impl From<Stats> for StatsDocument {
    fn from(s: Stats) -> Self {
        StatsDocument {
            explored: s.explored,
            subsumed: s.subsumed,
            goal_hits: s.goal_hits,
            passed: s.passed,
            max_waiting: s.max_waiting,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjunctDocument {
    /// Linear constraints over the parameters, in the constraint syntax.
    pub constraints: Vec<String>,
    /// Transitions fired to reach the goal class this piece came from.
    pub sequence: Vec<String>,
}

/// Machine-readable result. Rationals are `num/den` strings; `cost` is
/// absent for a reach query and `"inf"` when the goal is unreachable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub query: QueryEcho,
    pub mode: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<String>,
    pub parameters: Vec<String>,
    pub params: Vec<DisjunctDocument>,
    pub stats: StatsDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDocument>,
}

/// A replayed run for one valuation of the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub valuation: String,
    /// Timed word `t@d ...`: wait `d`, then fire `t`.
    pub word: String,
    pub cost: String,
}

fn disjunct_docs(net: &Net, ds: &[Disjunct]) -> Vec<DisjunctDocument> {
    ds.iter()
        .map(|d| DisjunctDocument {
            constraints: d
                .params
                .constraints()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            sequence: d
                .sequence
                .iter()
                .map(|&t| net.transition(t).name.clone())
                .collect(),
        })
        .collect()
}

fn mode_name(integer: bool) -> String {
    if integer { "integer" } else { "continuous" }.to_string()
}

impl ResultDocument {
    pub fn from_reach(net: &Net, query: QueryEcho, r: &SynthesisResult) -> Self {
        ResultDocument {
            query,
            mode: mode_name(r.integer),
            status: r.status.as_str().to_string(),
            cost: None,
            parameters: net.params().to_vec(),
            params: disjunct_docs(net, &r.disjuncts),
            stats: r.stats.into(),
            witness: None,
        }
    }

    pub fn from_mincost(net: &Net, query: QueryEcho, r: &OptResult) -> Self {
        ResultDocument {
            query,
            mode: mode_name(r.integer),
            status: r.status.as_str().to_string(),
            cost: Some(
                r.cost
                    .as_ref()
                    .map_or_else(|| "inf".to_string(), to_fraction_string),
            ),
            parameters: net.params().to_vec(),
            params: disjunct_docs(net, &r.disjuncts),
            stats: r.stats.into(),
            witness: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn complete(&self) -> bool {
        self.status == Status::Complete.as_str()
    }

    /// Parameter space of the disjuncts.
    pub fn space(&self) -> Arc<VariableSpace> {
        Arc::new(VariableSpace::parameters(&self.parameters))
    }

    /// Re-parses every disjunct into a polyhedron.
    pub fn polyhedra(&self) -> Result<Vec<Polyhedron>, polyhedra::GeometryError> {
        let space = self.space();
        self.params
            .iter()
            .map(|d| {
                let cs: Vec<Constraint> = parse_constraints(&d.constraints.join(", "))
                    .map_err(|e| polyhedra::GeometryError::Syntax(e.to_string()))?;
                Polyhedron::from_constraints(space.clone(), &cs)
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn human_rational(r: &Rational) -> String {
    r.to_string()
}

/// `a in [lo, hi]` lines when `p` is a box, `None` otherwise.
fn box_lines(p: &Polyhedron) -> Option<(Vec<String>, Vec<String>)> {
    let mut lines = Vec::new();
    let mut chain = Vec::new();
    let mut bounds = Vec::new();
    for name in p.space().names() {
        let e = LinearExpr::var(name);
        let lo = p.minimize(&e).ok()?;
        let hi = p.maximize(&e).ok()?;
        let lo = match lo {
            Optimum::Finite(x) => Some(x),
            Optimum::Unbounded => None,
        };
        let hi = match hi {
            Optimum::Finite(x) => Some(x),
            Optimum::Unbounded => None,
        };
        if let Some(l) = &lo {
            bounds.push(Constraint::ge(name, l.clone()));
        }
        if let Some(h) = &hi {
            bounds.push(Constraint::le(name, h.clone()));
        }
        let lo_s = lo.as_ref().map_or("-inf".to_string(), human_rational);
        let hi_s = hi.as_ref().map_or("inf".to_string(), human_rational);
        match (&lo, &hi) {
            (Some(l), Some(h)) if l == h => {
                lines.push(format!("{name} = {lo_s}"));
                chain.push(format!("{name} = {lo_s}"));
            }
            (Some(_), Some(_)) => {
                lines.push(format!("{name} in [{lo_s}, {hi_s}]"));
                chain.push(format!("{lo_s} <= {name} <= {hi_s}"));
            }
            (Some(_), None) => {
                lines.push(format!("{name} in [{lo_s}, inf)"));
                chain.push(format!("{name} >= {lo_s}"));
            }
            (None, Some(_)) => {
                lines.push(format!("{name} in (-inf, {hi_s}]"));
                chain.push(format!("{name} <= {hi_s}"));
            }
            (None, None) => lines.push(format!("{name} unconstrained")),
        }
    }
    let hull = Polyhedron::from_constraints(p.space().clone(), &bounds).ok()?;
    if hull.is_subset_of(p).ok()? {
        Some((lines, chain))
    } else {
        None
    }
}

/// Human-readable rendering of a result document.
pub fn render_human(doc: &ResultDocument) -> String {
    let mut out = String::new();
    out += &format!("query: {} `{}`", doc.query.kind, doc.query.goal);
    if let Some(c) = &doc.query.cost_max {
        out += &format!(" with cost <= {}", pretty_fraction(c));
    }
    out += &format!(" ({} mode", doc.mode);
    if let Some(b) = &doc.query.param_bounds {
        out += &format!(", {b}");
    }
    out += ")\n";
    out += &format!("status: {}\n", doc.status);
    if let Some(c) = &doc.cost {
        if c == "inf" {
            out += "minimum cost: inf (goal unreachable)\n";
        } else {
            out += &format!("minimum cost: {}\n", pretty_fraction(c));
        }
    }
    match doc.polyhedra() {
        Ok(ps) if ps.is_empty() => out += "no valuation satisfies the query\n",
        Ok(ps) => {
            out += &format!(
                "parameter valuations ({} disjunct{}):\n",
                ps.len(),
                if ps.len() == 1 { "" } else { "s" }
            );
            for (i, (p, d)) in ps.iter().zip(&doc.params).enumerate() {
                match box_lines(p) {
                    Some((lines, chain)) => {
                        let text = if chain.is_empty() {
                            "true".to_string()
                        } else {
                            chain.join(", ")
                        };
                        out += &format!("  #{}: {}\n", i + 1, text);
                        for l in lines {
                            out += &format!("      {l}\n");
                        }
                    }
                    None => out += &format!("  #{}: {}\n", i + 1, d.constraints.join(", ")),
                }
                if !d.sequence.is_empty() {
                    out += &format!("      via {}\n", d.sequence.join(" "));
                }
            }
        }
        Err(e) => out += &format!("unreadable constraints: {e}\n"),
    }
    if let Some(w) = &doc.witness {
        let word = if w.word.is_empty() {
            "(empty run)"
        } else {
            w.word.as_str()
        };
        out += &format!(
            "witness at {}: {} with cost {}\n",
            w.valuation,
            word,
            pretty_fraction(&w.cost)
        );
    }
    let s = &doc.stats;
    out += &format!(
        "classes: {} explored, {} passed, {} subsumed, {} goal hits\n",
        s.explored, s.passed, s.subsumed, s.goal_hits
    );
    out
}

/// `6/1` → `6`, `43/5` → `43/5`.
fn pretty_fraction(s: &str) -> String {
    s.strip_suffix("/1").unwrap_or(s).to_string()
}

/// Integer points of a box, for listing integer-mode results.
pub fn integer_members(
    doc: &ResultDocument,
    bx: &polyhedra::IntegerBox,
) -> Result<Vec<Vec<i64>>, polyhedra::GeometryError> {
    let ps = doc.polyhedra()?;
    let names: Vec<&str> = doc.parameters.iter().map(String::as_str).collect();
    let mut out = Vec::new();
    for pt in bx.points(&names)? {
        let q: Vec<Rational> = pt.iter().map(|&x| int(x)).collect();
        if polyhedra::union_contains(&ps, &q)? {
            out.push(pt);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::tests::example_net;

    pub(crate) const FIG1: &str = "\
# running example
net fig1
param a
place p0 init 1
place p1 init 1
place p2 init 0
trans t0 in p0:1 out p0:1 interval [a,a] cost 2
trans t1 in p1:1 out p2:1 interval [2,5] cost 0
rate 2*p0 + 1*p1
";

    #[test]
    fn parses_the_example() {
        let doc = parse_model(FIG1).unwrap();
        assert_eq!(doc.net, example_net());
        assert!(doc.warnings.is_empty());
    }

    #[test]
    fn model_round_trip() {
        let net = example_net();
        let text = render_model(&net);
        assert_eq!(parse_model(&text).unwrap().net, net);
    }

    #[test]
    fn diagnostics() {
        let e = parse_model("").unwrap_err();
        assert_eq!(e.0[0].message, "missing net header");
        let e = parse_model("net n\nplace p init 1\nrate 2*p*p\n").unwrap_err();
        assert!(e.0[0].message.contains("nonlinear"));
        assert_eq!(e.0[0].span, Some(Span { line: 3, column: 9 }));
        let e = parse_model("net n\nplace p init x\n").unwrap_err();
        assert_eq!(
            e.0[0].span,
            Some(Span {
                line: 2,
                column: 14
            })
        );
        let e = parse_model("net n\ntrans t in p:1\n").unwrap_err();
        assert!(e.0[0].message.contains("interval"));
        let e = parse_model("net n\nfoo\nplace p init 1 2\n").unwrap_err();
        assert_eq!(e.0.len(), 2);
        // Unbound parameters in bounds are a validation error, not a syntax one.
        let e = parse_model("net n\nplace p init 1\ntrans t in p:1 interval [3,b]\n").unwrap_err();
        assert!(e.0[0].message.contains("undeclared parameter"));
    }

    #[test]
    fn symbolic_feasibility_is_left_to_the_classes() {
        let doc =
            parse_model("net n\nparam a\nplace p init 1\ntrans t in p:1 interval [3,a]\n").unwrap();
        assert_eq!(doc.net.transitions()[0].interval.to_string(), "[3,a]");
    }

    #[test]
    fn human_rendering() {
        let doc = ResultDocument {
            query: QueryEcho {
                kind: "mincost".into(),
                goal: "p2>=1".into(),
                cost_max: None,
                param_bounds: Some("a=0..10".into()),
                order: "bfs".into(),
                max_classes: 100,
            },
            mode: "integer".into(),
            status: "complete".into(),
            cost: Some("6/1".into()),
            parameters: vec!["a".into()],
            params: vec![DisjunctDocument {
                constraints: vec!["2 <= a".into(), "a <= 10".into()],
                sequence: vec!["t1".into()],
            }],
            stats: Stats::default().into(),
            witness: Some(WitnessDocument {
                valuation: "a=2".into(),
                word: "t1@2".into(),
                cost: "6/1".into(),
            }),
        };
        let text = render_human(&doc);
        assert!(text.contains("minimum cost: 6"), "{text}");
        assert!(text.contains("a in [2, 10]"), "{text}");
        assert!(text.contains("2 <= a <= 10"), "{text}");
        assert!(text.contains("witness at a=2: t1@2 with cost 6"), "{text}");
        let empty = ResultDocument {
            params: vec![],
            ..doc.clone()
        };
        assert!(render_human(&empty).contains("no valuation satisfies the query"));
        let back = ResultDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }
}
