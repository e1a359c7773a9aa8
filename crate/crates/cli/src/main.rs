//! `pctpn`: parameter synthesis for parametric cost time Petri nets.
//!
//! Exit codes: 0 complete result, 3 exploration budget exhausted, 4 complete
//! but empty (no valuation, goal unreachable), 2 usage error, 1 model or
//! runtime error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pctpn::io::{render_human, QueryEcho, ResultDocument, WitnessDocument};
use pctpn::polyhedra::rational::{parse_rational, to_fraction_string};
use pctpn::polyhedra::{IntegerBox, Rational};
use pctpn::synthesis::{bounded_synth_with_progress, inf_synth_with_progress, Progress};
use pctpn::{
    parse_model, render_model, replay_trace, ExplorationConfig, Goal, ModelDocument, SearchOrder,
    TimedWord, Valuation,
};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_EMPTY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pctpn",
    version,
    about = "Cost-optimal parameter synthesis for parametric cost time Petri nets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Valuations for which the goal is reachable with cost at most --cost-max.
    Reach(ReachArgs),
    /// Minimum cost of reaching the goal and the valuations achieving it.
    Mincost(QueryArgs),
    /// Replay a timed word under a parameter valuation.
    Simulate(SimulateArgs),
    /// Validate a model and print it in normal form.
    Check {
        /// Model file.
        model: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Bfs,
    Dfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args)]
struct QueryArgs {
    /// Model file.
    model: PathBuf,
    /// Goal predicate, e.g. "p2 >= 1 and p0 == 0".
    #[arg(long)]
    goal: String,
    /// Restrict to integer parameter valuations (needs --param-bounds).
    #[arg(long, requires = "param_bounds")]
    integer: bool,
    /// Integer parameter bounds, e.g. a=0..10,b=1..3.
    #[arg(long, value_parser = parse_bounds)]
    param_bounds: Option<IntegerBox>,
    #[arg(long, value_enum, default_value = "bfs")]
    order: Order,
    /// Classes to explore before returning a partial result.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_classes: u64,
    /// Largest token count allowed in any place.
    #[arg(long, default_value_t = 1_000)]
    marking_cap: u32,
    /// Assert that run costs are bounded below (required with negative costs or rates).
    #[arg(long)]
    assume_cost_lower_bound: bool,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Also print a replayed witness run for this valuation, e.g. a=2.
    #[arg(long, value_parser = parse_valuation)]
    witness: Option<Valuation>,
    /// Report exploration progress on stderr.
    #[arg(long)]
    progress: bool,
}

#[derive(Args)]
struct ReachArgs {
    #[command(flatten)]
    query: QueryArgs,
    /// Cost bound (integer or fraction such as 17/2).
    #[arg(long, value_parser = parse_cost)]
    cost_max: Rational,
}

#[derive(Args)]
struct SimulateArgs {
    /// Model file.
    model: PathBuf,
    /// Parameter valuation, e.g. a=2.
    #[arg(long, value_parser = parse_valuation, default_value = "")]
    valuation: Valuation,
    /// Timed word, e.g. "t0@2 t1@0.2" (wait, then fire).
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

fn parse_bounds(text: &str) -> Result<IntegerBox, String> {
    let mut bx = IntegerBox::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, range) = item
            .split_once('=')
            .ok_or(format!("expected name=lo..hi, got `{item}`"))?;
        let (lo, hi) = range
            .split_once("..")
            .ok_or(format!("expected lo..hi in `{item}`"))?;
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad lower bound in `{item}`"))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad upper bound in `{item}`"))?;
        if lo > hi || lo < 0 {
            return Err(format!("empty or negative range in `{item}`"));
        }
        bx.insert(name.trim(), lo, hi);
    }
    if bx.is_empty() {
        return Err("no bounds given".into());
    }
    Ok(bx)
}

fn parse_cost(text: &str) -> Result<Rational, String> {
    parse_rational(text).ok_or(format!("`{text}` is not a rational number"))
}

fn parse_valuation(text: &str) -> Result<Valuation, String> {
    Valuation::parse(text).map_err(|e| e.to_string())
}

/// Failure carrying its exit code.
struct Failure(u8, String);

fn load(path: &Path) -> Result<ModelDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_ERROR, format!("{}: {e}", path.display())))?;
    let doc = parse_model(&text).map_err(|ds| {
        let lines: Vec<String> =
            ds.0.iter()
                .map(|d| format!("{}:{d}", path.display()))
                .collect();
        Failure(EXIT_ERROR, lines.join("\n"))
    })?;
    for w in &doc.warnings {
        eprintln!("{}:{w}", path.display());
    }
    Ok(doc)
}

fn config(q: &QueryArgs) -> ExplorationConfig {
    ExplorationConfig {
        integer: q.integer,
        param_box: q.param_bounds.clone(),
        order: match q.order {
            Order::Bfs => SearchOrder::BreadthFirst,
            Order::Dfs => SearchOrder::DepthFirst,
        },
        max_classes: usize::try_from(q.max_classes).unwrap_or(usize::MAX),
        marking_cap: q.marking_cap,
        assert_cost_lower_bounded: q.assume_cost_lower_bound,
    }
}

fn echo(kind: &str, q: &QueryArgs, cost_max: Option<&Rational>) -> QueryEcho {
    QueryEcho {
        kind: kind.into(),
        goal: q.goal.clone(),
        cost_max: cost_max.map(to_fraction_string),
        param_bounds: q.param_bounds.as_ref().map(|b| b.to_string()),
        order: match q.order {
            Order::Bfs => "bfs",
            Order::Dfs => "dfs",
        }
        .into(),
        max_classes: usize::try_from(q.max_classes).unwrap_or(usize::MAX),
    }
}

fn observer(enabled: bool) -> impl FnMut(&Progress) {
    move |p: &Progress| {
        if enabled && p.stats.explored.is_multiple_of(500) {
            let best = p
                .best_cost
                .as_ref()
                .map_or("none".to_string(), |c| c.to_string());
            eprintln!(
                "explored {} classes, {} waiting, {} subsumed, best cost {best}",
                p.stats.explored, p.waiting, p.stats.subsumed
            );
        }
    }
}

fn emit(doc: &ResultDocument, format: Format) -> u8 {
    match format {
        Format::Human => print!("{}", render_human(doc)),
        Format::Json => println!("{}", doc.to_json()),
    }
    if !doc.complete() {
        EXIT_BUDGET
    } else if doc.is_empty() {
        EXIT_EMPTY
    } else {
        EXIT_OK
    }
}

fn witness_doc(v: &Valuation, word: &TimedWord, cost: &Rational) -> WitnessDocument {
    WitnessDocument {
        valuation: v.to_string(),
        word: word.to_string(),
        cost: to_fraction_string(cost),
    }
}

fn goal_of(q: &QueryArgs, doc: &ModelDocument) -> Result<Goal, Failure> {
    Goal::parse(&q.goal, &doc.net).map_err(|e| Failure(EXIT_USAGE, format!("--goal: {e}")))
}

fn reach(args: &ReachArgs) -> Result<u8, Failure> {
    let q = &args.query;
    let doc = load(&q.model)?;
    let goal = goal_of(q, &doc)?;
    let r = bounded_synth_with_progress(
        &doc.net,
        &goal,
        &args.cost_max,
        &config(q),
        &mut observer(q.progress),
    )
    .map_err(|e| Failure(EXIT_ERROR, e.to_string()))?;
    let mut out = ResultDocument::from_reach(&doc.net, echo("reach", q, Some(&args.cost_max)), &r);
    if let Some(v) = &q.witness {
        let (word, cost) = r
            .explore_trace(&doc.net, v)
            .map_err(|e| Failure(EXIT_ERROR, e.to_string()))?;
        out.witness = Some(witness_doc(v, &word, &cost));
    }
    Ok(emit(&out, q.format))
}

fn mincost(q: &QueryArgs) -> Result<u8, Failure> {
    let doc = load(&q.model)?;
    let goal = goal_of(q, &doc)?;
    let r = inf_synth_with_progress(&doc.net, &goal, &config(q), &mut observer(q.progress))
        .map_err(|e| Failure(EXIT_ERROR, e.to_string()))?;
    let mut out = ResultDocument::from_mincost(&doc.net, echo("mincost", q, None), &r);
    if let Some(v) = &q.witness {
        let (word, cost) = r
            .explore_trace(&doc.net, v)
            .map_err(|e| Failure(EXIT_ERROR, e.to_string()))?;
        out.witness = Some(witness_doc(v, &word, &cost));
    }
    Ok(emit(&out, q.format))
}

fn simulate(args: &SimulateArgs) -> Result<u8, Failure> {
    let doc = load(&args.model)?;
    let net = &doc.net;
    let word =
        TimedWord::parse(&args.word).map_err(|e| Failure(EXIT_USAGE, format!("--word: {e}")))?;
    let trace = replay_trace(net, &args.valuation, &word)
        .map_err(|e| Failure(EXIT_ERROR, e.to_string()))?;
    let mut labels = vec!["start".to_string()];
    for s in &word.0 {
        labels.push(format!("wait {}", s.delay));
        labels.push(format!("fire {}", s.transition));
    }
    match args.format {
        Format::Human => {
            for (label, state) in labels.iter().zip(&trace) {
                println!("{label:>12}  {}", state.describe(net));
            }
            let last = trace.last().expect("replay returns the initial state");
            println!(
                "final marking {}, cost {}",
                net.marking_string(&last.marking),
                last.cost
            );
        }
        Format::Json => {
            let steps: Vec<_> = labels
                .iter()
                .zip(&trace)
                .map(|(label, s)| {
                    serde_json::json!({
                        "step": label,
                        "marking": net.marking_string(&s.marking),
                        "cost": to_fraction_string(&s.cost),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&steps).expect("plain json")
            );
        }
    }
    Ok(EXIT_OK)
}

fn check(model: &Path) -> Result<u8, Failure> {
    let doc = load(model)?;
    print!("{}", render_model(&doc.net));
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Reach(a) => reach(a),
        Command::Mincost(q) => mincost(q),
        Command::Simulate(a) => simulate(a),
        Command::Check { model } => check(model),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
