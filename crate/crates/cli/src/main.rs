use std::collections::BTreeSet;
use std::process::ExitCode;

use cardball::ballean::{ball, cellular_radius, path_ball_window, BallKind, Preset, WindowBallean};
use cardball::cardinal::{coarse_equivalent, CardinalDesc};
use cardball::constructions::{
    sn_member, sn_small_witness, thin_cell_element, thin_cell_index, thin_isolation_check, ThinCellIndex,
};
use cardball::sets::{
    classify, delta, delta_window, large_partition_cell, large_partition_spec, verify_delta_large, DeltaResult,
    Property, Realization, SetSpec,
};
use cardball::verify::{self, Suite, SuiteConfig};
use cardball::{Error, Ordinal, OrdinalGrid, OrdinalInterval};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const DEFAULT_WINDOW: u64 = 10_000;
const DEFAULT_RADIUS: u64 = 64;
const DEFAULT_BALLEAN_WINDOW: usize = 50;

#[derive(Parser)]
#[command(name = "cardball", version, about = "Ordinals, cardinal balleans and their asymptotic invariants")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Window size N for windowed evidence and verification suites
    #[arg(long, global = true, env = "CARDBALL_WINDOW")]
    window: Option<u64>,
    /// Radius cap D for windowed evidence and window balleans
    #[arg(long, global = true)]
    radius_cap: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report per-check runtimes (output is then no longer reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic and interval queries
    #[command(subcommand)]
    Ord(OrdCommand),
    /// Ball of a radius around an ordinal: KIND is fwd, bwd or sym
    Ball {
        kind: BallKind,
        x: Ordinal,
        radius: Ordinal,
        /// Also report whether this ordinal lies in the ball
        #[arg(long)]
        contains: Option<Ordinal>,
    },
    /// The radius whose balls contain every path of the given step
    Cellular { radius: Ordinal },
    /// Points of {0..N} reachable from X by steps of at most RADIUS
    Path { x: u64, radius: u64, n: u64 },
    /// Check the ballean axioms on a preset window ballean
    Axioms {
        preset: Preset,
        n: Option<usize>,
        r: Option<usize>,
    },
    /// Membership of a natural in a set description
    Member { set: SetSpec, n: u64 },
    /// Exact classification plus windowed evidence
    Classify { set: SetSpec },
    /// The combinatorial derivation of a set
    Delta {
        set: SetSpec,
        /// Check that the derivation is large
        #[arg(long)]
        verify: bool,
    },
    /// Explicit constructions
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Norm classes S_n and the witness that they are small
    Sn {
        x: Ordinal,
        /// An indecomposable radius; without it only membership is reported
        gamma: Option<Ordinal>,
        /// The class index (defaults to the norm of X)
        #[arg(long)]
        n: Option<u64>,
    },
    /// Invariants of the cardinal ballean on aleph_X
    Invariants {
        kappa: CardinalDesc,
        /// Compare with another cardinal up to coarse equivalence
        #[arg(long)]
        against: Option<CardinalDesc>,
    },
    /// Run a verification suite
    Verify { suite: Suite },
}

#[derive(Subcommand)]
enum OrdCommand {
    /// Evaluate an expression and report the requested facts
    Eval {
        expr: Ordinal,
        #[arg(value_enum)]
        queries: Vec<Query>,
    },
    Cmp { a: Ordinal, b: Ordinal },
    Add { a: Ordinal, b: Ordinal },
    Mul { a: Ordinal, b: Ordinal },
    Norm { a: Ordinal },
    Tail { a: Ordinal },
    /// Whether A is a power of w
    Indec { a: Ordinal },
    /// Least y with y + A >= X
    Lq { x: Ordinal, a: Ordinal },
    /// The d with A + d = B
    Diff { a: Ordinal, b: Ordinal },
    /// Least norm on [LO, HI] with its least witness
    Minnorm { lo: Ordinal, hi: Ordinal },
    /// Whether [LO, HI] holds an ordinal of norm N
    Hasnorm { lo: Ordinal, hi: Ordinal, n: u64 },
    /// Whether Y lies in [LO, HI]
    Contains { lo: Ordinal, hi: Ordinal, y: Ordinal },
    /// Enumerate a grid of ordinals
    Grid {
        max_exponent: u32,
        max_coefficient: u32,
        max_terms: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Query {
    Canon,
    Norm,
    Tail,
    Indecomposable,
    Finite,
    Successor,
    Limit,
    Leading,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// The cell 2^n*odd holding M, or with --spec the set description of cell N
    LargePartition {
        m: Option<u64>,
        #[arg(long)]
        spec: Option<u64>,
    },
    /// Cells of the thin partition of [w, w^w)
    ThinPartition {
        #[arg(long, requires = "band")]
        cell: Option<u64>,
        #[arg(long)]
        band: Option<u32>,
        /// Check that the w^M ball around the element meets its cell once
        #[arg(long, requires = "cell")]
        isolate: Option<u32>,
        /// Locate an ordinal instead
        #[arg(long, conflicts_with_all = ["cell", "band"])]
        of: Option<Ordinal>,
    },
    /// Sets X, Y with the derivation of their union equal to A
    DeltaRealize {
        /// Comma-separated finite set containing 0
        set: String,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        /// Verify differences up to this bound
        #[arg(long)]
        verify: Option<u64>,
    },
    /// Conditions and construction for a preset window ballean
    Thm1 {
        preset: Preset,
        n: Option<usize>,
        r: Option<usize>,
        #[arg(long, default_value_t = 0)]
        x0: usize,
        #[arg(long, default_value_t = 1)]
        gamma: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut failed_report = None;
    let result = run(&cli, &mut failed_report);
    match result {
        Ok(value) => {
            emit(&value, cli.global.format);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => {
            if let Some(report) = failed_report {
                emit(&report, cli.global.format);
            }
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn ballean_size(cli: &Cli, n: Option<usize>, r: Option<usize>, default_r: impl Fn(usize) -> usize) -> (usize, usize) {
    let n = n.or(cli.global.window.map(|w| w as usize)).unwrap_or(DEFAULT_BALLEAN_WINDOW);
    let r = r
        .or(cli.global.radius_cap.map(|r| r as usize))
        .unwrap_or_else(|| default_r(n));
    (n, r)
}

fn run(cli: &Cli, failed_report: &mut Option<Value>) -> Out {
    let g = &cli.global;
    let window = g.window.unwrap_or(DEFAULT_WINDOW);
    let radius = g.radius_cap.unwrap_or(DEFAULT_RADIUS);
    match &cli.command {
        Command::Ord(cmd) => ord(cmd),
        Command::Ball {
            kind,
            x,
            radius,
            contains,
        } => {
            let iv = ball(*kind, x, radius)?;
            Ok(match contains {
                None => json!(iv.to_string()),
                Some(y) => record([("ball", json!(iv.to_string())), ("contains", json!(iv.contains(y)))]),
            })
        }
        Command::Cellular { radius } => Ok(json!(cellular_radius(radius)?.to_string())),
        Command::Path { x, radius, n } => {
            let points = path_ball_window(*x, *radius, *n)?;
            Ok(record([("size", json!(points.len())), ("points", runs(&points))]))
        }
        Command::Axioms { preset, n, r } => {
            let (n, r) = ballean_size(cli, *n, *r, |n| n.div_ceil(2).max(1));
            let report = WindowBallean::preset(*preset, n, r)?.check_axioms();
            let outcomes = report
                .outcomes
                .iter()
                .map(|o| {
                    let mut m = Map::new();
                    m.insert("axiom".into(), json!(o.axiom.number()));
                    m.insert("ok".into(), json!(o.ok));
                    m.insert("window_limited".into(), json!(o.window_limited));
                    m.insert("max_witness_radius".into(), json!(o.max_witness_radius));
                    if let Some(cx) = &o.counterexample {
                        m.insert("counterexample".into(), json!(cx.detail));
                    }
                    Value::Object(m)
                })
                .collect();
            Ok(record([
                ("preset", json!(preset.name())),
                ("window", json!(n)),
                ("radius_cap", json!(r)),
                ("all_ok", json!(report.all_ok())),
                ("axioms", Value::Array(outcomes)),
            ]))
        }
        Command::Member { set, n } => Ok(json!(set.member(*n)?)),
        Command::Classify { set } => {
            set.check_declared(window)?;
            let exact = classify(set);
            let evidence = set.classify_window(window, radius)?;
            let mut rows = vec![("set".to_string(), json!(set.to_string())), ("bounded".to_string(), json!(exact.bounded.name()))];
            for p in Property::ALL {
                let d = exact.get(p);
                let w = evidence.get(p);
                rows.push((
                    p.name().to_string(),
                    record([
                        ("exact", json!(d.verdict.name())),
                        ("evidence", json!(d.evidence)),
                        ("window", json!(w.holds)),
                        ("margin", json!(w.margin)),
                        ("flipped", json!(w.flipped)),
                    ]),
                ));
            }
            rows.push(("window".to_string(), json!(window)));
            rows.push(("radius".to_string(), json!(radius)));
            Ok(record(rows))
        }
        Command::Delta { set, verify } => {
            set.check_declared(window)?;
            let exact = match delta(set) {
                DeltaResult::Exact(s) => json!(s.to_string()),
                DeltaResult::NeedsWindow(why) => json!(format!("needs window: {why}")),
            };
            let mut rows = vec![
                ("set", json!(set.to_string())),
                ("delta", exact),
                ("window", json!(delta_window(set, window, radius)?)),
            ];
            if *verify {
                let report = verify_delta_large(set, window, radius)?;
                rows.push(("large", json!(report.pass)));
                rows.push(("margin", json!(report.margin)));
            }
            Ok(record(rows))
        }
        Command::Construct(cmd) => construct(cli, cmd),
        Command::Sn { x, gamma, n } => {
            let n = n.unwrap_or_else(|| x.norm());
            let member = sn_member(x, n);
            let Some(gamma) = gamma else {
                return Ok(record([("n", json!(n)), ("member", json!(member))]));
            };
            let w = sn_small_witness(x, gamma, n)?;
            Ok(record([
                ("n", json!(n)),
                ("member", json!(member)),
                ("z", json!(w.z.to_string())),
                ("neighbourhood", json!(w.neighbourhood.to_string())),
                ("verified", json!(w.verified)),
            ]))
        }
        Command::Invariants { kappa, against } => {
            let t = kappa.invariants();
            let mut rows: Vec<(String, Value)> = vec![
                ("cardinal".into(), json!(kappa.to_string())),
                ("successor".into(), json!(kappa.successor()?.to_string())),
                ("cofinality".into(), json!(kappa.cofinality().to_string())),
                ("regular".into(), json!(kappa.is_regular())),
                ("limit".into(), json!(kappa.is_limit_cardinal())),
            ];
            for (name, value) in t.rows() {
                let v = match value.as_str() {
                    "true" => json!(true),
                    "false" => json!(false),
                    _ => json!(value),
                };
                rows.push((name.into(), v));
            }
            if let Some(other) = against {
                rows.push(("coarse_equivalent".into(), json!(coarse_equivalent(kappa, other))));
            }
            Ok(record(rows))
        }
        Command::Verify { suite } => {
            let config = SuiteConfig {
                window: g.window,
                radius_cap: g.radius_cap,
                seed: g.seed,
            };
            let report = verify::run(*suite, &config);
            let checks = report
                .checks
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("id".into(), json!(c.id));
                    m.insert("status".into(), json!(if c.passed { "pass" } else { "fail" }));
                    m.insert("margin".into(), json!(c.margin));
                    m.insert(
                        "runtime_ms".into(),
                        if g.timing { json!(c.runtime.as_millis() as u64) } else { Value::Null },
                    );
                    if !c.detail.is_empty() {
                        m.insert("detail".into(), json!(c.detail));
                    }
                    Value::Object(m)
                })
                .collect();
            let value = record([("suite", json!(suite.name())), ("checks", Value::Array(checks))]);
            if report.passed() {
                Ok(value)
            } else {
                *failed_report = Some(value);
                Err(Failure::Verification)
            }
        }
    }
}

fn ord(cmd: &OrdCommand) -> Out {
    let s = |a: Ordinal| json!(a.to_string());
    Ok(match cmd {
        OrdCommand::Eval { expr, queries } => {
            if queries.is_empty() {
                return Ok(s(expr.clone()));
            }
            let answer = |q: Query| -> cardball::Result<Value> {
                Ok(match q {
                    Query::Canon => json!(expr.to_string()),
                    Query::Norm => json!(expr.norm()),
                    Query::Tail => json!(expr.tail()?.to_string()),
                    Query::Indecomposable => json!(expr.is_indecomposable()),
                    Query::Finite => json!(expr.is_finite()),
                    Query::Successor => json!(expr.is_successor()),
                    Query::Limit => json!(expr.is_limit()),
                    Query::Leading => json!(expr.leading_exponent().map(|e| e.to_string())),
                })
            };
            if let [q] = queries.as_slice() {
                return Ok(answer(*q)?);
            }
            let mut rows = Vec::new();
            for &q in queries {
                rows.push((q.to_possible_value().expect("named").get_name().to_string(), answer(q)?));
            }
            record(rows)
        }
        OrdCommand::Cmp { a, b } => json!(match a.cmp(b) {
            std::cmp::Ordering::Less => "less",
            std::cmp::Ordering::Equal => "equal",
            std::cmp::Ordering::Greater => "greater",
        }),
        OrdCommand::Add { a, b } => s(a.checked_add(b)?),
        OrdCommand::Mul { a, b } => s(a.checked_mul(b)?),
        OrdCommand::Norm { a } => json!(a.norm()),
        OrdCommand::Tail { a } => s(a.tail()?),
        OrdCommand::Indec { a } => json!(a.is_indecomposable()),
        OrdCommand::Lq { x, a } => s(x.left_quotient(a)),
        OrdCommand::Diff { a, b } => s(a.right_difference(b)?),
        OrdCommand::Minnorm { lo, hi } => {
            let w = OrdinalInterval::new(lo.clone(), hi.clone())?.min_norm();
            record([("norm", json!(w.norm)), ("witness", s(w.ordinal))])
        }
        OrdCommand::Hasnorm { lo, hi, n } => {
            let found = OrdinalInterval::new(lo.clone(), hi.clone())?.member_with_norm(*n);
            record([("contains", json!(found.is_some())), ("witness", json!(found.map(|w| w.to_string())))])
        }
        OrdCommand::Contains { lo, hi, y } => json!(OrdinalInterval::new(lo.clone(), hi.clone())?.contains(y)),
        OrdCommand::Grid {
            max_exponent,
            max_coefficient,
            max_terms,
        } => {
            let members = OrdinalGrid::new(*max_exponent, *max_coefficient, *max_terms).enumerate();
            record([
                ("count", json!(members.len())),
                ("members", Value::Array(members.into_iter().map(s).collect())),
            ])
        }
    })
}

fn construct(cli: &Cli, cmd: &ConstructCommand) -> Out {
    Ok(match cmd {
        ConstructCommand::LargePartition { m, spec } => match (m, spec) {
            (Some(m), None) => json!(large_partition_cell(*m)?),
            (None, Some(n)) => {
                let s = large_partition_spec(u32::try_from(*n).map_err(|_| Failure::Usage(format!("cell {n} is too large")))?)?;
                record([("spec", json!(s.to_string())), ("large", json!(classify(&s).large.verdict.name()))])
            }
            _ => return Err(Failure::Usage("give either M or --spec N".into())),
        },
        ConstructCommand::ThinPartition {
            cell,
            band,
            isolate,
            of,
        } => {
            if let Some(x) = of {
                let idx = thin_cell_index(x)?;
                return Ok(record([("cell", json!(idx.cell)), ("band", json!(idx.band))]));
            }
            let (Some(cell), Some(band)) = (cell, band) else {
                return Err(Failure::Usage("give --cell L --band N, or --of X".into()));
            };
            let x = thin_cell_element(ThinCellIndex { cell: *cell, band: *band })?;
            match isolate {
                None => json!(x.to_string()),
                Some(m) => {
                    let report = thin_isolation_check(*cell, *band, *m)?;
                    record([
                        ("element", json!(x.to_string())),
                        ("ball", json!(report.ball.to_string())),
                        ("isolated", json!(report.isolated())),
                        (
                            "intruders",
                            json!(report.intruders.iter().map(|(k, o)| format!("band {k}: {o}")).collect::<Vec<_>>()),
                        ),
                    ])
                }
            }
        }
        ConstructCommand::DeltaRealize { set, depth, verify } => {
            let a = parse_naturals(set)?;
            let r = Realization::construct(&a, *depth)?;
            let mut rows = vec![
                ("target", json!(r.target())),
                ("depth", json!(r.depth())),
                ("x", json!(r.x(r.depth()))),
                ("y", json!(r.y(r.depth()))),
            ];
            if let Some(d) = verify {
                let report = r.verify(*d);
                rows.push(("pass", json!(report.pass)));
                rows.push(("required", json!(report.required)));
                rows.push(("offending", json!(report.offending)));
            }
            record(rows)
        }
        ConstructCommand::Thm1 { preset, n, r, x0, gamma } => {
            let (n, r) = ballean_size(cli, *n, *r, |n| n);
            let wb = WindowBallean::preset(*preset, n, r)?;
            let c = wb.equivalence_conditions(*x0, *gamma)?;
            let mut rows = vec![
                ("condition_i", json!(c.shells_nonempty)),
                ("condition_ii", json!(c.shells_bounded)),
            ];
            if let Some(a) = c.empty_shell {
                rows.push(("empty_shell_at", json!(a)));
            }
            if let Some(a) = c.unbounded_step {
                rows.push(("unbounded_step_at", json!(a)));
            }
            if c.both() {
                let w = wb.equivalence_construction(*x0, *gamma)?;
                rows.push(("large_set", json!(w.points)));
                rows.push(("delta", json!(w.large_radius)));
            }
            record(rows)
        }
    })
}

fn parse_naturals(text: &str) -> std::result::Result<BTreeSet<u64>, Failure> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("{t:?} is not a natural number")))
        })
        .collect()
}

/// Compresses a set of naturals into "a..b" runs.
fn runs(points: &BTreeSet<u64>) -> Value {
    let mut out: Vec<String> = Vec::new();
    let mut iter = points.iter().copied().peekable();
    while let Some(start) = iter.next() {
        let mut end = start;
        while iter.peek() == Some(&(end + 1)) {
            end = iter.next().expect("peeked");
        }
        out.push(if start == end { start.to_string() } else { format!("{start}..{end}") });
    }
    json!(out.join(","))
}

fn record<K: Into<String>>(rows: impl IntoIterator<Item = (K, Value)>) -> Value {
    // serde_json keeps object keys sorted
    Value::Object(rows.into_iter().map(|(k, v)| (k.into(), v)).collect())
}

fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Table => print!("{}", table(value)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

/// `PASS id margin=... [12 ms] detail` for a verification check.
fn check_line(item: &Value) -> Option<String> {
    let status = item.get("status")?.as_str()?.to_uppercase();
    let mut line = format!("{status} {} margin={}", item.get("id")?.as_str()?, scalar(item.get("margin")?));
    if let Some(ms) = item.get("runtime_ms").and_then(Value::as_u64) {
        line.push_str(&format!(" [{ms} ms]"));
    }
    if let Some(detail) = item.get("detail").and_then(Value::as_str) {
        line.push_str(&format!("  {detail}"));
    }
    Some(line)
}

fn table(value: &Value) -> String {
    let Value::Object(map) = value else {
        return format!("{}\n", scalar(value));
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in map {
        match v {
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{k}:\n"));
                for item in items {
                    out.push_str(&format!("  {}\n", check_line(item).unwrap_or_else(|| scalar(item))));
                }
            }
            _ => out.push_str(&format!("{k:<width$}  {}\n", scalar(v))),
        }
    }
    out
}
