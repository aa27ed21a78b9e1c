//! Command-line front end.
//!
//! Human-readable output goes to standard output; machine records (`kv` lines
//! or one JSON document) go to `--out` when given. Exit codes: 0 success,
//! 1 verification failure, 2 usage or capacity error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::coxeter::{parse_coxeter_graph, GraphAutomorphism, RootSystem};
use crate::diagrams::{
    class_representative, enumerate_admissible, verify_tables, Admissibility, DiagramRecord, PiClass,
};
use crate::engine::{conjugacy_classes, correlation_group, estimated_work, find_exceptional_domestic, BuildingView, WORK_CAP};
use crate::error::{Error, Result};
use crate::geometry::{
    parse_automorphism_file, random_automorphism, AutomorphismKind, FlagGeometry, GeometryKind, GeometrySpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "opposition", version, about = "Opposition diagrams of automorphisms of spherical buildings")]
pub struct Cli {
    /// Write machine-readable records here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Lift the work guardrail on exhaustive runs.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Kv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible diagrams and the closed-form tables.
    #[command(subcommand)]
    Diagrams(DiagramsCmd),
    /// `ℓ(w₀) − ℓ(w_{S∖J})` for a type and circled set.
    Displacement {
        #[arg(long = "type")]
        type_: String,
        #[arg(long, default_value = "")]
        circled: String,
    },
    /// Finite projective and polar geometries.
    #[command(subcommand)]
    Geometry(GeometryCmd),
}

#[derive(Debug, Subcommand)]
pub enum DiagramsCmd {
    /// List all admissible diagrams for a type and automorphism.
    Enumerate {
        #[arg(long = "type")]
        type_: String,
        /// `id`, `op2`, `tri3` or explicit cycles such as `(1,6)(3,5)`.
        #[arg(long, default_value = "id")]
        auto: String,
    },
    /// Decide admissibility of one diagram.
    Check {
        /// A graph file (`node`/`bond` lines) or a type string.
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "")]
        circled: String,
        #[arg(long, default_value = "")]
        auto: String,
    },
    /// Compare the enumerator with the closed-form tables.
    VerifyTables {
        #[arg(long, default_value_t = 7)]
        max_rank: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GeometryCmd {
    /// Build a geometry and print its counts.
    Build {
        #[arg(long)]
        kind: GeometryKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u8,
    },
    /// Analyze the automorphism stored in a file.
    Analyze {
        #[arg(long)]
        geom: GeometrySpec,
        #[arg(long)]
        auto_file: PathBuf,
    },
    /// Exhaustively find exceptional domestic automorphisms.
    SearchExceptional(SearchArgs),
    /// Analyze seeded random automorphisms.
    Sample {
        #[arg(long)]
        geom: GeometrySpec,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "collineation")]
        kind: AutomorphismKind,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    geom: GeometrySpec,
    #[arg(long)]
    kind: AutomorphismKind,
}

/// Outcome of a command: human text, machine records and a verdict.
struct Output {
    human: Vec<String>,
    kv: Vec<String>,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn new(human: Vec<String>, kv: Vec<String>, json: serde_json::Value, ok: bool) -> Self {
        Output { human, kv, json, ok }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command; errors are usage or capacity problems.
pub fn execute(cli: &Cli) -> Result<i32> {
    if let Some(t) = cli.threads {
        // an already-initialised global pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let out = match &cli.command {
        Command::Diagrams(d) => diagrams(d)?,
        Command::Displacement { type_, circled } => displacement_cmd(type_, circled)?,
        Command::Geometry(g) => geometry(g, cli.allow_large)?,
    };
    let mut stdout = std::io::stdout().lock();
    for line in &out.human {
        let _ = writeln!(stdout, "{line}");
    }
    if let Some(path) = &cli.out {
        let body = match cli.format {
            Format::Kv => out.kv.iter().map(|l| format!("{l}\n")).collect::<String>(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&out.json).map_err(|e| Error::Io(e.to_string()))?;
                s.push('\n');
                s
            }
        };
        fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(if out.ok { EXIT_OK } else { EXIT_VERIFY })
}

fn parse_auto(graph: &crate::coxeter::CoxeterGraph, text: &str) -> Result<GraphAutomorphism> {
    match text.parse::<PiClass>() {
        Ok(class) => class_representative(graph, class),
        Err(_) => GraphAutomorphism::parse_cycles(graph, text),
    }
}

fn parse_labels(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad node label {s:?}"))))
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn diagrams(cmd: &DiagramsCmd) -> Result<Output> {
    match cmd {
        DiagramsCmd::Enumerate { type_, auto } => {
            let graph = parse_coxeter_graph(type_)?;
            let rs = RootSystem::new(&graph)?;
            let pi = parse_auto(&graph, auto)?;
            let records: Vec<DiagramRecord> =
                enumerate_admissible(&rs, &pi).into_iter().map(|j| DiagramRecord::new(&rs, j, &pi, true)).collect();
            let mut human: Vec<String> = records.iter().map(|r| format!("{} displacement={}", r.to_text(), r.displacement)).collect();
            human.push(format!("{} admissible diagrams", records.len()));
            let kv = records.iter().map(DiagramRecord::to_kv).collect();
            Ok(Output::new(human, kv, to_json(&records), true))
        }
        DiagramsCmd::Check { graph, circled, auto } => {
            let text = match fs::read_to_string(graph) {
                Ok(t) => t,
                Err(_) => graph.clone(),
            };
            let g = parse_coxeter_graph(&text)?;
            let rs = RootSystem::new(&g)?;
            let j = g.node_set(&parse_labels(circled)?)?;
            let pi = if auto.trim().is_empty() {
                GraphAutomorphism::identity(g.rank(), g.all())
            } else {
                parse_auto(&g, auto)?
            };
            let admissible = Admissibility::new(&rs).check(j, &pi);
            let record = DiagramRecord::new(&rs, j, &pi, admissible);
            let human = vec![format!("{} admissible={}", record.to_text(), admissible)];
            Ok(Output::new(human, vec![record.to_kv()], to_json(&record), admissible))
        }
        DiagramsCmd::VerifyTables { max_rank } => {
            let report = verify_tables(*max_rank)?;
            let line = |c: &crate::diagrams::TableCheck| {
                format!(
                    "{} {} pi={} count={} expected={}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.type_name,
                    c.class,
                    c.count(),
                    c.expected.len()
                )
            };
            let mut human: Vec<String> = report.checks.iter().map(line).collect();
            human.push(format!(
                "{} of {} cases pass",
                report.checks.iter().filter(|c| c.pass).count(),
                report.checks.len()
            ));
            let kv = report
                .checks
                .iter()
                .map(|c| format!("type={} pi={} count={} expected={} pass={}", c.type_name, c.class, c.count(), c.expected.len(), c.pass))
                .collect();
            Ok(Output::new(human, kv, to_json(&report), report.pass()))
        }
    }
}

fn displacement_cmd(type_: &str, circled: &str) -> Result<Output> {
    let graph = parse_coxeter_graph(type_)?;
    let rs = RootSystem::new(&graph)?;
    let j = graph.node_set(&parse_labels(circled)?)?;
    let record = DiagramRecord::evaluate(&rs, j, &GraphAutomorphism::identity(graph.rank(), graph.all()));
    let d = record.displacement;
    Ok(Output::new(vec![d.to_string()], vec![record.to_kv()], to_json(&record), true))
}

fn geometry(cmd: &GeometryCmd, allow_large: bool) -> Result<Output> {
    match cmd {
        GeometryCmd::Build { kind, n, q } => {
            let spec = GeometrySpec::new(*kind, *n, *q)?;
            let g = FlagGeometry::build(spec)?;
            let s = g.summary();
            let human = vec![format!(
                "{} ({} n={} q={}): rank {}, vertices per type {:?}, {} chambers (expected {}), thick={}",
                s.geometry, s.kind, s.n, s.q, s.rank, s.vertices_per_type, s.chambers, s.expected_chambers, s.thick
            )];
            let kv = vec![format!(
                "geometry={} kind={} n={} q={} rank={} vertices={} chambers={} expected_chambers={} thick={}",
                s.geometry,
                s.kind,
                s.n,
                s.q,
                s.rank,
                s.vertices_per_type.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                s.chambers,
                s.expected_chambers,
                s.thick
            )];
            let ok = s.thick && s.chambers as u64 == s.expected_chambers;
            Ok(Output::new(human, kv, to_json(&s), ok))
        }
        GeometryCmd::Analyze { geom, auto_file } => {
            let text = fs::read_to_string(auto_file).map_err(|e| Error::Io(format!("{}: {e}", auto_file.display())))?;
            let (spec, theta) = parse_automorphism_file(&text)?;
            if spec != *geom {
                return Err(Error::InvalidGeometry(format!("file describes {spec}, expected {geom}")));
            }
            let g = FlagGeometry::build(spec)?;
            let view = BuildingView::new(&g)?;
            let p = view.prepare(&theta)?;
            let report = view.analyze(auto_file.display().to_string(), &p);
            let violations = view.check_invariants(&p);
            let mut human = vec![
                format!("{} {} order {}", report.geometry, report.kind, report.order),
                format!("diagram {}", report.diagram),
                format!("capped={} domestic={} admissible={}", report.capped, report.domestic, report.admissible),
                format!(
                    "displacement measured={} formula={} argmax_is_formula={}",
                    report.measured_displacement, report.formula_displacement, report.argmax_is_formula
                ),
            ];
            for h in &report.hits {
                human.push(format!("block {:?}: {} simplices mapped to opposites", h.block, h.count));
            }
            human.extend(violations.iter().map(|v| format!("VIOLATION {v}")));
            let json = json!({ "report": to_json(&report), "violations": violations });
            Ok(Output::new(human, vec![report.to_kv()], json, violations.is_empty()))
        }
        GeometryCmd::SearchExceptional(SearchArgs { geom, kind }) => {
            let g = FlagGeometry::build(*geom)?;
            let view = BuildingView::new(&g)?;
            let found = find_exceptional_domestic(&view, *kind, allow_large)?;
            let group = correlation_group(&g)?;
            let actions: Vec<_> = found.iter().map(|(_, p)| p.action.clone()).collect();
            let classes = conjugacy_classes(&group, &actions);
            let reports: Vec<_> =
                found.iter().enumerate().map(|(i, (_, p))| view.analyze(format!("{geom}/{kind}/{i}"), p)).collect();
            let mut human = vec![format!(
                "{} exceptional domestic automorphisms of kind {} in {}, {} conjugacy class(es)",
                found.len(),
                kind,
                geom,
                classes.len()
            )];
            for (c, members) in classes.iter().enumerate() {
                let r = &reports[members[0]];
                human.push(format!(
                    "class {c}: {} elements, order {}, diagram {}, capped={}",
                    members.len(),
                    r.order,
                    r.diagram,
                    r.capped
                ));
            }
            let kv = reports.iter().map(|r| r.to_kv()).collect();
            let json = json!({
                "geometry": geom.to_string(),
                "kind": kind.to_string(),
                "count": found.len(),
                "classes": classes,
                "automorphisms": found.iter().map(|(t, _)| t.to_file_format(geom)).collect::<Vec<_>>(),
                "reports": reports,
            });
            Ok(Output::new(human, kv, json, true))
        }
        GeometryCmd::Sample { geom, count, seed, kind } => {
            let g = FlagGeometry::build(*geom)?;
            let work = estimated_work(&g).min(g.chamber_count() as u64 * *count as u64);
            if !allow_large && work > WORK_CAP {
                return Err(Error::Capacity(format!("estimated work {work} exceeds {WORK_CAP}")));
            }
            let view = BuildingView::new(&g)?;
            let results: Vec<_> = (0..*count as u64)
                .into_par_iter()
                .map(|i| -> Result<_> {
                    let theta = random_automorphism(&g, seed.wrapping_add(i), *kind)?;
                    let p = view.prepare(&theta)?;
                    Ok((view.analyze(format!("{geom}/{kind}/{seed}+{i}"), &p), view.check_invariants(&p)))
                })
                .collect::<Result<_>>()?;
            let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
            let mut capped = 0;
            let mut violations = Vec::new();
            for (r, v) in &results {
                *histogram.entry(r.diagram.clone()).or_default() += 1;
                capped += r.capped as usize;
                violations.extend(v.iter().map(|x| format!("{}: {x}", r.id)));
            }
            let mut human = vec![format!("{count} random automorphisms of kind {kind} in {geom} (seed {seed}): {capped} capped")];
            human.extend(histogram.iter().map(|(d, n)| format!("{n:>6}  {d}")));
            human.extend(violations.iter().map(|v| format!("VIOLATION {v}")));
            let kv = results.iter().map(|(r, _)| r.to_kv()).collect();
            let json = json!({
                "geometry": geom.to_string(),
                "kind": kind.to_string(),
                "seed": seed,
                "count": count,
                "capped": capped,
                "reports": results.iter().map(|(r, _)| to_json(r)).collect::<Vec<_>>(),
                "violations": violations,
            });
            Ok(Output::new(human, kv, json, violations.is_empty()))
        }
    }
}
