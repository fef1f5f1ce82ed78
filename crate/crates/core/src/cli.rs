//! The `theta` command line. `run` is the whole program minus process I/O,
//! so tests drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::canon::{canonical_diagram, digest};
use crate::certify::{brunnian_check, verify_proof1, verify_proof2, Certificate, NeighbourhoodPremise};
use crate::data::{self, LoadError};
use crate::diagram::{connected_sum, Diagram, DiagramKind};
use crate::invariants::{alexander, colorings, determinant, jones, yamada};
use crate::moves::{enumerate_moves, simplify, MoveSequence, SearchBudget};
use crate::surgery::{crossing_free_edges, fill_edge, FillingSpec};

pub const BUDGET_ENV: &str = "THETA_BUDGET_STATES";

#[derive(Parser, Debug)]
#[command(name = "theta", version, about = "Spatial theta-graph diagrams, moves, invariants and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Budget overrides and output options shared by every verb.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Search state limit (default 500000, or $THETA_BUDGET_STATES)
    #[arg(long, alias = "budget", global = true)]
    pub max_states: Option<usize>,
    /// Largest crossing count the search visits (default: input + 2)
    #[arg(long, global = true)]
    pub max_crossings: Option<usize>,
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for `selftest`
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

impl RunConfig {
    pub fn budget_for(&self, d: &Diagram, env_states: Option<&str>) -> SearchBudget {
        let mut b = SearchBudget::for_diagram(d);
        if let Some(n) = env_states.and_then(|s| s.trim().parse().ok()) {
            b.max_states = n;
        }
        if let Some(n) = self.max_states {
            b.max_states = n;
        }
        if let Some(n) = self.max_crossings {
            b.max_crossings = n;
        }
        if let Some(n) = self.max_depth {
            b.max_depth = n;
        }
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Validate a diagram and print its canonical form
    Parse { file: String },
    /// Knot or graph invariants (all applicable ones when no flag is given)
    Invariants {
        file: String,
        #[arg(long)]
        alexander: bool,
        #[arg(long)]
        jones: bool,
        #[arg(long)]
        det: bool,
        #[arg(long, value_name = "P")]
        colorings: Vec<u64>,
        #[arg(long)]
        yamada: bool,
    },
    /// Reduce crossings by moves; prints the result and the move trace
    Simplify {
        file: String,
        /// Also write the trace to this file
        #[arg(long)]
        trace_out: Option<String>,
    },
    /// The knot left after deleting one edge of a theta-diagram
    Constituent {
        file: String,
        #[arg(long)]
        edge: usize,
    },
    /// Replace a crossing-free edge by a twisted rational tangle
    Fill {
        file: String,
        #[arg(long)]
        edge: usize,
        #[arg(long, allow_hyphen_values = true)]
        twists: i32,
        #[arg(long)]
        flip: bool,
    },
    /// Connected sum, spliced at the given arcs (default: the least label of each)
    Sum {
        file1: String,
        file2: String,
        #[arg(long)]
        arc1: Option<u32>,
        #[arg(long)]
        arc2: Option<u32>,
    },
    /// Apply a move trace to a diagram and print the end diagram
    Replay { file: String, trace: String },
    /// Nontriviality certificate for a theta-graph
    Verify {
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        proof: u8,
        /// Edge to fill (proof 1) or delete from the spine (proof 2)
        #[arg(long)]
        edge: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<i32>,
        #[arg(long)]
        flip: bool,
        /// Write the identification move trace to this file
        #[arg(long)]
        trace_out: Option<String>,
    },
    /// Unknot verdicts for the three constituents
    Brunnian { file: String },
    /// Random move walks checking invariance of every invariant
    Selftest {
        #[arg(long, default_value_t = 40)]
        walks: usize,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
}

/// Exit code and the two output streams.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { code, stdout: String::new(), stderr }
    }
}

pub fn run<I, T>(argv: I, env_states: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(2, text),
            };
        }
    };
    match execute(&cli, env_states) {
        Ok(o) => o,
        Err(o) => o,
    }
}

/// `-` reads standard input.
fn load(arg: &str) -> Result<Diagram, Outcome> {
    if arg == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text).map_err(|e| Outcome::fail(2, e.to_string()))?;
        return crate::diagram::parse_diagram(&text).map_err(invalid);
    }
    data::load(arg).map_err(|e| match e {
        LoadError::Parse { .. } => Outcome::fail(1, e.to_string()),
        _ => Outcome::fail(2, e.to_string()),
    })
}

fn invalid(e: impl std::fmt::Display) -> Outcome {
    Outcome::fail(1, e.to_string())
}

fn emit(format: Format, text: String, value: Value) -> Outcome {
    Outcome::ok(match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
    })
}

fn diagram_json(d: &Diagram) -> Value {
    json!({
        "name": d.name,
        "kind": format!("{:?}", d.kind).to_lowercase(),
        "crossings": d.crossing_count(),
        "digest": digest(d),
        "pd": d.to_string(),
    })
}

fn execute(cli: &Cli, env: Option<&str>) -> Result<Outcome, Outcome> {
    let cfg = &cli.config;
    let f = cfg.format;
    Ok(match &cli.verb {
        Verb::Parse { file } => {
            let d = load(file)?;
            let report = d.validate();
            if !report.is_valid() {
                return Err(invalid(report));
            }
            let mut c = canonical_diagram(&d);
            c.name = d.name.clone();
            let text = format!("# digest {}\n{}", digest(&d), c);
            emit(f, text, json!({ "diagram": diagram_json(&d), "planar": d.is_planar(), "canonical": c.to_string() }))
        }
        Verb::Invariants { file, alexander: a, jones: j, det, colorings: ps, yamada: y } => {
            let d = load(file)?;
            let none = !(*a || *j || *det || *y) && ps.is_empty();
            let is_knot = d.kind == DiagramKind::Knot;
            let mut text = String::new();
            let mut obj = serde_json::Map::new();
            if *det || (none && is_knot) {
                let v = determinant(&d).map_err(invalid)?;
                writeln!(text, "determinant = {v}").unwrap();
                obj.insert("determinant".into(), v.into());
            }
            if *a || (none && is_knot) {
                let v = alexander(&d).map_err(invalid)?;
                writeln!(text, "alexander = {v}").unwrap();
                obj.insert("alexander".into(), json!(v.poly.to_json_map()));
            }
            if *j || (none && is_knot) {
                let v = jones(&d).map_err(invalid)?;
                writeln!(text, "jones = {v}").unwrap();
                obj.insert("jones".into(), json!(v.poly.to_json_map()));
            }
            let default_ps = [3, 5];
            let ps: &[u64] = if none && is_knot { &default_ps } else { ps };
            let mut cols = serde_json::Map::new();
            for &p in ps {
                let v = colorings(&d, p).map_err(invalid)?;
                writeln!(text, "colorings({p}) = {v}").unwrap();
                cols.insert(p.to_string(), v.into());
            }
            if !cols.is_empty() {
                obj.insert("colorings".into(), cols.into());
            }
            if *y || (none && !is_knot) {
                let v = yamada(&d).map_err(invalid)?;
                writeln!(text, "yamada = {v}").unwrap();
                obj.insert("yamada".into(), json!(v.poly.to_json_map()));
            }
            emit(f, text, obj.into())
        }
        Verb::Simplify { file, trace_out } => {
            let d = load(file)?;
            let (s, seq) = simplify(&d, &cfg.budget_for(&d, env));
            write_trace(trace_out.as_deref(), &seq)?;
            let text = format!(
                "# {} -> {} crossings, {} moves\n{}\n{}",
                d.crossing_count(),
                s.crossing_count(),
                seq.len(),
                s,
                seq.to_trace()
            );
            emit(f, text, json!({ "diagram": diagram_json(&s), "moves": seq.len(), "trace": seq.to_trace() }))
        }
        Verb::Constituent { file, edge } => {
            let d = load(file)?;
            let c = d.constituent(*edge).map_err(invalid)?;
            emit(f, c.to_string(), diagram_json(&c))
        }
        Verb::Fill { file, edge, twists, flip } => {
            let d = load(file)?;
            let spec = FillingSpec { twists: *twists, flip: *flip };
            let k = fill_edge(&d, *edge, spec).map_err(invalid)?;
            emit(f, k.to_string(), diagram_json(&k))
        }
        Verb::Sum { file1, file2, arc1, arc2 } => {
            let (k1, k2) = (load(file1)?, load(file2)?);
            let least = |k: &Diagram| k.arcs().into_iter().next().unwrap_or(1);
            let s = connected_sum(&k1, arc1.unwrap_or_else(|| least(&k1)), &k2, arc2.unwrap_or_else(|| least(&k2)))
                .map_err(invalid)?;
            emit(f, s.to_string(), diagram_json(&s))
        }
        Verb::Replay { file, trace } => {
            let d = load(file)?;
            let text = std::fs::read_to_string(trace).map_err(|e| Outcome::fail(2, format!("{trace}: {e}")))?;
            let seq = MoveSequence::parse_trace(&text).map_err(invalid)?;
            let end = seq.replay(&d).map_err(invalid)?;
            emit(f, format!("# end {}\n{}", digest(&end), end), diagram_json(&end))
        }
        Verb::Verify { graph, proof, edge, twists, flip, trace_out } => {
            let g = load(graph)?;
            let cert = certify_graph(&g, *proof, *edge, *twists, *flip, &cfg.budget_for(&g, env));
            if let Some(path) = trace_out {
                let trace = cert.artifacts.move_traces.values().next().cloned().unwrap_or_default();
                std::fs::write(path, trace).map_err(|e| Outcome::fail(2, format!("{path}: {e}")))?;
            }
            let text = cert.to_text();
            let value: Value = serde_json::from_str(&cert.to_json()).expect("json");
            let mut o = emit(f, text, value);
            if !cert.verdict.is_success() {
                o.code = 1;
            }
            o
        }
        Verb::Brunnian { file } => {
            let d = load(file)?;
            let report = brunnian_check(&d, &cfg.budget_for(&d, env)).map_err(invalid)?;
            let value: Value = serde_json::from_str(&report.to_json()).expect("json");
            emit(f, report.to_text(), value)
        }
        Verb::Selftest { walks, steps } => {
            let (text, failures) = selftest(cfg.seed, *walks, *steps);
            let mut o = emit(f, text, json!({ "seed": cfg.seed, "walks": walks, "failures": failures }));
            if failures > 0 {
                o.code = 1;
            }
            o
        }
    })
}

fn write_trace(path: Option<&str>, seq: &MoveSequence) -> Result<(), Outcome> {
    match path {
        Some(p) => std::fs::write(p, seq.to_trace()).map_err(|e| Outcome::fail(2, format!("{p}: {e}"))),
        None => Ok(()),
    }
}

/// The certificate `verify` prints. Kinoshita uses the recorded filling and
/// the shipped spine; other graphs use the given edge (or the first
/// crossing-free one) and serve as their own spine.
pub fn certify_graph(
    g: &Diagram,
    proof: u8,
    edge: Option<usize>,
    twists: Option<i32>,
    flip: bool,
    budget: &SearchBudget,
) -> Certificate {
    let is_kinoshita = g.name.as_deref() == Some("kinoshita");
    if proof == 1 {
        let (e, spec) = if is_kinoshita && edge.is_none() && twists.is_none() && !flip {
            let rec = data::shipped_filling();
            (rec.edge, rec.selected)
        } else {
            let e = edge.or_else(|| crossing_free_edges(g).first().copied()).unwrap_or(0);
            (e, FillingSpec { twists: twists.unwrap_or(0), flip })
        };
        verify_proof1(g, e, spec, budget)
    } else {
        let graph = g.name.clone().unwrap_or_else(|| "graph".into());
        if is_kinoshita {
            let spine = data::shipped("spineG").expect("shipped spine");
            let premise = NeighbourhoodPremise {
                graph,
                source: "neighbourhood of kinoshita ambient isotopic to that of spineG (by picture; not computed)".into(),
            };
            verify_proof2(&spine, edge.unwrap_or(0), &premise, budget)
        } else {
            let premise = NeighbourhoodPremise { graph: graph.clone(), source: format!("{graph} is its own spine") };
            verify_proof2(g, edge.unwrap_or(0), &premise, budget)
        }
    }
}

/// Random walks from the shipped diagrams; every invariant must survive each move.
pub fn selftest(seed: u64, walks: usize, steps: usize) -> (String, usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let starts: Vec<Diagram> = ["trefoil", "fig8", "trivial", "tunnel_trefoil", "kinoshita"]
        .iter()
        .map(|n| data::shipped(n).expect("shipped"))
        .collect();
    let fingerprint = |d: &Diagram| -> String {
        if d.kind == DiagramKind::Knot {
            format!(
                "{} {} {} {} {}",
                determinant(d).unwrap(),
                alexander(d).unwrap(),
                jones(d).unwrap(),
                colorings(d, 3).unwrap(),
                colorings(d, 5).unwrap()
            )
        } else {
            yamada(d).unwrap().to_string()
        }
    };
    let (mut moves, mut failures) = (0, 0);
    let mut text = String::new();
    for w in 0..walks {
        let start = &starts[w % starts.len()];
        let expected = fingerprint(start);
        let cap = start.crossing_count().min(7) + 2;
        let mut cur = start.clone();
        for _ in 0..steps {
            let options = enumerate_moves(&cur, cap);
            let Some((m, next)) = options.choose(&mut rng) else { break };
            moves += 1;
            if fingerprint(next) != expected {
                failures += 1;
                writeln!(text, "FAIL {}: {m} changed an invariant", start.name.as_deref().unwrap_or("?")).unwrap();
            }
            cur = next.clone();
        }
    }
    writeln!(text, "selftest seed {seed}: {walks} walks, {moves} moves, {failures} failures").unwrap();
    (text, failures)
}
