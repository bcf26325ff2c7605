//! `ramsey`: exact densities, arrow checks, threshold hypotheses and
//! perturbed random graph experiments from the command line.
//!
//! Output is one JSON document on stdout (CSV for `simulate`). Exit codes:
//! 0 computed, 2 unknown or budget exhausted, 3 input error.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ramsey_core::budget::{SearchOutcome, DEFAULT_ARROW_BUDGET};
use ramsey_core::density::{ev_density, DensityCalculator, DEFAULT_CAP};
use ramsey_core::lab::{self, BaseGraph, EdgeProbability, SimConfig};
use ramsey_core::ramsey::{self, ArrowOptions, ArrowOutcome, GlobalQuery, RobustQuery};
use ramsey_core::threshold::{self, AssumptionRegistry, Status};
use ramsey_core::{Bounded, Error, Graph, GraphSpec, Rational};

const GRAMMAR: &str = "\
GRAPH SPECS
  complete:t | K7      cycle:l | C5      path:l | P4 (l vertices)
  empty:n              star:t (t vertices, centre 0)
  cmp:a,b,...          complete multipartite
  cmm:s                K_s minus a maximum matching
  starapex:t           star on t vertices plus a vertex joined to all of it
  treeapex:0-1,1-2,.../a,b,...   tree plus an apex joined to the listed vertices
  union:A+B+...        join:A+B+...
  g6:<graph6>          explicit graph
  {\"family\":...}       JSON object form

Rationals are written p/q. Probabilities also accept c*n^x.
Exit codes: 0 computed, 2 unknown/budget exhausted, 3 input error.";

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Perturbed Ramsey threshold toolkit", after_help = GRAMMAR, args_override_self = true)]
struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Human-readable summary on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    /// Read the command and its flags from a JSON manifest.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Search {
    /// Node budget for the search.
    #[arg(long, default_value_t = DEFAULT_ARROW_BUDGET)]
    budget: u64,
    /// Canonical-labeling pruning (complete hosts only).
    #[arg(long)]
    symmetry_pruning: bool,
}

impl Search {
    fn options(&self) -> ArrowOptions {
        ArrowOptions {
            budget: self.budget,
            symmetry_pruning: self.symmetry_pruning,
        }
    }
}

#[derive(Args, Debug)]
struct Arrow {
    #[arg(long)]
    host: GraphSpec,
    /// Pattern forbidden in red.
    #[arg(long)]
    red: GraphSpec,
    /// Pattern forbidden in blue.
    #[arg(long)]
    blue: GraphSpec,
    #[command(flatten)]
    search: Search,
}

#[derive(Args, Debug)]
struct RegistryArg {
    /// Assumption registry JSON (default: $RAMSEY_REGISTRY, else bundled).
    #[arg(long)]
    registry: Option<PathBuf>,
}

impl RegistryArg {
    fn load(&self) -> Result<AssumptionRegistry, Error> {
        match self.registry.clone().or_else(|| std::env::var_os("RAMSEY_REGISTRY").map(PathBuf::from)) {
            Some(p) => AssumptionRegistry::load(&p),
            None => Ok(AssumptionRegistry::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// m2, m-density and e/v of a graph.
    Density {
        #[arg(long)]
        graph: GraphSpec,
        /// Largest vertex count for subset enumeration.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Asymmetric density m2(H1, H2).
    AsymDensity {
        #[arg(long)]
        h1: GraphSpec,
        #[arg(long)]
        h2: GraphSpec,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Strict 2-balance, balance, and optionally strict balance w.r.t. m2(., WRT).
    BalanceCheck {
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        wrt: Option<GraphSpec>,
    },
    /// Is every red/blue colouring of HOST forced to contain red RED or blue BLUE?
    Arrows(Arrow),
    /// Search for a colouring of HOST with no red RED and no blue BLUE.
    GoodColoring(Arrow),
    /// Arrow check ignoring copies on forbidden vertex sets.
    RobustCheck {
        #[command(flatten)]
        arrow: Arrow,
        /// JSON {"forbidden_red": [[..]], "forbidden_blue": [[..]]} or @path.
        #[arg(long)]
        forbidden: String,
    },
    /// Arrow check on every induced subgraph with at least mu*n vertices.
    GlobalCheck {
        #[command(flatten)]
        arrow: Arrow,
        #[arg(long)]
        mu: Rational,
    },
    /// k-partition route hypotheses for (K, G) with auxiliary H.
    #[command(name = "verify-thm31")]
    VerifyThm31 {
        #[arg(long = "K")]
        k_graph: GraphSpec,
        #[arg(long = "G")]
        g: GraphSpec,
        #[arg(long = "H")]
        h: GraphSpec,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Chromatic route hypotheses for (K, G).
    #[command(name = "verify-thm32")]
    VerifyThm32 {
        #[arg(long = "K")]
        k_graph: GraphSpec,
        #[arg(long = "G")]
        g: GraphSpec,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Threshold exponent for (K, G) at density d.
    Threshold {
        #[arg(long = "K")]
        k_graph: GraphSpec,
        #[arg(long = "G")]
        g: GraphSpec,
        #[arg(long)]
        d: Rational,
        /// Auxiliary graph for the generic k-partition route.
        #[arg(long = "H")]
        h: Option<GraphSpec>,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Lower-bound colouring of the k-partition route.
    Witness31 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "K")]
        k_graph: GraphSpec,
        #[arg(long = "H")]
        h: GraphSpec,
        #[arg(long = "G")]
        g: GraphSpec,
        #[arg(long)]
        p: EdgeProbability,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ARROW_BUDGET)]
        budget: u64,
    },
    /// Lower-bound colouring of the chromatic route.
    Witness32 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "K")]
        k_graph: GraphSpec,
        #[arg(long = "G")]
        g: GraphSpec,
        #[arg(long)]
        p: EdgeProbability,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo estimate of the Ramsey probability of base ∪ G(n,p).
    Simulate {
        /// `balanced:k` or a fixed graph spec.
        #[arg(long)]
        base: BaseGraph,
        #[arg(long)]
        red: GraphSpec,
        #[arg(long)]
        blue: GraphSpec,
        /// Comma-separated vertex counts.
        #[arg(long = "n", value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// Comma-separated probabilities.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        ps: Vec<EdgeProbability>,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: Search,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact chromatic number.
    Chromatic {
        #[arg(long)]
        graph: GraphSpec,
    },
}

/// What to print and how to exit.
struct Output {
    body: Body,
    unknown: bool,
    summary: String,
}

enum Body {
    Json(&'static str, Value),
    Text(String),
}

fn json_out(schema: &'static str, v: Value, unknown: bool, summary: String) -> Output {
    Output {
        body: Body::Json(schema, v),
        unknown,
        summary,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable output")
}

fn build(spec: &GraphSpec) -> Result<Graph, Error> {
    spec.build()
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Density { graph, cap } => {
            let g = build(&graph)?;
            let calc = DensityCalculator::with_cap(cap)?;
            let m2 = calc.m2(&g)?;
            let m = (g.n() > 0).then(|| calc.m_density(&g)).transpose()?;
            let ev = (g.n() > 0).then(|| ev_density(&g)).transpose()?;
            let summary = format!("m2 = {} (strict: {})", m2.value, m2.strict);
            Ok(json_out(
                "density.v1",
                json!({
                    "graph": graph.to_string(),
                    "m2": m2.value,
                    "witness": m2.witness,
                    "strict": m2.strict,
                    "m": m.as_ref().map(|r| r.value),
                    "m_witness": m.as_ref().map(|r| r.witness.clone()),
                    "ev": ev,
                }),
                false,
                summary,
            ))
        }
        Command::AsymDensity { h1, h2, cap } => {
            let calc = DensityCalculator::with_cap(cap)?;
            let (a, b) = (build(&h1)?, build(&h2)?);
            let r = calc.asym_density(&a, &b)?;
            let summary = format!("m2(H1,H2) = {}", r.value);
            Ok(json_out(
                "asym-density.v1",
                json!({
                    "h1": h1.to_string(),
                    "h2": h2.to_string(),
                    "m2_h1": calc.m2(&a)?.value,
                    "m2_h2": calc.m2(&b)?.value,
                    "value": r.value,
                    "witness": r.witness,
                    "strict": r.strict,
                }),
                false,
                summary,
            ))
        }
        Command::BalanceCheck { graph, wrt } => {
            let g = build(&graph)?;
            let calc = DensityCalculator::default();
            let strictly_2_balanced = calc.is_strictly_2_balanced(&g)?;
            let balanced = calc.is_balanced(&g)?;
            let wrt_value = match &wrt {
                Some(h) => Some(calc.is_strictly_balanced_wrt(&g, &build(h)?)?),
                None => None,
            };
            Ok(json_out(
                "balance-check.v1",
                json!({
                    "graph": graph.to_string(),
                    "strictly_2_balanced": strictly_2_balanced,
                    "balanced": balanced,
                    "wrt": wrt.map(|h| h.to_string()),
                    "strictly_balanced_wrt": wrt_value,
                }),
                false,
                format!("strictly 2-balanced: {strictly_2_balanced}, balanced: {balanced}"),
            ))
        }
        Command::Arrows(a) => {
            let v = ramsey::is_ramsey(&build(&a.host)?, &build(&a.red)?, &build(&a.blue)?, a.search.options())?;
            Ok(verdict_out("arrows.v1", v))
        }
        Command::GoodColoring(a) => {
            let s = ramsey::find_good_coloring(&build(&a.host)?, &build(&a.red)?, &build(&a.blue)?, a.search.options())?;
            let unknown = s.outcome.is_unknown();
            let (outcome, coloring) = match s.outcome {
                SearchOutcome::Found(c) => ("Found", Some(c)),
                SearchOutcome::Absent => ("Absent", None),
                SearchOutcome::Unknown { .. } => ("Unknown", None),
            };
            Ok(json_out(
                "good-coloring.v1",
                json!({"outcome": outcome, "coloring": coloring, "stats": s.stats, "budget": a.search.budget}),
                unknown,
                format!("good colouring: {outcome}"),
            ))
        }
        Command::RobustCheck { arrow, forbidden } => {
            let text = match forbidden.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| Error::Parameter(format!("cannot read forbidden family {path}: {e}")))?,
                None => forbidden,
            };
            let q: RobustQuery =
                serde_json::from_str(&text).map_err(|e| Error::Parameter(format!("forbidden family JSON: {e}")))?;
            let v = ramsey::is_robustly_ramsey(
                &build(&arrow.host)?,
                &build(&arrow.red)?,
                &build(&arrow.blue)?,
                &q,
                arrow.search.options(),
            )?;
            Ok(verdict_out("robust-check.v1", v))
        }
        Command::GlobalCheck { arrow, mu } => {
            let v = ramsey::is_globally_ramsey(
                &build(&arrow.host)?,
                &build(&arrow.red)?,
                &build(&arrow.blue)?,
                GlobalQuery::new(mu)?,
                arrow.search.options(),
            )?;
            Ok(verdict_out("global-check.v1", v))
        }
        Command::VerifyThm31 { k_graph, g, h, k, registry } => {
            let r = threshold::check_thm31(&build(&k_graph)?, &build(&g)?, &build(&h)?, k, &registry.load()?)?;
            Ok(hypothesis_out("verify-thm31.v1", &r))
        }
        Command::VerifyThm32 { k_graph, g, registry } => {
            let r = threshold::check_thm32(&build(&k_graph)?, &build(&g)?, &registry.load()?)?;
            Ok(hypothesis_out("verify-thm32.v1", &r))
        }
        Command::Threshold { k_graph, g, d, h, registry } => {
            let h = h.as_ref().map(build).transpose()?;
            let o = threshold::threshold_exponent(&build(&k_graph)?, &build(&g)?, d, &registry.load()?, h.as_ref())?;
            let summary = match o.report() {
                Some(r) => format!("threshold n^({}) via {}", r.exponent, r.provenance),
                None => "no route applies".to_string(),
            };
            Ok(json_out("threshold.v1", to_value(&o), false, summary))
        }
        Command::Witness31 { n, k, k_graph, h, g, p, seed, budget } => {
            let p = p.at(n)?;
            let w = lab::lower_bound_witness_31(n, k, &build(&k_graph)?, &build(&h)?, &build(&g)?, p, seed, budget)?;
            Ok(witness_out("witness31.v1", w))
        }
        Command::Witness32 { n, k, k_graph, g, p, seed } => {
            let p = p.at(n)?;
            let w = lab::lower_bound_witness_32(n, k, &build(&k_graph)?, &build(&g)?, p, seed)?;
            Ok(witness_out("witness32.v1", w))
        }
        Command::Simulate { base, red, blue, ns, ps, trials, seed, search, format } => {
            let cfg = SimConfig {
                base,
                red,
                blue,
                ns,
                ps,
                trials,
                seed,
                budget: search.budget,
                symmetry_pruning: search.symmetry_pruning,
            };
            let r = lab::run_experiment(&cfg)?;
            let unknown = r.cells.iter().any(|c| c.unknown > 0);
            let summary = format!("{} cells, {} trials each; {}", r.cells.len(), trials, r.limitation);
            Ok(match format {
                Format::Csv => Output {
                    body: Body::Text(r.to_csv()?),
                    unknown,
                    summary,
                },
                Format::Json => json_out("simulate.v1", json!({"config": cfg, "result": r}), unknown, summary),
            })
        }
        Command::Chromatic { graph } => {
            let g = build(&graph)?;
            Ok(match threshold::chromatic_number(&g)? {
                Bounded::Done(c) => {
                    let summary = format!("chromatic number {}", c.chromatic_number);
                    json_out(
                        "chromatic.v1",
                        json!({"outcome": "Done", "chromatic_number": c.chromatic_number, "coloring": c.colors}),
                        false,
                        summary,
                    )
                }
                Bounded::Unknown { budget } => json_out(
                    "chromatic.v1",
                    json!({"outcome": "Unknown", "budget": budget}),
                    true,
                    "chromatic number unknown: budget exhausted".into(),
                ),
            })
        }
    }
}

fn verdict_out(schema: &'static str, v: ramsey::ArrowVerdict) -> Output {
    let unknown = v.outcome == ArrowOutcome::Unknown;
    let summary = format!("{:?} after {} nodes", v.outcome, v.stats.nodes);
    json_out(schema, to_value(&v), unknown, summary)
}

fn hypothesis_out(schema: &'static str, r: &threshold::HypothesisReport) -> Output {
    let unknown = r
        .preconditions
        .iter()
        .chain(&r.conditions)
        .any(|c| c.status == Status::Unknown);
    let summary = r
        .preconditions
        .iter()
        .chain(&r.conditions)
        .map(|c| format!("{}: {:?}", c.id, c.status))
        .collect::<Vec<_>>()
        .join(", ");
    json_out(schema, to_value(r), unknown, summary)
}

fn witness_out(schema: &'static str, w: SearchOutcome<lab::ColoredWitness>) -> Output {
    match w {
        SearchOutcome::Found(w) => {
            let summary = format!("witness on {} vertices, verified: {}", w.n, w.verified);
            json_out(schema, json!({"outcome": "Found", "witness": w}), false, summary)
        }
        SearchOutcome::Absent => json_out(
            schema,
            json!({"outcome": "Absent"}),
            false,
            "random part admits no good colouring".into(),
        ),
        SearchOutcome::Unknown { budget } => json_out(
            schema,
            json!({"outcome": "Unknown", "budget": budget}),
            true,
            "search budget exhausted".into(),
        ),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Spec(_) | Error::Graph6 { .. } => "graph-spec",
        Error::Registry(_) => "registry",
        Error::Rational(_) => "rational",
        Error::DensityOrder { .. } => "density-order",
        Error::CapExceeded { .. } | Error::TooManyVertices { .. } => "cap",
        _ => "parameter",
    }
}

fn emit_error(kind: &str, message: &str) -> ExitCode {
    let doc = json!({"schema": "error.v1", "error": {"kind": kind, "message": message}});
    write_stdout(&format!("{doc}\n"));
    eprintln!("error: {message}");
    ExitCode::from(3)
}

/// Writes to stdout, ignoring a closed pipe.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => return emit_error("config", &msg),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            let doc = json!({"schema": "error.v1", "error": {"kind": "usage", "message": first}});
            write_stdout(&format!("{doc}\n"));
            return ExitCode::from(3);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            return emit_error("parameter", "--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("global thread pool configured once");
    }
    match run(cli.command) {
        Ok(out) => {
            match out.body {
                Body::Json(schema, mut v) => {
                    if let Value::Object(m) = &mut v {
                        m.insert("schema".into(), Value::String(schema.into()));
                    }
                    write_stdout(&format!("{v}\n"));
                }
                Body::Text(t) => write_stdout(&t),
            }
            if cli.verbose {
                eprintln!("{}", out.summary);
            }
            if out.unknown {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => emit_error(error_kind(&e), &e.to_string()),
    }
}
