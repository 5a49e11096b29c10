use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use injpack_core::clique_cover::{
    derived_graph, find_sparse_cover, lift_coloring, EdgeCliqueCover,
};
use injpack_core::families::FamilySpec;
use injpack_core::graph::graph6;
use injpack_core::harness::{self, HarnessError, Level, Report, Target, VerifyConfig};
use injpack_core::solvers::{
    chromatic_number, edge_coloring_from_injective, injective_chromatic_number,
    perfect_injective_colorability, Budget, PerfectOutcome, Problem, SolveOptions, SolveResult,
};
use injpack_core::{Graph, VertexColoring};

const EXIT_CLAIM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "injpack",
    version,
    about = "Injective colorings and open packings of graphs"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Search-node limit per solver call.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Wall-clock limit per solver call, in milliseconds.
    #[arg(long, global = true, default_value_t = 60_000)]
    budget_ms: u64,
    #[arg(long, global = true, env = "INJPACK_THREADS")]
    threads: Option<usize>,
    /// Canonical witnesses, no timings or timestamps in the output.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Print a JSON run record.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and print it.
    Gen {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = GenFormat::Graph6)]
        format: GenFormat,
    },
    /// Basic invariants plus every solver value.
    Invariants {
        #[arg(long)]
        graph: String,
    },
    /// Solve one problem exactly.
    Solve {
        #[arg(value_enum)]
        problem: SolveKind,
        #[arg(long)]
        graph: String,
    },
    /// Move colorings between graphs.
    Transfer {
        #[command(subcommand)]
        kind: TransferKind,
    },
    /// Recompute stated results and print a pass/fail table.
    Verify {
        /// A target name, or `all`.
        target: String,
        #[arg(long, value_enum, default_value_t = CliLevel::Desk)]
        level: CliLevel,
        #[arg(long, requires = "n")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum TransferKind {
    /// Lift an optimal proper coloring of G to an injective coloring of G^C.
    Lift {
        #[arg(long)]
        graph: String,
        /// JSON cover `{"cliques": [[..], ..]}`; searched for when omitted.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// Sum-mod-Δ edge coloring from an injective Δ-coloring.
    EdgeFromInjective {
        #[arg(long)]
        graph: String,
        /// Comma-separated colors; an optimal injective coloring when omitted.
        #[arg(long)]
        coloring: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFormat {
    Graph6,
    Edges,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliLevel {
    Desk,
    Heavy,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveKind {
    Chi,
    ChiI,
    ChiPrime,
    RhoO,
    Rho2,
    Perfect,
}

#[derive(Serialize)]
struct RunRecord {
    spec: Option<String>,
    command: String,
    results: Value,
    timestamp: Option<String>,
    version: &'static str,
}

enum Failure {
    Usage(String),
    Budget(String),
}

type Outcome = Result<(Value, String, bool), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn spec_of(arg: &str) -> Result<FamilySpec, Failure> {
    if arg.ends_with(".g6") || Path::new(arg).is_file() {
        Ok(FamilySpec::File(PathBuf::from(arg)))
    } else {
        arg.parse().map_err(usage)
    }
}

fn parse_graph(arg: &str) -> Result<(FamilySpec, Graph), Failure> {
    let spec = spec_of(arg)?;
    let g = spec.build().map_err(usage)?;
    Ok((spec, g))
}

fn scrub(mut r: SolveResult, deterministic: bool) -> SolveResult {
    if deterministic {
        r.ms = 0;
    }
    r
}

fn solve_text(r: &SolveResult) -> String {
    let mut s = if r.exact {
        format!("{} = {}\n", r.problem.name(), r.value)
    } else {
        format!(
            "{} in [{}, {}] (budget exhausted)\n",
            r.problem.name(),
            r.lower,
            r.upper
        )
    };
    s.push_str(&format!(
        "witness: {}\n",
        serde_json::to_string(&r.witness).expect("serializable")
    ));
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn cmd_gen(graph: &str, format: GenFormat) -> Outcome {
    let (_, g) = parse_graph(graph)?;
    let text = match format {
        GenFormat::Graph6 => format!("{}\n", graph6::encode(&g)),
        GenFormat::Edges => {
            let mut s = format!("{} {}\n", g.n(), g.edge_count());
            for (u, v) in g.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
        GenFormat::Json => format!("{}\n", graph_json(&g)),
    };
    Ok((graph_json(&g), text, true))
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "n": g.n(),
        "edges": g.edges(),
        "labels": g.labels(),
        "graph6": graph6::encode(g),
    })
}

fn cmd_invariants(graph: &str, opts: &SolveOptions) -> Outcome {
    let (_, g) = parse_graph(graph)?;
    let mut values = serde_json::Map::new();
    values.insert("n".into(), json!(g.n()));
    values.insert("m".into(), json!(g.edge_count()));
    values.insert("max_degree".into(), json!(g.max_degree()));
    values.insert("min_degree".into(), json!(g.min_degree()));
    values.insert("connected".into(), json!(g.is_connected()));
    values.insert("diameter".into(), json!(g.diameter().to_string()));
    let mut text = String::new();
    for (k, v) in &values {
        text.push_str(&format!("{k}: {v}\n"));
    }
    let mut all_exact = true;
    for p in [
        Problem::Chi,
        Problem::ChiI,
        Problem::ChiPrime,
        Problem::RhoO,
        Problem::Rho2,
    ] {
        let r = p.solve(&g, opts);
        all_exact &= r.exact;
        let shown = if r.exact {
            r.value.to_string()
        } else {
            format!("[{}, {}]", r.lower, r.upper)
        };
        text.push_str(&format!("{}: {shown}\n", p.name()));
        values.insert(
            p.name().into(),
            json!({"value": r.value, "exact": r.exact, "lower": r.lower, "upper": r.upper}),
        );
    }
    if !all_exact {
        return Err(Failure::Budget(text));
    }
    Ok((Value::Object(values), text, true))
}

fn cmd_solve(kind: SolveKind, graph: &str, opts: &SolveOptions) -> Outcome {
    let (_, g) = parse_graph(graph)?;
    let problem = match kind {
        SolveKind::Chi => Problem::Chi,
        SolveKind::ChiI => Problem::ChiI,
        SolveKind::ChiPrime => Problem::ChiPrime,
        SolveKind::RhoO => Problem::RhoO,
        SolveKind::Rho2 => Problem::Rho2,
        SolveKind::Perfect => {
            let out = perfect_injective_colorability(&g, opts);
            let text = match &out {
                PerfectOutcome::Yes {
                    rho_o,
                    route,
                    partition,
                } => format!(
                    "perfect: yes ({} classes of {rho_o}, {route:?})\nclasses: {}\n",
                    partition.classes.len(),
                    serde_json::to_string(&partition.classes).expect("serializable")
                ),
                PerfectOutcome::No { reason, .. } => format!("perfect: no ({reason})\n"),
                PerfectOutcome::Unknown { reason } => {
                    return Err(Failure::Budget(format!("perfect: unknown ({reason})\n")))
                }
            };
            return Ok((to_value(&out), text, true));
        }
    };
    let r = scrub(problem.solve(&g, opts), opts.deterministic);
    let text = solve_text(&r);
    if !r.exact {
        return Err(Failure::Budget(text));
    }
    Ok((to_value(&r), text, true))
}

fn cmd_lift(graph: &str, cover: Option<&Path>, opts: &SolveOptions) -> Outcome {
    let (_, g) = parse_graph(graph)?;
    let cover = match cover {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            EdgeCliqueCover::from_json(&g, &text).map_err(usage)?
        }
        None => {
            find_sparse_cover(&g).ok_or_else(|| usage("graph has no sparse edge clique cover"))?
        }
    };
    let chi = scrub(chromatic_number(&g, opts), opts.deterministic);
    if !chi.exact {
        return Err(Failure::Budget(solve_text(&chi)));
    }
    let proper = chi.vertex_coloring().expect("coloring witness");
    let lifted = lift_coloring(&g, &cover, proper).map_err(usage)?;
    let derived = derived_graph(&g, &cover).map_err(usage)?;
    let text = format!(
        "chi(G) = {}\nG^C: {}\nlifted injective coloring ({} colors): {:?}\n",
        chi.value,
        graph6::encode(&derived.graph),
        lifted.palette_size(),
        lifted.colors()
    );
    let value = json!({
        "chi": chi,
        "cover": cover.cliques(),
        "derived_graph6": graph6::encode(&derived.graph),
        "lifted": lifted,
    });
    Ok((value, text, true))
}

fn cmd_edge_from_injective(graph: &str, coloring: Option<&str>, opts: &SolveOptions) -> Outcome {
    let (_, g) = parse_graph(graph)?;
    let c = match coloring {
        Some(text) => {
            let raw = text
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            VertexColoring::new(raw).map_err(usage)?
        }
        None => {
            let r = injective_chromatic_number(&g, opts);
            if !r.exact {
                return Err(Failure::Budget(solve_text(&r)));
            }
            r.vertex_coloring().expect("coloring witness").clone()
        }
    };
    let e = edge_coloring_from_injective(&g, &c).map_err(usage)?;
    let mut text = format!("proper {}-edge-coloring\n", e.palette_size());
    for ((u, v), col) in e.iter() {
        text.push_str(&format!("{u}-{v}: {col}\n"));
    }
    Ok((json!({"coloring": c, "edge_coloring": e}), text, true))
}

fn cmd_verify(target: &str, cfg: &VerifyConfig, format: TableFormat) -> Outcome {
    let targets: Vec<Target> = if target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![target.parse().map_err(|e: HarnessError| usage(e))?]
    };
    let mut rows = Vec::new();
    for t in targets {
        match harness::run(t, cfg) {
            Ok(r) => rows.extend(r),
            Err(HarnessError::Budget(w)) => {
                return Err(Failure::Budget(format!("budget exhausted: {w}\n")))
            }
            Err(e) => return Err(usage(e)),
        }
    }
    let report = Report {
        level: cfg.level,
        rows,
    };
    let text = match format {
        TableFormat::Markdown => report.to_markdown(),
        TableFormat::Csv => report.to_csv(),
        TableFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("serializable")
        ),
    };
    let ok = report.failures() == 0;
    Ok((to_value(&report), text, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(t) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let opts = SolveOptions {
        budget: Budget {
            max_nodes: g.budget_nodes,
            max_time: Duration::from_millis(g.budget_ms),
        },
        deterministic: g.deterministic,
    };
    let (command, spec, outcome) = match &cli.command {
        Command::Gen { graph, format } => ("gen".to_string(), Some(graph), cmd_gen(graph, *format)),
        Command::Invariants { graph } => (
            "invariants".into(),
            Some(graph),
            cmd_invariants(graph, &opts),
        ),
        Command::Solve { problem, graph } => {
            let name = problem
                .to_possible_value()
                .expect("named")
                .get_name()
                .to_string();
            (
                format!("solve {name}"),
                Some(graph),
                cmd_solve(*problem, graph, &opts),
            )
        }
        Command::Transfer {
            kind: TransferKind::Lift { graph, cover },
        } => (
            "transfer lift".into(),
            Some(graph),
            cmd_lift(graph, cover.as_deref(), &opts),
        ),
        Command::Transfer {
            kind: TransferKind::EdgeFromInjective { graph, coloring },
        } => (
            "transfer edge-from-injective".into(),
            Some(graph),
            cmd_edge_from_injective(graph, coloring.as_deref(), &opts),
        ),
        Command::Verify {
            target,
            level,
            p,
            n,
            format,
        } => {
            let cfg = VerifyConfig {
                level: match level {
                    CliLevel::Desk => Level::Desk,
                    CliLevel::Heavy => Level::Heavy,
                },
                opts,
                instance: p.zip(*n),
            };
            (
                format!("verify {target}"),
                None,
                cmd_verify(target, &cfg, *format),
            )
        }
    };
    let spec = spec.map(|s| spec_of(s).map_or_else(|_| s.clone(), |spec| spec.to_string()));
    match outcome {
        Ok((results, text, ok)) => {
            if g.json {
                let record = RunRecord {
                    spec,
                    command,
                    results,
                    timestamp: (!g.deterministic).then(|| chrono::Utc::now().to_rfc3339()),
                    version: env!("CARGO_PKG_VERSION"),
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&record).expect("serializable")
                );
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CLAIM_FAILURE)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Budget(msg)) => {
            eprint!("{msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
