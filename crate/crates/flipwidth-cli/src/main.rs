//! Command-line laboratory for the flipper game: exact verdicts, flip-width,
//! obstruction checks, bi-join decompositions, strategy synthesis and
//! verification, the reproduction census, and an interactive play loop.

mod play;

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use flipwidth::census::{run_census, CensusConfig, CensusRecord, CensusReport};
use flipwidth::export;
use flipwidth::graph::{Graph, Radius};
use flipwidth::graph6::{emit_graph6, parse_graph6};
use flipwidth::iso::enumerate_classes;
use flipwidth::obstructions::{
    flip_closure_table, isolation_census, obstruction_witness, two_vertex_component_census,
    ObstructionKind,
};
use flipwidth::solver::{flip_width, solve_with, SolveOptions, SOLVER_VERSION};
use flipwidth::strategy::{radius1_script, synthesize_strategy};
use flipwidth::verify::{verify_strategy, TableStrategy, VerifyReport};

/// Exit codes: 0 success (census: all consistent, none skipped), 1 runtime
/// error, 2 usage error (clap), 3 census had skipped graphs, 4 census had
/// inconsistent records.
#[derive(Parser)]
#[command(name = "flipwidth", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct GraphArg {
    /// graph6 string, or a named preset: C5, bull, gem, cogem, petersen,
    /// K<n>, C<n>, P<n>, E<n>
    graph: String,
}

impl GraphArg {
    fn resolve(&self) -> Result<Graph> {
        resolve_graph(&self.graph)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide the flipper game at a given width and radius
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value = "inf")]
        radius: Radius,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the exact radius-r flip-width
    Flipwidth {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "inf")]
        radius: Radius,
    },
    /// Check (C5, bull, gem, co-gem)-freeness
    Obstructions {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the bi-join decomposition tree
    Decompose {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compile the width-2 strategy from the decomposition
    Synthesize {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Adversarially verify a flipper strategy
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value = "inf")]
        radius: Radius,
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// synth: compiled from the decomposition; solve: positional table
        /// from the solver; script-cogem / script-gem: the radius-1 scripts
        #[arg(long, default_value = "synth")]
        source: String,
    },
    /// Reproduce the width-2 characterization over a graph corpus
    Census {
        /// census all isomorphism classes on n vertices
        #[arg(long, conflicts_with = "corpus")]
        n: Option<usize>,
        /// census graph6 lines from a file (one graph per line)
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value = "inf")]
        radius: Radius,
        /// solver width for the verdict columns (the characterization is a
        /// width-2 notion; only 2 is accepted)
        #[arg(long, default_value_t = 2)]
        width: usize,
        /// append-only JSONL cache keyed by (graph6, radius, width, solver version)
        #[arg(long)]
        cache: Option<PathBuf>,
        /// worker threads (0 = rayon default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Play the flipper game interactively on stdin/stdout
    Play {
        #[command(flatten)]
        graph: GraphArg,
        /// your role; the machine plays the other side
        #[arg(long, value_enum, default_value = "runner")]
        role: play::Role,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long, default_value = "inf")]
        radius: Radius,
    },
    /// Print the exhaustive flip censuses of the four obstructions
    Lemmas {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn resolve_graph(input: &str) -> Result<Graph> {
    let preset_order = match input.to_ascii_lowercase().as_str() {
        "c5" | "bull" | "gem" | "cogem" | "co-gem" => Some(5),
        "petersen" => Some(10),
        _ => input
            .strip_prefix(['K', 'C', 'P', 'E'])
            .and_then(|rest| rest.parse::<usize>().ok()),
    };
    if let Some(n) = preset_order {
        if n > flipwidth::graph::max_order() {
            bail!(
                "order {n} exceeds the configured cap {} (see FLIPWIDTH_MAX_N)",
                flipwidth::graph::max_order()
            );
        }
    }
    let named = match input.to_ascii_lowercase().as_str() {
        "c5" => Some(ObstructionKind::C5.graph()),
        "bull" => Some(ObstructionKind::Bull.graph()),
        "gem" => Some(ObstructionKind::Gem.graph()),
        "cogem" | "co-gem" => Some(ObstructionKind::CoGem.graph()),
        "petersen" => Some(Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        )),
        _ => None,
    };
    if let Some(g) = named {
        return Ok(g);
    }
    if let Some(rest) = input.strip_prefix(['K', 'C', 'P', 'E']) {
        if let Ok(n) = rest.parse::<usize>() {
            let g = match input.as_bytes()[0] {
                b'K' => Graph::complete(n),
                b'C' => Graph::cycle(n),
                b'P' => Graph::path(n),
                _ => Graph::empty(n),
            };
            return Ok(g);
        }
    }
    parse_graph6(input).with_context(|| format!("cannot interpret {input:?} as a graph"))
}

fn print_value(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve { graph, width, radius, format } => {
            require_width(width)?;
            let g = graph.resolve()?;
            let (verdict, arena) = solve_with(&g, width, radius, &SolveOptions::default())?;
            match format {
                Format::Json => print_value(&export::verdict_to_json(&arena, &verdict)),
                Format::Text => print!("{}", export::verdict_to_text(&arena, &verdict)),
                Format::Dot => bail!("solve verdicts have no dot form (use json or text)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Flipwidth { graph, radius } => {
            let g = graph.resolve()?;
            let fw = flip_width(&g, radius)?;
            println!("{fw}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Obstructions { graph, format } => {
            let g = graph.resolve()?;
            let witness = obstruction_witness(&g);
            match format {
                Format::Json => print_value(&serde_json::json!({
                    "graph6": emit_graph6(&g),
                    "obstruction_free": witness.is_none(),
                    "witness": witness.as_ref().map(|(k, emb)| serde_json::json!({
                        "kind": k.name(),
                        "embedding": emb,
                    })),
                })),
                Format::Text => match witness {
                    None => println!("obstruction-free"),
                    Some((kind, emb)) => println!("contains induced {kind} on vertices {emb:?}"),
                },
                Format::Dot => bail!("obstruction checks have no dot form (use json or text)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { graph, format } => {
            let g = graph.resolve()?;
            let tree = flipwidth::bijoin::build_decomposition(&g)?;
            match format {
                Format::Dot => print!("{}", export::decomposition_to_dot(&tree)),
                Format::Json => print_value(&export::decomposition_to_json(&tree)),
                Format::Text => print!("{}", export::decomposition_to_text(&tree)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Synthesize { graph, format } => {
            let g = graph.resolve()?;
            let strat = synthesize_strategy(&g)?;
            match format {
                Format::Dot => print!("{}", export::strategy_to_dot(&strat)),
                Format::Json => print_value(&export::strategy_to_json(&strat)),
                Format::Text => {
                    let v = export::strategy_to_json(&strat);
                    if let Some(phases) = v["phases"].as_array() {
                        println!("root: {}", v["root"].as_str().unwrap_or("?"));
                        for p in phases {
                            println!(
                                "{} phase {}: announce {} ; descend when runner in {}",
                                p["node"].as_str().unwrap_or("?"),
                                p["phase"],
                                p["flip"].as_str().unwrap_or("?"),
                                p["descend_into"].as_str().unwrap_or("?"),
                            );
                        }
                    } else {
                        println!("direct one-round flip: {}", v["flip"].as_str().unwrap_or("?"));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { graph, radius, width, source } => {
            require_width(width)?;
            let g = graph.resolve()?;
            let report = match source.as_str() {
                "synth" => {
                    let strat = synthesize_strategy(&g)?;
                    verify_strategy(&g, radius, &strat)?
                }
                "solve" => {
                    let (verdict, arena) = solve_with(&g, width, radius, &SolveOptions::default())?;
                    let strat = TableStrategy::from_verdict(&verdict, &arena);
                    verify_strategy(&g, radius, &strat)?
                }
                "script-cogem" => {
                    let script = radius1_script(ObstructionKind::CoGem).expect("co-gem script");
                    verify_strategy(&g, radius, &script)?
                }
                "script-gem" => {
                    let script = radius1_script(ObstructionKind::Gem).expect("gem script");
                    verify_strategy(&g, radius, &script)?
                }
                other => {
                    bail!("unknown strategy source {other:?} (synth|solve|script-cogem|script-gem)")
                }
            };
            print_verify_report(&report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Census { n, corpus, radius, width, cache, jobs } => {
            if width != 2 {
                bail!("the characterization census is a width-2 notion; --width must be 2");
            }
            if jobs > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .context("building worker pool")?;
            }
            let graphs = match (n, corpus) {
                (Some(n), None) => enumerate_classes(n)?,
                (None, Some(path)) => read_corpus(&path)?,
                _ => bail!("census needs exactly one of --n or --corpus"),
            };
            let report = census_with_cache(&graphs, radius, cache.as_deref())?;
            print!("{}", export::census_to_jsonl(&report));
            eprintln!(
                "census: {} graphs, {} obstruction-free, {} inconsistent, {} skipped, {} strategy failures",
                report.summary.total,
                report.summary.obstruction_free,
                report.summary.inconsistent,
                report.summary.skipped,
                report.summary.strategy_failures,
            );
            if report.summary.inconsistent > 0 {
                Ok(ExitCode::from(4))
            } else if report.summary.skipped > 0 {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Play { graph, role, width, radius } => {
            require_width(width)?;
            let g = graph.resolve()?;
            let stdin = std::io::stdin();
            let stdout = std::io::stdout();
            play::run_play(&g, width, radius, role, stdin.lock(), stdout.lock())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas { format } => {
            match format {
                Format::Dot => bail!("lemma censuses have no dot form (use json or text)"),
                Format::Json => {
                    let closure: Vec<_> = ObstructionKind::ALL
                        .into_iter()
                        .map(|k| {
                            let rows = flip_closure_table(k).expect("closure holds");
                            serde_json::json!({
                                "graph": k.name(),
                                "rows": rows
                                    .iter()
                                    .map(|(a, out)| serde_json::json!([a.to_string(), out.name()]))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let v = serde_json::json!({
                        "flip_closure": closure,
                        "isolated_pairs": ObstructionKind::ALL
                            .into_iter()
                            .map(|k| export::census_hits_to_json(k, &isolation_census(k)))
                            .collect::<Vec<_>>(),
                        "two_vertex_components": ObstructionKind::ALL
                            .into_iter()
                            .map(|k| export::census_hits_to_json(k, &two_vertex_component_census(k)))
                            .collect::<Vec<_>>(),
                    });
                    print_value(&v);
                }
                Format::Text => {
                    println!("== flips with at least two isolated vertices ==");
                    for k in ObstructionKind::ALL {
                        print!("{}", export::census_hits_to_text(k, &isolation_census(k)));
                    }
                    println!("\n== flips with a two-vertex component ==");
                    for k in ObstructionKind::ALL {
                        print!("{}", export::census_hits_to_text(k, &two_vertex_component_census(k)));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn require_width(width: usize) -> Result<()> {
    if width == 0 {
        bail!("width must be at least 1");
    }
    Ok(())
}

fn print_verify_report(report: &VerifyReport) {
    if report.captures {
        println!("captures: true (worst case {} announced flips)", report.max_rounds);
    } else {
        println!("captures: false");
        if let Some(trace) = &report.escape {
            println!("escape witness: runner starts at {}", trace.start);
            for (i, round) in trace.rounds.iter().enumerate() {
                println!(
                    "  round {}: flipper announces {} ; runner {} -> {}",
                    i + 1,
                    round.spec,
                    round.runner_from,
                    round.runner_to
                );
            }
            println!("  configuration repeats from round {}", trace.cycle_from + 1);
        }
    }
}

fn read_corpus(path: &std::path::Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read corpus {}", path.display()))?;
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = parse_graph6(line)
            .with_context(|| format!("{}:{}: bad graph6 line", path.display(), i + 1))?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// One line of the append-only census cache.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    graph6: String,
    r: String,
    k: usize,
    solver_version: String,
    record: CensusRecord,
}

fn census_with_cache(
    graphs: &[Graph],
    radius: Radius,
    cache_path: Option<&std::path::Path>,
) -> Result<CensusReport> {
    let config = CensusConfig::new(radius);
    let Some(path) = cache_path else {
        return Ok(run_census(graphs, &config));
    };

    let mut cached: HashMap<String, CensusRecord> = HashMap::new();
    if path.exists() {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read cache {}", path.display()))?;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let entry: CacheEntry =
                serde_json::from_str(line).with_context(|| "corrupt cache line")?;
            // a cached record is used only when every key component matches
            if entry.r == radius.to_string()
                && entry.k == 2
                && entry.solver_version == SOLVER_VERSION
            {
                cached.insert(entry.graph6.clone(), entry.record);
            }
        }
    }

    let mut fresh: Vec<Graph> = Vec::new();
    let mut records: Vec<CensusRecord> = Vec::new();
    for g in graphs {
        match cached.get(&emit_graph6(g)) {
            Some(r) => records.push(r.clone()),
            None => fresh.push(*g),
        }
    }

    let fresh_report = run_census(&fresh, &config);
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("cannot open cache {}", path.display()))?;
    for r in &fresh_report.records {
        let entry = CacheEntry {
            graph6: r.graph6.clone(),
            r: radius.to_string(),
            k: 2,
            solver_version: SOLVER_VERSION.to_string(),
            record: r.clone(),
        };
        writeln!(file, "{}", serde_json::to_string(&entry)?)?;
    }

    records.extend(fresh_report.records);
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let summary = flipwidth::census::CensusSummary {
        total: records.len(),
        obstruction_free: records.iter().filter(|r| r.obstruction_free == Some(true)).count(),
        inconsistent: records.iter().filter(|r| !r.consistent).count(),
        skipped: records.iter().filter(|r| r.skipped).count(),
        strategy_failures: records.iter().filter(|r| r.strategy_verified == Some(false)).count(),
    };
    Ok(CensusReport { records, summary })
}
