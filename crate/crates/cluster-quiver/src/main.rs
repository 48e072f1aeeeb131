//! Command-line front end: quiver loading, function extension and checks,
//! hammock and tilting queries, decomposition, exhaustive scans, law checks,
//! and TSV/JSON/DOT export. Every subcommand is a thin adapter over the
//! library.
//!
//! Exit codes: 0 all pass/decomposed, 1 a violation/anomaly/infinite-support
//! finding, 2 usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cluster_quiver::cluster::{check_cluster_additive, ClusterFunction, SliceAssignment};
use cluster_quiver::decompose::{
    decompose, scan_anchor_count, scan_range, DecomposeStatus, ScanOutcome,
};
use cluster_quiver::dot::export_dot;
use cluster_quiver::error::{Error, Result};
use cluster_quiver::hammock::{cluster_hammock, default_hammock_budget, left_hammock};
use cluster_quiver::laws::{run_rectangle_trials, run_wing_trials};
use cluster_quiver::quiver::{QuiverSpec, Window, ZVertex};
use cluster_quiver::tilting::{
    d_t, enumerate_tilting_sets, is_confined, is_partial_tilting, mutate, mutation_graph,
    parse_vertex_set, TiltingSet,
};
use cluster_quiver::tsv;

#[derive(Parser)]
#[command(
    name = "cluster-quiver",
    version,
    about = "Cluster-additive functions on translation quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuiverArg {
    /// Quiver file path, or `preset:<TYPE><n>[:orientation]`
    #[arg(long, short)]
    quiver: String,
}

impl QuiverArg {
    fn load(&self) -> Result<Arc<QuiverSpec>> {
        let text = if self.quiver.starts_with("preset:") {
            self.quiver.clone()
        } else {
            fs::read_to_string(&self.quiver)
                .map_err(|e| Error::Usage(format!("cannot read `{}`: {e}", self.quiver)))?
        };
        Ok(Arc::new(QuiverSpec::parse(&text)?))
    }
}

#[derive(Args)]
struct AnchorArgs {
    /// Level of the anchor slice
    #[arg(long, default_value_t = 0)]
    level: i32,
    /// Anchor values as `base=value,...`, total on the slice
    #[arg(long)]
    slice_values: String,
}

impl AnchorArgs {
    fn function(&self, q: &Arc<QuiverSpec>) -> Result<ClusterFunction> {
        let pairs = tsv::parse_slice_values(q, &self.slice_values)?;
        let borrowed: Vec<(&str, i64)> = pairs.iter().map(|(b, v)| (b.as_str(), *v)).collect();
        let anchor = SliceAssignment::from_pairs(q, self.level, &borrowed)?;
        ClusterFunction::extend(Arc::clone(q), anchor)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Extend slice values to a cluster-additive function and print a window
    Extend {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        anchor: AnchorArgs,
        /// Levels beyond the anchor slice to print (inclusive)
        #[arg(long, default_value_t = 3)]
        window: u32,
        /// Levels before the anchor slice to print
        #[arg(long, default_value_t = 0)]
        back: u32,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the extension at one vertex
    Eval {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        anchor: AnchorArgs,
        /// Vertex `base:level`
        #[arg(long)]
        at: String,
    },
    /// Mesh-check a TSV value table
    Check {
        #[command(flatten)]
        quiver: QuiverArg,
        /// TSV file with `base\tlevel\tvalue` rows, `-` for stdin
        #[arg(long)]
        values: String,
    },
    /// Left hammock function of a vertex
    Hammock {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Source vertex `base:level`
        #[arg(long)]
        vertex: String,
        /// Support-size budget (default scales with the quiver)
        #[arg(long)]
        budget: Option<usize>,
        /// Compute the cluster-hammock function instead
        #[arg(long)]
        cluster: bool,
        /// Window height when printing cluster-hammock values
        #[arg(long, default_value_t = 6)]
        window: u32,
        /// Emit a DOT graph instead of TSV
        #[arg(long)]
        dot: bool,
    },
    /// Cluster-hammock function of a vertex
    ClusterHammock {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Tilting-set operations
    Tilting {
        #[command(subcommand)]
        action: TiltingAction,
    },
    /// The function d_T of a tilting set
    Dt {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Members as `base:level,...`
        #[arg(long)]
        set: String,
        /// Multiplicities matching the member order (default all 1)
        #[arg(long)]
        multiplicities: Option<String>,
        /// Levels beyond the lowest member to print
        #[arg(long)]
        window: Option<u32>,
    },
    /// Decompose a cluster-additive function into cluster-hammock functions
    Decompose {
        #[command(flatten)]
        quiver: QuiverArg,
        #[command(flatten)]
        anchor: AnchorArgs,
        #[arg(long, default_value_t = 3)]
        max_domains: u32,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively decompose every anchor in a value range
    Scan {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Anchor value range `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 3)]
        max_domains: u32,
        /// Process shard `i/n` of the anchor index space
        #[arg(long)]
        shard: Option<String>,
        /// Resumable cursor file storing the next anchor index
        #[arg(long)]
        cursor: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Randomized rectangle/wing law checks
    Laws {
        #[command(flatten)]
        quiver: QuiverArg,
        /// `rectangle` or `wing`
        #[arg(long)]
        law: String,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Anchor value range `lo:hi`
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        json: bool,
    },
    /// Render a window of the translation quiver as DOT
    ExportDot {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 0)]
        level: i32,
        /// Levels beyond `level` to render
        #[arg(long, default_value_t = 3)]
        window: u32,
        /// Optional anchor values; node labels then carry function values
        #[arg(long)]
        slice_values: Option<String>,
    },
}

#[derive(Subcommand)]
enum TiltingAction {
    /// List all tilting sets (one F-orbit representative each)
    Enumerate {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        count_only: bool,
    },
    /// Test a vertex set for the partial tilting property
    Check {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        set: String,
    },
    /// Exchange one member of a tilting set
    Mutate {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        set: String,
        /// Member to exchange, `base:level`
        #[arg(long)]
        at: String,
    },
    /// The full mutation graph as DOT
    Graph {
        #[command(flatten)]
        quiver: QuiverArg,
    },
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("expected `lo:hi`, got `{text}`")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad range bound `{lo}`")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad range bound `{hi}`")))?;
    Ok((lo, hi))
}

fn parse_shard(text: &str) -> Result<(u64, u64)> {
    let (i, n) = text
        .split_once('/')
        .ok_or_else(|| Error::Usage(format!("expected `i/n`, got `{text}`")))?;
    let i: u64 = i
        .trim()
        .parse()
        .map_err(|_| Error::Usage("bad shard index".into()))?;
    let n: u64 = n
        .trim()
        .parse()
        .map_err(|_| Error::Usage("bad shard count".into()))?;
    if n == 0 || i >= n {
        return Err(Error::Usage(format!("shard index {i} out of range 0..{n}")));
    }
    Ok((i, n))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Extend {
            quiver,
            anchor,
            window,
            back,
            json,
        } => {
            let q = quiver.load()?;
            let f = anchor.function(&q)?;
            let w = Window::levels(&q, anchor.level - back as i32, anchor.level + window as i32);
            let values = f.values_on(&w);
            if json {
                let rows: Vec<_> = values
                    .iter()
                    .map(|(&v, &x)| json!({"vertex": q.format_vertex(v), "value": x}))
                    .collect();
                println!("{}", json!({ "values": rows }));
            } else {
                print!("{}", tsv::write_values(&q, values));
            }
            Ok(0)
        }
        Command::Eval { quiver, anchor, at } => {
            let q = quiver.load()?;
            let f = anchor.function(&q)?;
            let v = q.parse_vertex(&at)?;
            println!("{}", f.evaluate(v));
            Ok(0)
        }
        Command::Check { quiver, values } => {
            let q = quiver.load()?;
            let text = if values == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Usage(format!("cannot read stdin: {e}")))?;
                buf
            } else {
                fs::read_to_string(&values)
                    .map_err(|e| Error::Usage(format!("cannot read `{values}`: {e}")))?
            };
            let table = tsv::parse_values(&q, &text)?;
            if table.is_empty() {
                return Err(Error::Usage("empty value table".into()));
            }
            let window = window_of_table(&q, &table);
            let violations = check_cluster_additive(&table, &window, &q)?;
            let meshes = window
                .vertices()
                .into_iter()
                .filter(|&z| {
                    window.contains(z.tau()) && q.mesh(z).iter().all(|&(y, _)| window.contains(y))
                })
                .count();
            if violations.is_empty() {
                println!("meshes={meshes} violations=0");
                Ok(0)
            } else {
                for v in &violations {
                    println!("{}", v.describe(&q));
                }
                println!("meshes={meshes} violations={}", violations.len());
                Ok(1)
            }
        }
        Command::Hammock {
            quiver,
            vertex,
            budget,
            cluster,
            window,
            dot,
        } => {
            let q = quiver.load()?;
            let p = q.parse_vertex(&vertex)?;
            if cluster {
                return cluster_hammock_output(&q, p, window, dot);
            }
            let budget = budget.unwrap_or_else(|| default_hammock_budget(&q));
            let table = left_hammock(&q, p, budget)?;
            if dot {
                let lo = table.support().map(|v| v.level).min().unwrap_or(0);
                let hi = table.support().map(|v| v.level).max().unwrap_or(0);
                let w = Window::levels(&q, lo, hi);
                let lookup = |v: ZVertex| table.value(v);
                print!("{}", export_dot(&q, &w, Some(&lookup))?);
            } else {
                print!("{}", tsv::write_values(&q, table.entries()));
            }
            Ok(0)
        }
        Command::ClusterHammock {
            quiver,
            vertex,
            window,
            dot,
        } => {
            let q = quiver.load()?;
            let p = q.parse_vertex(&vertex)?;
            cluster_hammock_output(&q, p, window, dot)
        }
        Command::Tilting { action } => match action {
            TiltingAction::Enumerate { quiver, count_only } => {
                let q = quiver.load()?;
                let sets = enumerate_tilting_sets(&q)?;
                if count_only {
                    println!("{}", sets.len());
                } else {
                    for set in &sets {
                        println!("{}", set.format(&q));
                    }
                }
                Ok(0)
            }
            TiltingAction::Check { quiver, set } => {
                let q = quiver.load()?;
                let members = parse_vertex_set(&q, &set)?;
                let partial = is_partial_tilting(&q, &members)?;
                let witness = is_confined(&q, &members)?;
                match witness {
                    Some(slice) if partial => {
                        let tag = if members.len() == q.vertex_count() {
                            "tilting"
                        } else {
                            "partial-tilting"
                        };
                        println!(
                            "{tag} confined_by={}",
                            slice
                                .iter()
                                .map(|&v| q.format_vertex(v))
                                .collect::<Vec<_>>()
                                .join(",")
                        );
                        Ok(0)
                    }
                    Some(_) => {
                        println!("not-partial-tilting (pair with h_x(x') != 0)");
                        Ok(1)
                    }
                    None => {
                        println!("not-partial-tilting (not confined)");
                        Ok(1)
                    }
                }
            }
            TiltingAction::Mutate { quiver, set, at } => {
                let q = quiver.load()?;
                let members = parse_vertex_set(&q, &set)?;
                let at = q.parse_vertex(&at)?;
                let result = mutate(&q, &TiltingSet::new(members), at)?;
                println!(
                    "removed={} inserted={} set={}",
                    q.format_vertex(result.removed),
                    q.format_vertex(result.inserted),
                    result.new_set.format(&q)
                );
                Ok(0)
            }
            TiltingAction::Graph { quiver } => {
                let q = quiver.load()?;
                let graph = mutation_graph(&q)?;
                let name = |set: &[ZVertex]| {
                    set.iter()
                        .map(|&v| q.format_vertex(v))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                println!("graph mutation {{");
                println!("  node [shape=box];");
                for (node, neighbors) in &graph {
                    for nbr in neighbors {
                        // one undirected edge per unordered pair
                        if node < nbr {
                            println!("  \"{}\" -- \"{}\";", name(node), name(nbr));
                        }
                    }
                }
                println!("}}");
                Ok(0)
            }
        },
        Command::Dt {
            quiver,
            set,
            multiplicities,
            window,
        } => {
            let q = quiver.load()?;
            let members = parse_vertex_set(&q, &set)?;
            let mult: Vec<i64> = match multiplicities {
                None => vec![1; members.len()],
                Some(text) => text
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::Usage(format!("bad multiplicity `{s}`")))
                    })
                    .collect::<Result<_>>()?,
            };
            let f = d_t(&q, &members, &mult)?;
            let lo = members.iter().map(|v| v.level).min().unwrap_or(0);
            let span = window
                .map(|w| w as i32)
                .unwrap_or_else(|| q.shift_maps().map(|m| m.max_f_level_offset()).unwrap_or(4));
            let w = Window::levels(&q, lo, lo + span);
            print!("{}", tsv::write_values(&q, f.values_on(&w)));
            Ok(0)
        }
        Command::Decompose {
            quiver,
            anchor,
            max_domains,
            json,
        } => {
            let q = quiver.load()?;
            let f = anchor.function(&q)?;
            let d = decompose(&f, max_domains)?;
            let status = match d.status {
                DecomposeStatus::Decomposed => "decomposed",
                DecomposeStatus::ResidualNonzero => "residual-nonzero",
                DecomposeStatus::WindowExhausted => "window-exhausted",
            };
            if json {
                let terms: Vec<_> = d
                    .terms
                    .iter()
                    .map(|(&v, &c)| json!({"vertex": q.format_vertex(v), "coefficient": c}))
                    .collect();
                println!(
                    "{}",
                    json!({
                        "status": status,
                        "terms": terms,
                        "residual_norm": d.residual_norm,
                        "steps": d.steps,
                        "notes": d.notes,
                    })
                );
            } else {
                println!("status={status}");
                for (&v, &c) in &d.terms {
                    println!("term\t{}\t{}", q.format_vertex(v), c);
                }
                println!("residual_norm={}", d.residual_norm);
                for note in &d.notes {
                    println!("note: {note}");
                }
            }
            Ok(u8::from(!d.is_clean()))
        }
        Command::Scan {
            quiver,
            range,
            max_domains,
            shard,
            cursor,
            json,
        } => {
            let q = quiver.load()?;
            let (lo, hi) = parse_range(&range)?;
            let total = scan_anchor_count(&q, lo, hi);
            let (mut start, end) = match shard {
                None => (0, total),
                Some(text) => {
                    let (i, n) = parse_shard(&text)?;
                    let per = total.div_ceil(n);
                    ((i * per).min(total), ((i + 1) * per).min(total))
                }
            };
            let mut resumed_from = None;
            if let Some(path) = &cursor {
                if let Ok(text) = fs::read_to_string(path) {
                    let next: u64 = text.trim().parse().map_err(|_| {
                        Error::Usage(format!("cursor file `{path}` is not an anchor index"))
                    })?;
                    if next > start {
                        resumed_from = Some(next);
                        start = next.min(end);
                    }
                }
            }
            let mut outcome = ScanOutcome::default();
            let chunk = 512u64;
            let mut at = start;
            while at < end {
                let stop = (at + chunk).min(end);
                let part = scan_range(&q, lo, hi, at, stop, max_domains)?;
                outcome.anchors += part.anchors;
                outcome.decomposed += part.decomposed;
                outcome.anomalies += part.anomalies;
                outcome.anomaly_anchors.extend(part.anomaly_anchors);
                at = stop;
                if let Some(path) = &cursor {
                    fs::write(path, format!("{at}\n"))
                        .map_err(|e| Error::Usage(format!("cannot write cursor: {e}")))?;
                }
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "anchors": outcome.anchors,
                        "decomposed": outcome.decomposed,
                        "anomalies": outcome.anomalies,
                        "anomaly_anchors": outcome.anomaly_anchors,
                        "range": {"lo": lo, "hi": hi},
                        "shard": {"start": start, "end": end, "total": total},
                        "resumed_from": resumed_from,
                    })
                );
            } else {
                if let Some(from) = resumed_from {
                    println!("resumed at anchor index {from}");
                }
                println!("{}", outcome.summary());
                for values in &outcome.anomaly_anchors {
                    println!(
                        "anomaly\t{}",
                        values
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                }
            }
            Ok(u8::from(outcome.anomalies > 0))
        }
        Command::Laws {
            quiver,
            law,
            trials,
            seed,
            range,
            json,
        } => {
            let q = quiver.load()?;
            let (lo, hi) = parse_range(&range)?;
            let summary = match law.as_str() {
                "rectangle" => run_rectangle_trials(&q, trials, seed, lo, hi)?,
                "wing" => run_wing_trials(&q, trials, seed, lo, hi)?,
                other => {
                    return Err(Error::Usage(format!(
                        "unknown law `{other}` (expected rectangle or wing)"
                    )))
                }
            };
            if json {
                println!(
                    "{}",
                    json!({
                        "law": law,
                        "functions": summary.functions,
                        "instances": summary.instances,
                        "passes": summary.passes,
                        "skipped": summary.skipped,
                        "failures": summary.failures,
                    })
                );
            } else {
                println!("{}", summary.summary());
                for failure in &summary.failures {
                    println!("failure: {failure}");
                }
            }
            Ok(u8::from(!summary.all_passed()))
        }
        Command::ExportDot {
            quiver,
            level,
            window,
            slice_values,
        } => {
            let q = quiver.load()?;
            let w = Window::levels(&q, level, level + window as i32);
            let output = match slice_values {
                Some(text) => {
                    let pairs = tsv::parse_slice_values(&q, &text)?;
                    let borrowed: Vec<(&str, i64)> =
                        pairs.iter().map(|(b, v)| (b.as_str(), *v)).collect();
                    let anchor = SliceAssignment::from_pairs(&q, level, &borrowed)?;
                    let f = ClusterFunction::extend(Arc::clone(&q), anchor)?;
                    let lookup = move |v: ZVertex| f.evaluate(v);
                    export_dot(&q, &w, Some(&lookup))?
                }
                None => export_dot(&q, &w, None)?,
            };
            print!("{output}");
            Ok(0)
        }
    }
}

fn cluster_hammock_output(q: &Arc<QuiverSpec>, x: ZVertex, window: u32, dot: bool) -> Result<u8> {
    let f = cluster_hammock(q, x)?;
    let w = Window::levels(q, x.level, x.level + window as i32);
    if dot {
        let lookup = |v: ZVertex| f.evaluate(v);
        print!("{}", export_dot(q, &w, Some(&lookup))?);
    } else {
        print!("{}", tsv::write_values(q, f.values_on(&w)));
    }
    Ok(0)
}

fn window_of_table(q: &QuiverSpec, table: &BTreeMap<ZVertex, i64>) -> Window {
    let lo = table.keys().map(|v| v.level).min().unwrap();
    let hi = table.keys().map(|v| v.level).max().unwrap();
    Window::levels(q, lo, hi)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Anomaly(_) | Error::BudgetExceeded { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
