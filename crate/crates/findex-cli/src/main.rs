use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use findex::bounds::{audit, classify_bound, AuditOptions};
use findex::enumeration::{
    enumerate_bicyclic, enumerate_bicyclic_visit, realize, EnumSpec, DEFAULT_ENUM_CAP,
};
use findex::formats::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use findex::graph::Graph;
use findex::histogram::{f_from_histogram, histogram_from_graph, DegreeHistogram};
use findex::partition::{case_params, major_sequence, residue_params};

mod report;
use report::SweepTable;

#[derive(Parser)]
#[command(
    name = "findex",
    version,
    about = "Forgotten index of bicyclic graphs: compute, bound, enumerate, audit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute F, degree data and the bicyclic verdict for one graph
    Compute(ComputeArgs),
    /// Audit the closed-form bounds against the histogram and enumeration oracles
    Audit(AuditArgs),
    /// Print the claimed optimum histogram for (n, delta)
    MajorSeq(PairArgs),
    /// Print the applicable closed-form bound for (n, delta)
    Bound(PairArgs),
    /// Build a connected graph realizing a degree histogram
    Realize(RealizeArgs),
    /// List bicyclic graphs of a given order as graph6
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    /// Input file; '-' or absent reads standard input
    path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Call a graph bicyclic on the edge-count test alone
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Order for a single audit
    #[arg(long, requires = "delta", conflicts_with = "n_max")]
    n: Option<u64>,
    /// Maximum degree for a single audit
    #[arg(long, requires = "n")]
    delta: Option<usize>,
    /// Sweep every pair with 4 <= n <= N, 3 <= delta <= n - 1
    #[arg(long, conflicts_with_all = ["n", "delta"])]
    n_max: Option<u64>,
    /// Worker threads for the enumeration tier
    #[arg(long, env = "FINDEX_JOBS")]
    jobs: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    /// Exit 1 when any audited pair is VIOLATED
    #[arg(long)]
    strict: bool,
    /// Include per-tier runtimes (output is no longer reproducible)
    #[arg(long)]
    timings: bool,
    /// Raise the enumeration budget above the default (slow)
    #[arg(long, value_name = "N")]
    unsafe_n_max: Option<usize>,
    /// Audit against maximum degree <= delta instead of exactly delta
    #[arg(long)]
    delta_at_most: bool,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    delta: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RealizeArgs {
    /// Comma-separated counts n_1,...,n_delta
    #[arg(long)]
    histogram: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Keep only graphs whose maximum degree is exactly this value
    #[arg(long)]
    delta: Option<usize>,
    /// Emit every labeled graph instead of one per isomorphism class
    #[arg(long)]
    labeled: bool,
    /// Worker threads (summary computation only; listings stream sequentially)
    #[arg(long, env = "FINDEX_JOBS")]
    jobs: Option<usize>,
    /// Raise the enumeration budget above the default (slow)
    #[arg(long, value_name = "N")]
    unsafe_n_max: Option<usize>,
    /// Print only the summary as JSON
    #[arg(long)]
    summary_only: bool,
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like any other line tool
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Compute(args) => cmd_compute(args),
        Command::Audit(args) => cmd_audit(args),
        Command::MajorSeq(args) => cmd_major_seq(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Realize(args) => cmd_realize(args),
        Command::Enumerate(args) => cmd_enumerate(args),
    }
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode> {
    let text = read_input(args.path.as_deref())?;
    let g = parse_graph(&text, args.format)?;
    let f = g.forgotten_index()?;
    let bicyclic = if args.allow_disconnected {
        g.is_bicyclic_relaxed()
    } else {
        g.is_bicyclic()
    };
    let histogram = histogram_from_graph(&g).ok();
    if args.json {
        let hist_json = histogram
            .as_ref()
            .map(|h| serde_json::to_value(h).expect("histogram serializes"))
            .unwrap_or(serde_json::Value::Null);
        let value = serde_json::json!({
            "n": g.n(),
            "m": g.m(),
            "delta": g.max_degree(),
            "bicyclic": bicyclic,
            "f": f,
            "histogram": hist_json,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        let hist = histogram
            .as_ref()
            .map(|h| format!("[{h}]"))
            .unwrap_or_else(|| "-".to_string());
        println!(
            "n={} m={} delta={} bicyclic={} F={} histogram={}",
            g.n(),
            g.m(),
            g.max_degree(),
            bicyclic,
            f,
            hist
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_audit(args: AuditArgs) -> Result<ExitCode> {
    let cap = args.unsafe_n_max.unwrap_or(DEFAULT_ENUM_CAP);
    if cap > DEFAULT_ENUM_CAP {
        eprintln!("warning: enumeration budget raised to {cap}; expect long runtimes");
    }
    let opts = AuditOptions {
        enum_cap: cap,
        jobs: resolve_jobs(args.jobs),
        delta_at_most: args.delta_at_most,
    };

    let pairs: Vec<(u64, usize)> = match (args.n, args.delta, args.n_max) {
        (Some(n), Some(delta), None) => vec![(n, delta)],
        (None, None, Some(n_max)) => {
            if n_max < 4 {
                bail!("--n-max must be at least 4");
            }
            (4..=n_max)
                .flat_map(|n| (3..=(n as usize - 1)).map(move |d| (n, d)))
                .collect()
        }
        _ => bail!("provide either --n with --delta, or --n-max"),
    };

    let mut rows = Vec::with_capacity(pairs.len());
    for (n, delta) in pairs {
        eprintln!("auditing n={n} delta={delta}");
        rows.push(audit(n, delta, &opts)?);
    }
    let table = SweepTable::new(rows, cap, args.delta_at_most);
    let text = match args.format {
        ReportFormat::Json => table.to_json(args.timings)?,
        ReportFormat::Csv => table.to_csv(),
    };
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    if args.strict && table.any_violated() {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_major_seq(args: PairArgs) -> Result<ExitCode> {
    let params = residue_params(args.n, args.delta)?;
    let h = major_sequence(&params)?;
    let f = f_from_histogram(&h)?;
    if args.json {
        let case = case_params(0, &params)?;
        let value = serde_json::json!({
            "params": params,
            "histogram": h,
            "f": f,
            "case": case,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{h} F={f}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(args: PairArgs) -> Result<ExitCode> {
    let params = residue_params(args.n, args.delta)?;
    let bound = classify_bound(&params)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&bound)?);
    } else {
        match bound.value {
            Some(v) => println!("theorem={} value={}", bound.theorem, v),
            None => println!("theorem={}", bound.theorem),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_realize(args: RealizeArgs) -> Result<ExitCode> {
    let counts: Vec<u64> = args
        .histogram
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .with_context(|| format!("invalid count '{t}'"))
        })
        .collect::<Result<_>>()?;
    let h = DegreeHistogram::from_counts(counts)?;
    let g = realize(&h)?;
    let g6 = emit_graph6(&g)?;
    if args.json {
        let value = serde_json::json!({
            "graph6": g6,
            "n": g.n(),
            "m": g.m(),
            "f": g.forgotten_index()?,
            "edges": g.edges(),
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{g6}");
        print!("{}", emit_edge_list(&g));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode> {
    let mut spec = EnumSpec::new(args.n);
    spec.delta_exact = args.delta;
    spec.dedup = !args.labeled;
    spec.jobs = resolve_jobs(args.jobs);
    spec.cap = args.unsafe_n_max.unwrap_or(DEFAULT_ENUM_CAP);
    if spec.cap > DEFAULT_ENUM_CAP {
        eprintln!(
            "warning: enumeration budget raised to {}; expect long runtimes",
            spec.cap
        );
    }
    eprintln!(
        "enumerating n={} ({}){}",
        args.n,
        if args.labeled {
            "labeled"
        } else {
            "one per isomorphism class"
        },
        args.delta
            .map(|d| format!(" with max degree {d}"))
            .unwrap_or_default(),
    );
    if args.summary_only {
        let summary = enumerate_bicyclic(&spec)?;
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        // stream rather than buffer: labeled listings can run to millions
        let stdout = std::io::stdout();
        let mut out = std::io::BufWriter::new(stdout.lock());
        let mut failure = None;
        let summary = enumerate_bicyclic_visit(&spec, |g| {
            if failure.is_some() {
                return;
            }
            match emit_graph6(g) {
                Ok(g6) => {
                    if let Err(e) = writeln!(out, "{g6}") {
                        failure = Some(anyhow::Error::from(e));
                    }
                }
                Err(e) => failure = Some(anyhow::Error::from(e)),
            }
        })?;
        drop(out);
        if let Some(e) = failure {
            return Err(e);
        }
        eprintln!(
            "count={} max_f={}",
            summary.count,
            summary
                .max_f
                .map(|f| f.to_string())
                .unwrap_or_else(|| "-".into())
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn resolve_jobs(jobs: Option<usize>) -> usize {
    jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn read_input(path: Option<&std::path::Path>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading standard input")?;
            Ok(buf)
        }
    }
}

fn parse_graph(text: &str, format: InputFormat) -> Result<Graph> {
    let format = match format {
        InputFormat::Auto => detect_format(text),
        other => other,
    };
    let g = match format {
        InputFormat::EdgeList | InputFormat::Auto => parse_edge_list(text)?,
        InputFormat::Graph6 => parse_graph6(text)?,
    };
    Ok(g)
}

/// Edge lists open with a bare integer line; graph6 bytes sit at 63..=126,
/// outside the ASCII digits, so the first data line decides.
fn detect_format(text: &str) -> InputFormat {
    for raw in text.lines() {
        let data = raw.split('#').next().unwrap_or("").trim();
        if data.is_empty() {
            continue;
        }
        if data.bytes().all(|b| b.is_ascii_digit()) {
            return InputFormat::EdgeList;
        }
        return InputFormat::Graph6;
    }
    InputFormat::EdgeList
}
