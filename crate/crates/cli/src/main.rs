use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sunada_core::config::{load_metric, PipelineConfig, Setup};
use sunada_core::linalg::{length_from_invariant, word_matrix, WordEvaluator};
use sunada_core::pipeline;
use sunada_core::report::Check;
use sunada_core::words::parse_word;
use sunada_core::Error;

#[derive(Parser)]
#[command(name = "sunada", version, about = "Sunada covers of a genus-two surface: certificates and the full report")]
struct Cli {
    /// Pipeline configuration (TOML); the built-in default is used otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for the parallel stages.
    #[arg(long, global = true, env = "SUNADA_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group-theoretic checks.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Preimages of curves in the covers.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Lifting the involution to both covers.
    #[command(subcommand)]
    Involution(InvolutionCmd),
    /// Exact trace of a word under the metric.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Metric file with an `order` and a `[matrices]` table.
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Candidate curves and the trace-uniqueness search.
    Enumerate {
        /// Write the candidate words here, one per line.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Crossings of lifts and simplicity of the components.
    Simplicity,
    /// Runs every check in order and writes the report.
    ReproducePaper {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Almost conjugacy and non-conjugacy of H and K.
    VerifyGassmann,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Components and degrees of the preimage of a curve.
    Components {
        #[arg(long)]
        subgroup: String,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Orbits of H and K on the lifts of the curve.
    Orbits,
}

#[derive(Subcommand)]
enum InvolutionCmd {
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn print_check(out: &mut String, c: &Check) {
    let _ = writeln!(out, "{}: {} - {}", c.name, c.status.as_str(), c.summary);
    for d in &c.deviations {
        let _ = writeln!(out, "  deviation: {d}");
    }
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&c.certificate).expect("value serializes"));
}

fn report(out: &mut String, checks: &[Check]) -> Result<(), Failure> {
    for c in checks {
        print_check(out, c);
    }
    if checks.iter().all(|c| c.status.is_ok()) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn setup(cli: &Cli) -> Result<Setup, Failure> {
    let cfg = match &cli.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::paper(),
    };
    Ok(cfg.resolve()?)
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let s = setup(cli)?;
    match &cli.command {
        Command::Group(GroupCmd::VerifyGassmann) => report(out, &[pipeline::check_gassmann(&s)?]),
        Command::Cover(CoverCmd::Components { subgroup, curve }) => {
            let sub = s.subgroup(subgroup)?;
            let (w, rho) = s.parse_curve(curve)?;
            if w.is_empty() {
                return Err(Failure::Usage("--curve: empty word".into()));
            }
            let cert = pipeline::components_certificate(rho, &s, sub, &w)?;
            let degrees: Vec<String> =
                cert["degrees"].as_array().into_iter().flatten().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "degrees: {}", degrees.join(","));
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&cert).expect("value serializes"));
            Ok(())
        }
        Command::Cover(CoverCmd::Orbits) => report(out, &[pipeline::check_orbits(&s)?]),
        Command::Involution(InvolutionCmd::Check) => report(out, &[pipeline::check_involution(&s)?]),
        Command::Trace { word, metric } => {
            let metric = match metric {
                Some(p) => load_metric(p)?,
                None => s.metric.clone(),
            };
            let w = parse_word(word, &s.subsurface)?;
            if w.is_empty() {
                return Err(Failure::Usage("--word: empty word".into()));
            }
            let m = word_matrix(&metric, &w)?;
            let inv = WordEvaluator::new(&metric).trace_invariant(&w)?;
            let _ = writeln!(out, "tr = {}", m.trace());
            let _ = writeln!(out, "det = {}", m.det());
            let _ = writeln!(out, "tr^2/det = {inv}");
            let _ = match length_from_invariant(&inv, s.precision) {
                Ok(l) => writeln!(out, "length = {l}"),
                Err(e) => writeln!(out, "length: {e}"),
            };
            Ok(())
        }
        Command::Enumerate { emit } => {
            let (spine, model) = pipeline::check_spine(&s)?;
            let Some(model) = model else {
                return report(out, &[spine]);
            };
            let (cands, set) = pipeline::check_candidates(&s, &model)?;
            if let Some(path) = emit {
                let mut text: String = set.words.iter().map(|w| format!("{w}\n")).collect();
                if text.is_empty() {
                    text.push('\n');
                }
                std::fs::write(path, text)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let unique = pipeline::check_trace_uniqueness(&s, &set)?;
            report(out, &[spine, cands, unique])
        }
        Command::Simplicity => report(out, &[pipeline::check_crossings(&s)?, pipeline::check_simplicity(&s)?]),
        Command::ReproducePaper { out: path, format } => {
            let r = pipeline::run_reproduce_paper(&s);
            let text = match format {
                Format::Json => r.to_json(),
                Format::Markdown => r.to_markdown(),
            };
            match path {
                Some(p) => {
                    std::fs::write(p, &text)
                        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
                    let _ = writeln!(out, "{}", r.verdict.statement);
                }
                None => out.push_str(&text),
            }
            if r.verdict.complete {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
