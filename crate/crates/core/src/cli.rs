//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::appspec::{parse, AppSpec};
use crate::campaign::{
    execute_sequence, export_dot, run_campaign, sequence_seed, CampaignConfig, Generator,
};
use crate::depend::analyze;
use crate::engine::{CoveredSet, EngineSession};
use crate::genseq::{count_all, parse_seq_file};
use crate::model::{
    build_model, parse_weight, Abstraction, BuildConfig, Strategy, Weight, WeightParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eventseq",
    version,
    about = "Model-based test generation for event-driven apps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a model, generate sequences, replay them and write a report.
    Run(RunArgs),
    /// Build the model and print it as a DOT graph.
    Model(ModelArgs),
    /// Print the event dependency relation.
    Deps { app: PathBuf },
    /// Count every concrete event sequence up to a length.
    Enum {
        app: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Replay sequences from a file and print the coverage reached.
    Exec {
        app: PathBuf,
        #[arg(long)]
        seq_file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Random,
    Weighted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AbstractionArg {
    Coarse,
    Fine,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenArg {
    Long,
    Por,
}

fn weight_arg(s: &str) -> Result<Weight, String> {
    parse_weight(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
struct BuildArgs {
    app: PathBuf,
    #[arg(long, default_value_t = 20)]
    max_length: usize,
    #[arg(long, default_value_t = 2)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "weighted")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "coarse")]
    abstraction: AbstractionArg,
    #[arg(long, value_parser = weight_arg, default_value = "0.7")]
    alpha: Weight,
    #[arg(long, value_parser = weight_arg, default_value = "0.3")]
    beta: Weight,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BuildArgs {
    fn config(&self) -> Result<BuildConfig, String> {
        let cfg = BuildConfig::new(self.max_length, self.restarts).map_err(|e| e.to_string())?;
        Ok(cfg
            .strategy(match self.strategy {
                StrategyArg::Random => Strategy::Random,
                StrategyArg::Weighted => Strategy::Weighted,
            })
            .abstraction(match self.abstraction {
                AbstractionArg::Coarse => Abstraction::Coarse,
                AbstractionArg::Fine => Abstraction::Fine,
            })
            .weights(WeightParams {
                alpha: self.alpha,
                beta: self.beta,
            })
            .seed(self.seed))
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    build: BuildArgs,
    #[arg(long = "gen", value_enum, default_value = "long")]
    generator: GenArg,
    #[arg(long, default_value_t = 4)]
    por_depth: usize,
    #[arg(long, default_value_t = 10)]
    sequences: usize,
    /// Seconds; replay stops between sequences once exceeded.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[command(flatten)]
    build: BuildArgs,
    /// Write the DOT graph here instead of stdout.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn load(path: &Path) -> Result<Arc<AppSpec>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text)
        .map(Arc::new)
        .map_err(|e| format!("{}:{e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Runs the tool on `args` (program name first). Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Run(args) => {
            let spec = load(&args.build.app)?;
            let mut cfg = CampaignConfig::new(args.build.config()?);
            cfg.generator = match args.generator {
                GenArg::Long => Generator::Long,
                GenArg::Por => Generator::Por,
            };
            cfg.por_depth = args.por_depth;
            cfg.sequences = args.sequences;
            cfg.jobs = args.jobs;
            cfg.include_timings = args.timings;
            cfg.time_budget = match args.time_budget {
                Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
                Some(s) => return Err(format!("invalid time budget {s}")),
                None => None,
            };
            let report = run_campaign(Arc::clone(&spec), &cfg).map_err(|e| e.to_string())?;
            let json = report.to_json();
            match &args.report {
                Some(path) => {
                    write_file(path, &json)?;
                    let agg = &report.coverage.aggregated;
                    writeln!(
                        out,
                        "{}: {}/{} statements covered ({:.4}), {} sequences executed",
                        report.app, agg.covered, agg.total, agg.ratio.0, report.sequences.executed
                    )
                    .map_err(io)?;
                }
                None => out.write_all(json.as_bytes()).map_err(io)?,
            }
            if let Some(path) = &args.dot {
                let rel = analyze(&spec);
                let built = build_model(spec, &rel, &cfg.build).map_err(|e| e.to_string())?;
                write_file(path, &export_dot(&built.fsm))?;
            }
            if report.partial {
                writeln!(err, "time budget expired: partial result").map_err(io)?;
                return Ok(EXIT_PARTIAL);
            }
            Ok(EXIT_OK)
        }
        Command::Model(args) => {
            let spec = load(&args.build.app)?;
            let rel = analyze(&spec);
            let built =
                build_model(spec, &rel, &args.build.config()?).map_err(|e| e.to_string())?;
            let fsm = &built.fsm;
            let mut labels: Vec<&str> = fsm.alphabet().iter().map(|e| fsm.event_name(*e)).collect();
            labels.sort_unstable();
            writeln!(err, "states: {}", fsm.state_count()).map_err(io)?;
            writeln!(err, "transitions: {}", fsm.transition_count()).map_err(io)?;
            writeln!(err, "labels: {}", labels.join(",")).map_err(io)?;
            let dot = export_dot(fsm);
            match &args.dot {
                Some(path) => write_file(path, &dot)?,
                None => out.write_all(dot.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Deps { app } => {
            let spec = load(&app)?;
            out.write_all(analyze(&spec).render().as_bytes())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Enum { app, depth } => {
            let spec = load(&app)?;
            writeln!(out, "{}", count_all(spec, depth)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Exec {
            app,
            seq_file,
            seed,
        } => {
            let spec = load(&app)?;
            let text = fs::read_to_string(&seq_file)
                .map_err(|e| format!("{}: {e}", seq_file.display()))?;
            let seqs =
                parse_seq_file(&spec, &text).map_err(|e| format!("{}: {e}", seq_file.display()))?;
            let names = spec.event_names();
            let mut union = CoveredSet::empty(&spec);
            for (i, seq) in seqs.iter().enumerate() {
                let mut session = EngineSession::init(Arc::clone(&spec), sequence_seed(seed, i));
                let stats = execute_sequence(&mut session, &seq.events);
                union.union_with(&stats.delta);
                writeln!(
                    out,
                    "{}: fired {}, skipped {}, covered {}",
                    seq.render(&names),
                    stats.fired,
                    stats.skipped,
                    stats.delta.len()
                )
                .map_err(io)?;
                for f in &stats.findings {
                    writeln!(out, "  finding: {} after {}", f.fault, f.sequence.join(";"))
                        .map_err(io)?;
                }
            }
            writeln!(out, "coverage: {}/{}", union.len(), union.total()).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("eventseq").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn corpus_file(name: &str) -> String {
        format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["deps", "/nonexistent.eda"]).0, EXIT_USAGE);
        let app = corpus_file("running_example.eda");
        assert_eq!(call(&["run", &app, "--max-length", "0"]).0, EXIT_USAGE);
        assert_eq!(call(&["run", &app, "--alpha", "x"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn bad_app_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.eda");
        fs::write(&path, "app t\nevent a { x = 1; }").unwrap();
        let (code, _, err) = call(&["deps", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("2:11"), "{err}");
    }

    #[test]
    fn enum_and_deps() {
        let app = corpus_file("running_example.eda");
        assert_eq!(call(&["enum", &app, "--depth", "4"]).1, "126\n");
        let deps = call(&["deps", &app]).1;
        assert!(deps.lines().any(|l| l == "A -> Submit"));
    }

    #[test]
    fn budget_zero_exits_two() {
        let app = corpus_file("running_example.eda");
        let dir = tempfile::tempdir().unwrap();
        let report = dir.path().join("r.json");
        let (code, _, _) = call(&[
            "run",
            &app,
            "--time-budget",
            "0",
            "--report",
            report.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_PARTIAL);
        assert!(fs::read_to_string(report)
            .unwrap()
            .contains("\"partial\": true"));
    }
}
