//! End-to-end campaigns: build a model, derive sequences, replay them and
//! aggregate coverage into one report.

mod dot;
mod report;

pub use dot::export_dot;
pub use report::{
    CampaignReport, ConfigEcho, CoverageSection, CoverageSummary, EventRow, FindingRow,
    ModelSection, SequenceRow, SequenceSection, StatementRow, Timings,
};

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::appspec::{AppSpec, EventId};
use crate::depend::analyze;
use crate::engine::{CoveredSet, EngineError, EngineSession, Finding};
use crate::genseq::{gen_long, gen_por, EventSeq, GenError};
use crate::model::{build_model, BuildConfig, ConfigError};

/// rng stream for random-walk generation.
const GEN_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Generator {
    #[default]
    Long,
    Por,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Long => "long",
            Generator::Por => "por",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub build: BuildConfig,
    pub generator: Generator,
    pub por_depth: usize,
    /// Number of random walks for the long generator.
    pub sequences: usize,
    pub time_budget: Option<Duration>,
    /// Worker threads for sequence replay.
    pub jobs: usize,
    /// Adds wall-clock timings to the report, which makes it run-dependent.
    pub include_timings: bool,
}

impl CampaignConfig {
    pub fn new(build: BuildConfig) -> Self {
        CampaignConfig {
            build,
            generator: Generator::Long,
            por_depth: 4,
            sequences: 10,
            time_budget: None,
            jobs: 1,
            include_timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error("jobs must be at least 1")]
    ZeroJobs,
}

/// Outcome of replaying one sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceStats {
    pub fired: usize,
    /// Events that were not enabled at their turn.
    pub skipped: usize,
    /// Statements this sequence covered that the session had not.
    pub delta: CoveredSet,
    pub findings: Vec<Finding>,
}

/// Fires `seq` in order, skipping events that are not enabled. Runtime
/// faults are recorded and the sequence continues from the rolled-back
/// state.
pub fn execute_sequence(session: &mut EngineSession, seq: &[EventId]) -> SequenceStats {
    let before = session.covered().clone();
    let mut fired = 0;
    let mut skipped = 0;
    let mut trace = Vec::new();
    let mut findings = Vec::new();
    for &e in seq {
        if !session.is_enabled(e) {
            skipped += 1;
            continue;
        }
        trace.push(session.spec().event_name(e).to_string());
        fired += 1;
        match session.fire(e) {
            Ok(_) => {}
            Err(EngineError::Runtime { event, fault }) => findings.push(Finding {
                sequence: trace.clone(),
                event,
                fault,
            }),
            Err(EngineError::EventNotEnabled { .. }) => unreachable!("checked above"),
        }
    }
    let mut delta = CoveredSet::empty(session.spec());
    for i in session.covered().ordinals() {
        if !before.contains(i) {
            delta.insert(i);
        }
    }
    SequenceStats {
        fired,
        skipped,
        delta,
        findings,
    }
}

/// Seed of the replay session for sequence `index`.
pub fn sequence_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs the whole pipeline. The report is identical for identical inputs
/// unless timings are requested.
pub fn run_campaign(
    spec: Arc<AppSpec>,
    cfg: &CampaignConfig,
) -> Result<CampaignReport, CampaignError> {
    cfg.build.validate()?;
    if cfg.jobs == 0 {
        return Err(CampaignError::ZeroJobs);
    }
    let start = Instant::now();
    let deadline = cfg.time_budget.map(|b| start + b);
    let expired = || deadline.is_some_and(|d| Instant::now() >= d);

    let rel = analyze(&spec);
    let built = build_model(Arc::clone(&spec), &rel, &cfg.build)?;
    let build_time = start.elapsed();

    let gen_start = Instant::now();
    let (seqs, drawn) = match cfg.generator {
        Generator::Long => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.build.seed);
            rng.set_stream(GEN_STREAM);
            let walks = gen_long(&built.fsm, cfg.build.max_length, cfg.sequences, &mut rng)?;
            (walks.sequences, walks.walks)
        }
        Generator::Por => {
            let seqs = gen_por(&built.fsm, cfg.por_depth, &rel)?;
            let n = seqs.len();
            (seqs, n)
        }
    };
    let gen_time = gen_start.elapsed();

    let exec_start = Instant::now();
    let stopped = AtomicBool::new(expired());
    let replay = |(i, seq): (usize, &EventSeq)| -> Option<(usize, SequenceStats)> {
        if stopped.load(Ordering::Relaxed) || expired() {
            stopped.store(true, Ordering::Relaxed);
            return None;
        }
        let mut session = EngineSession::init(Arc::clone(&spec), sequence_seed(cfg.build.seed, i));
        Some((i, execute_sequence(&mut session, &seq.events)))
    };
    let mut results: Vec<(usize, SequenceStats)> = if cfg.jobs == 1 {
        seqs.iter().enumerate().map_while(replay).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| seqs.par_iter().enumerate().filter_map(replay).collect())
    };
    results.sort_by_key(|(i, _)| *i);
    let exec_time = exec_start.elapsed();
    let partial = results.len() < seqs.len();

    let mut execution = CoveredSet::empty(&spec);
    for (_, stats) in &results {
        execution.union_with(&stats.delta);
    }

    let timings = cfg.include_timings.then(|| Timings {
        build_ms: build_time.as_secs_f64() * 1e3,
        generate_ms: gen_time.as_secs_f64() * 1e3,
        execute_ms: exec_time.as_secs_f64() * 1e3,
        total_ms: start.elapsed().as_secs_f64() * 1e3,
    });

    Ok(report::assemble(report::Parts {
        spec: &spec,
        cfg,
        built: &built,
        seqs: &seqs,
        drawn,
        results: &results,
        execution: &execution,
        partial,
        timings,
    }))
}
