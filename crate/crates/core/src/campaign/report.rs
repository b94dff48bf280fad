use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::{CampaignConfig, SequenceStats};
use crate::appspec::AppSpec;
use crate::engine::{CoveredSet, Finding};
use crate::genseq::EventSeq;
use crate::model::{format_weight, ModelBuild};

/// A float written with exactly four decimals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed4(pub f64);

impl Serialize for Fixed4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&format!("{:.4}", self.0))
            .expect("formatted float is a JSON number")
            .serialize(s)
    }
}

fn ratio(covered: usize, total: usize) -> Fixed4 {
    Fixed4(if total == 0 {
        0.0
    } else {
        covered as f64 / total as f64
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub max_length: usize,
    pub restarts: usize,
    pub strategy: String,
    pub abstraction: String,
    pub alpha: String,
    pub beta: String,
    pub generator: String,
    pub por_depth: usize,
    pub sequences: usize,
    pub time_budget_secs: Option<Fixed4>,
    pub jobs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSection {
    pub states: usize,
    pub transitions: usize,
    pub labels: Vec<String>,
    pub runs: usize,
    pub steps: usize,
    pub dead_ends: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceSection {
    /// Distinct sequences generated.
    pub count: usize,
    pub executed: usize,
    /// Draws that repeated an earlier sequence.
    pub duplicates: usize,
    pub min_length: usize,
    pub max_length: usize,
    pub mean_length: Fixed4,
    pub fired: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageSummary {
    pub covered: usize,
    pub total: usize,
    pub ratio: Fixed4,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventRow {
    pub event: String,
    pub covered: usize,
    pub total: usize,
    pub ratio: Fixed4,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatementRow {
    pub id: String,
    pub event: String,
    pub construction: bool,
    pub execution: bool,
    pub aggregated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageSection {
    pub construction: CoverageSummary,
    pub execution: CoverageSummary,
    pub aggregated: CoverageSummary,
    pub per_event: Vec<EventRow>,
    pub statements: Vec<StatementRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceRow {
    pub index: usize,
    pub events: String,
    pub fired: usize,
    pub skipped: usize,
    pub new_statements: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FindingRow {
    pub phase: &'static str,
    pub sequence: String,
    pub event: String,
    pub fault: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    #[serde(serialize_with = "ms")]
    pub build_ms: f64,
    #[serde(serialize_with = "ms")]
    pub generate_ms: f64,
    #[serde(serialize_with = "ms")]
    pub execute_ms: f64,
    #[serde(serialize_with = "ms")]
    pub total_ms: f64,
}

fn ms<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    Fixed4(*v).serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub app: String,
    pub config: ConfigEcho,
    pub model: ModelSection,
    pub sequences: SequenceSection,
    pub coverage: CoverageSection,
    pub per_sequence: Vec<SequenceRow>,
    pub findings: Vec<FindingRow>,
    /// Set when the time budget expired before every sequence ran.
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl CampaignReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

pub(super) struct Parts<'a> {
    pub spec: &'a AppSpec,
    pub cfg: &'a CampaignConfig,
    pub built: &'a ModelBuild,
    pub seqs: &'a [EventSeq],
    pub drawn: usize,
    pub results: &'a [(usize, SequenceStats)],
    pub execution: &'a CoveredSet,
    pub partial: bool,
    pub timings: Option<Timings>,
}

fn finding_row(phase: &'static str, f: &Finding) -> FindingRow {
    FindingRow {
        phase,
        sequence: f.sequence.join(";"),
        event: f.event.clone(),
        fault: f.fault.to_string(),
    }
}

fn summary(set: &CoveredSet) -> CoverageSummary {
    CoverageSummary {
        covered: set.len(),
        total: set.total(),
        ratio: ratio(set.len(), set.total()),
    }
}

pub(super) fn assemble(p: Parts<'_>) -> CampaignReport {
    let Parts {
        spec,
        cfg,
        built,
        seqs,
        drawn,
        results,
        execution,
        partial,
        timings,
    } = p;
    let names = spec.event_names();
    let construction = built.session.covered();
    let mut aggregated = construction.clone();
    aggregated.union_with(execution);

    let mut per_event: Vec<EventRow> = spec
        .events
        .iter()
        .map(|e| EventRow {
            event: e.name.clone(),
            covered: 0,
            total: 0,
            ratio: Fixed4(0.0),
        })
        .collect();
    let statements = spec
        .statements()
        .iter()
        .enumerate()
        .map(|(i, info)| {
            let row = &mut per_event[info.event.index()];
            row.total += 1;
            if aggregated.contains(i) {
                row.covered += 1;
            }
            StatementRow {
                id: info.id.to_string(),
                event: names[info.event.index()].clone(),
                construction: construction.contains(i),
                execution: execution.contains(i),
                aggregated: aggregated.contains(i),
            }
        })
        .collect();
    for row in &mut per_event {
        row.ratio = ratio(row.covered, row.total);
    }

    let lengths: Vec<usize> = seqs.iter().map(EventSeq::len).collect();
    let mut findings: Vec<FindingRow> = built
        .stats
        .findings
        .iter()
        .map(|f| finding_row("construction", f))
        .collect();
    for (_, stats) in results {
        findings.extend(stats.findings.iter().map(|f| finding_row("execution", f)));
    }

    CampaignReport {
        app: spec.name.clone(),
        config: ConfigEcho {
            max_length: cfg.build.max_length,
            restarts: cfg.build.restarts,
            strategy: cfg.build.strategy.to_string(),
            abstraction: cfg.build.abstraction.to_string(),
            alpha: format_weight(&cfg.build.weights.alpha),
            beta: format_weight(&cfg.build.weights.beta),
            generator: cfg.generator.to_string(),
            por_depth: cfg.por_depth,
            sequences: cfg.sequences,
            time_budget_secs: cfg.time_budget.map(|d| Fixed4(d.as_secs_f64())),
            jobs: cfg.jobs,
            seed: cfg.build.seed,
        },
        model: ModelSection {
            states: built.fsm.state_count(),
            transitions: built.fsm.transition_count(),
            labels: built
                .fsm
                .alphabet()
                .iter()
                .map(|e| names[e.index()].clone())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect(),
            runs: built.stats.runs,
            steps: built.stats.steps,
            dead_ends: built.stats.dead_ends,
        },
        sequences: SequenceSection {
            count: seqs.len(),
            executed: results.len(),
            duplicates: drawn - seqs.len(),
            min_length: lengths.iter().copied().min().unwrap_or(0),
            max_length: lengths.iter().copied().max().unwrap_or(0),
            mean_length: ratio(lengths.iter().sum(), lengths.len()),
            fired: results.iter().map(|(_, s)| s.fired).sum(),
            skipped: results.iter().map(|(_, s)| s.skipped).sum(),
        },
        coverage: CoverageSection {
            construction: summary(construction),
            execution: summary(execution),
            aggregated: summary(&aggregated),
            per_event,
            statements,
        },
        per_sequence: results
            .iter()
            .map(|(i, s)| SequenceRow {
                index: *i,
                events: seqs[*i].render(&names),
                fired: s.fired,
                skipped: s.skipped,
                new_statements: s.delta.len(),
            })
            .collect(),
        findings,
        partial,
        timings,
    }
}
