//! In-process execution engine: loads an app, fires events atomically and
//! records statement coverage.

mod interp;
mod state;

pub use state::{ConcreteState, CoveredSet};

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::appspec::{AppSpec, EventId, StmtId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RuntimeFault {
    #[error("integer overflow at {at}")]
    Overflow { at: StmtId },
    #[error("division by zero at {at}")]
    DivisionByZero { at: StmtId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("event `{event}` is not enabled")]
    EventNotEnabled { event: String },
    #[error("handler of `{event}` aborted: {fault}")]
    Runtime { event: String, fault: RuntimeFault },
}

/// A runtime fault together with the events that led to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    /// Events fired since the last reset, ending with the faulting one.
    pub sequence: Vec<String>,
    pub event: String,
    pub fault: RuntimeFault,
}

/// A running instance of an app.
///
/// Coverage and per-event fire counts accumulate for the lifetime of the
/// session, including across [`EngineSession::reset`].
#[derive(Debug, Clone)]
pub struct EngineSession {
    spec: Arc<AppSpec>,
    initial: ConcreteState,
    state: ConcreteState,
    rng: ChaCha8Rng,
    covered: CoveredSet,
    fired: Vec<u64>,
    logs: Option<Vec<String>>,
}

impl EngineSession {
    pub fn init(spec: Arc<AppSpec>, seed: u64) -> Self {
        let initial = ConcreteState::initial(&spec);
        EngineSession {
            state: initial.clone(),
            initial,
            rng: ChaCha8Rng::seed_from_u64(seed),
            covered: CoveredSet::empty(&spec),
            fired: vec![0; spec.events.len()],
            logs: None,
            spec,
        }
    }

    /// Keep the messages of executed `log` statements.
    pub fn capture_logs(mut self) -> Self {
        self.logs = Some(Vec::new());
        self
    }

    pub fn logs(&self) -> &[String] {
        self.logs.as_deref().unwrap_or(&[])
    }

    pub fn spec(&self) -> &Arc<AppSpec> {
        &self.spec
    }

    pub fn state(&self) -> &ConcreteState {
        &self.state
    }

    pub fn covered(&self) -> &CoveredSet {
        &self.covered
    }

    /// Times each event has been fired, indexed by [`EventId`].
    pub fn fired_counts(&self) -> &[u64] {
        &self.fired
    }

    pub fn available_events(&self) -> Vec<EventId> {
        self.state.enabled_events()
    }

    /// Available event names in lexicographic order.
    pub fn available_names(&self) -> BTreeSet<String> {
        self.available_events()
            .into_iter()
            .map(|e| self.spec.event_name(e).to_string())
            .collect()
    }

    pub fn is_enabled(&self, event: EventId) -> bool {
        self.state.is_enabled(event)
    }

    /// Runs the handler of `event` to completion.
    ///
    /// On a runtime fault the valuation and enabled set roll back to their
    /// pre-fire values; statements executed before the fault stay covered
    /// and the fire still counts.
    pub fn fire(&mut self, event: EventId) -> Result<&ConcreteState, EngineError> {
        if !self.state.is_enabled(event) {
            return Err(EngineError::EventNotEnabled {
                event: self.spec.event_name(event).to_string(),
            });
        }
        self.fired[event.index()] += 1;
        let snapshot = self.state.clone();
        let spec = Arc::clone(&self.spec);
        let outcome = interp::Interp {
            state: &mut self.state,
            covered: &mut self.covered,
            rng: &mut self.rng,
            logs: self.logs.as_mut(),
        }
        .run(&spec.event(event).body);
        match outcome {
            Ok(()) => Ok(&self.state),
            Err(fault) => {
                self.state = snapshot;
                Err(EngineError::Runtime {
                    event: spec.event_name(event).to_string(),
                    fault,
                })
            }
        }
    }

    pub fn fire_named(&mut self, name: &str) -> Result<&ConcreteState, EngineError> {
        match self.spec.event_id(name) {
            Some(id) => self.fire(id),
            None => Err(EngineError::EventNotEnabled {
                event: name.to_string(),
            }),
        }
    }

    /// Back to the initial page. Coverage, fire counts and the rng stream
    /// carry over.
    pub fn reset(&mut self) {
        self.state = self.initial.clone();
    }

    pub fn coverage(&self) -> CoverageReport {
        CoverageReport::new(&self.spec, &self.covered)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventCoverage {
    pub event: String,
    pub covered: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub covered: BTreeSet<StmtId>,
    pub total: usize,
    pub ratio: f64,
    /// Declaration order.
    pub per_event: Vec<EventCoverage>,
}

impl CoverageReport {
    pub fn new(spec: &AppSpec, covered: &CoveredSet) -> Self {
        let mut per_event: Vec<EventCoverage> = spec
            .events
            .iter()
            .map(|e| EventCoverage {
                event: e.name.clone(),
                covered: 0,
                total: 0,
            })
            .collect();
        for (i, info) in spec.statements().iter().enumerate() {
            let slot = &mut per_event[info.event.index()];
            slot.total += 1;
            if covered.contains(i) {
                slot.covered += 1;
            }
        }
        let total = spec.statement_count();
        CoverageReport {
            covered: covered.ids(spec),
            total,
            ratio: if total == 0 {
                0.0
            } else {
                covered.len() as f64 / total as f64
            },
            per_event,
        }
    }

    pub fn covered_count(&self) -> usize {
        self.covered.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appspec::{parse, Value};
    use crate::corpus;

    fn running() -> EngineSession {
        EngineSession::init(Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap()), 0)
    }

    fn names(list: &[&str]) -> BTreeSet<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn fire_all(s: &mut EngineSession, seq: &[&str]) {
        for e in seq {
            s.fire_named(e).unwrap();
        }
    }

    #[test]
    fn init_state() {
        let s = running();
        let spec = s.spec().clone();
        assert_eq!(s.available_names(), names(&["A", "B", "C"]));
        assert_eq!(s.state().get(&spec, "count"), Some(Value::Int(0)));
        for v in ["checkedA", "checkedB", "checkedC"] {
            assert_eq!(s.state().get(&spec, v), Some(Value::Bool(false)));
        }
        assert!(s.covered().is_empty());
        assert!(s.fired_counts().iter().all(|n| *n == 0));
        assert_eq!(s.coverage().ratio, 0.0);
    }

    #[test]
    fn same_seed_same_session() {
        let spec = Arc::new(parse(corpus::DICE).unwrap());
        let mut a = EngineSession::init(spec.clone(), 42);
        let mut b = EngineSession::init(spec, 42);
        for _ in 0..20 {
            a.fire_named("Roll").unwrap();
            b.fire_named("Roll").unwrap();
            assert_eq!(a.state(), b.state());
        }
        assert_eq!(a.covered(), b.covered());
    }

    #[test]
    fn empty_app() {
        let s = EngineSession::init(Arc::new(parse("app empty").unwrap()), 0);
        assert!(s.available_events().is_empty());
        assert_eq!(s.coverage().total, 0);
    }

    #[test]
    fn submit_registration() {
        let mut s = running();
        fire_all(&mut s, &["A", "B", "C"]);
        assert_eq!(s.available_names(), names(&["A", "B", "C", "Submit"]));
        fire_all(&mut s, &["A"]);
        assert_eq!(s.available_names(), names(&["A", "B", "C"]));
    }

    #[test]
    fn fire_single_a() {
        let mut s = running();
        let spec = s.spec().clone();
        let st = s.fire_named("A").unwrap().clone();
        assert_eq!(st.get(&spec, "count"), Some(Value::Int(1)));
        assert_eq!(st.get(&spec, "checkedA"), Some(Value::Bool(true)));
        assert!(!s.available_names().contains("Submit"));
        // toggle, if, then-assign, enable, if, disable
        assert_eq!(s.coverage().covered_count(), 6);
        assert_eq!(s.fired_counts()[spec.event_id("A").unwrap().index()], 1);
    }

    #[test]
    fn toggle_round_trip() {
        let mut s = running();
        let spec = s.spec().clone();
        fire_all(&mut s, &["A", "A"]);
        assert_eq!(s.state().get(&spec, "count"), Some(Value::Int(0)));
        assert_eq!(s.state().get(&spec, "checkedA"), Some(Value::Bool(false)));
        assert_eq!(s.state(), &ConcreteState::initial(&spec));
    }

    #[test]
    fn disabled_event_rejected() {
        let mut s = running();
        let err = s.fire_named("Submit").unwrap_err();
        assert_eq!(
            err,
            EngineError::EventNotEnabled {
                event: "Submit".into()
            }
        );
        assert!(s.covered().is_empty());
    }

    #[test]
    fn length_seven_witness_covers_everything() {
        let mut s = running();
        fire_all(&mut s, &["A", "B", "C", "Submit", "A", "B", "C"]);
        let rep = s.coverage();
        assert_eq!((rep.covered_count(), rep.total), (22, 22));
        assert_eq!(rep.ratio, 1.0);
        assert!(rep.per_event.iter().all(|e| e.covered == e.total));
    }

    #[test]
    fn reset_keeps_coverage_and_counts() {
        let mut s = running();
        fire_all(&mut s, &["A", "B", "C", "Submit"]);
        let cov = s.coverage();
        let counts = s.fired_counts().to_vec();
        s.reset();
        assert_eq!(s.available_names(), names(&["A", "B", "C"]));
        assert_eq!(s.coverage(), cov);
        assert_eq!(s.fired_counts(), &counts[..]);
    }

    #[test]
    fn runtime_fault_rolls_back() {
        let src = "app t\nvar x: int = 9223372036854775807;\nvar y: int = 0;\n\
                   event e { y = 5; disable(e); x = x + 1; }";
        let spec = Arc::new(parse(src).unwrap());
        let mut s = EngineSession::init(spec.clone(), 0);
        let before = s.state().clone();
        let err = s.fire_named("e").unwrap_err();
        assert!(matches!(
            err,
            EngineError::Runtime {
                fault: RuntimeFault::Overflow { .. },
                ..
            }
        ));
        assert_eq!(s.state(), &before);
        assert_eq!(s.covered().len(), 3);
        assert_eq!(s.fired_counts()[0], 1);
    }

    #[test]
    fn division_by_zero() {
        let spec = Arc::new(parse(corpus::DICE).unwrap());
        let mut s = EngineSession::init(spec, 0);
        let err = s.fire_named("Average").unwrap_err();
        assert!(matches!(
            err,
            EngineError::Runtime {
                fault: RuntimeFault::DivisionByZero { .. },
                ..
            }
        ));
        s.fire_named("Roll").unwrap();
        s.fire_named("Average").unwrap();
    }

    #[test]
    fn logs_are_captured_on_request() {
        let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
        let mut s = EngineSession::init(spec, 0).capture_logs();
        fire_all(&mut s, &["A", "B", "C", "Submit"]);
        assert_eq!(s.logs(), ["Submit successfully"]);
    }

    #[test]
    fn short_circuit_skips_rand() {
        let src = "app t\nvar b: bool = false;\nevent e { b = false && rand_bool(); }\nevent r { b = rand_bool(); }";
        let spec = Arc::new(parse(src).unwrap());
        let mut a = EngineSession::init(spec.clone(), 7);
        let mut b = EngineSession::init(spec, 7);
        a.fire_named("e").unwrap();
        a.fire_named("r").unwrap();
        b.fire_named("r").unwrap();
        assert_eq!(a.state(), b.state());
    }
}
