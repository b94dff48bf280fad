use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::abstraction::{abstract_state, Abstraction};
use super::fsm::Fsm;
use super::select::{select_event, Strategy, WeightParams};
use crate::appspec::AppSpec;
use crate::depend::DependencyRelation;
use crate::engine::{EngineError, EngineSession, Finding};

/// rng stream used for event selection; the engine owns stream 0.
pub(crate) const SELECT_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("max length must be at least 1")]
    ZeroLength,
    #[error("restarts must be at least 1")]
    ZeroRestarts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildConfig {
    /// Steps per exploration run.
    pub max_length: usize,
    /// Number of runs from the initial state.
    pub restarts: usize,
    pub strategy: Strategy,
    pub abstraction: Abstraction,
    pub weights: WeightParams,
    pub seed: u64,
}

impl BuildConfig {
    pub fn new(max_length: usize, restarts: usize) -> Result<Self, ConfigError> {
        let cfg = BuildConfig {
            max_length,
            restarts,
            strategy: Strategy::default(),
            abstraction: Abstraction::default(),
            weights: WeightParams::default(),
            seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_length == 0 {
            return Err(ConfigError::ZeroLength);
        }
        if self.restarts == 0 {
            return Err(ConfigError::ZeroRestarts);
        }
        Ok(())
    }

    pub fn strategy(mut self, s: Strategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn abstraction(mut self, a: Abstraction) -> Self {
        self.abstraction = a;
        self
    }

    pub fn weights(mut self, w: WeightParams) -> Self {
        self.weights = w;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub runs: usize,
    /// Events fired across all runs.
    pub steps: usize,
    /// Runs that stopped early because no event was available.
    pub dead_ends: usize,
    pub findings: Vec<Finding>,
}

#[derive(Debug, Clone)]
pub struct ModelBuild {
    pub fsm: Fsm,
    /// The exploring session; its coverage is the construction coverage.
    pub session: EngineSession,
    pub stats: BuildStats,
}

/// Explores the app `restarts` times from the initial page, each run
/// walking up to `max_length` events, and folds every step into one FSM.
pub fn build_model(
    spec: Arc<AppSpec>,
    rel: &DependencyRelation,
    cfg: &BuildConfig,
) -> Result<ModelBuild, ConfigError> {
    cfg.validate()?;
    let mut session = EngineSession::init(Arc::clone(&spec), cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(SELECT_STREAM);

    let s0 = abstract_state(session.state(), &spec, cfg.abstraction);
    let mut fsm = Fsm::for_spec(&spec, s0);
    let mut stats = BuildStats::default();

    for run in 0..cfg.restarts {
        if run > 0 {
            session.reset();
        }
        stats.runs += 1;
        let mut current = fsm.initial();
        let mut prev = None;
        let mut trace: Vec<String> = Vec::new();
        for _ in 0..cfg.max_length {
            let available = session.available_events();
            if available.is_empty() {
                stats.dead_ends += 1;
                break;
            }
            let e = select_event(
                cfg.strategy,
                &available,
                prev,
                rel,
                session.fired_counts(),
                &cfg.weights,
                &mut rng,
            );
            trace.push(spec.event_name(e).to_string());
            match session.fire(e) {
                Ok(_) => {}
                Err(EngineError::Runtime { event, fault }) => stats.findings.push(Finding {
                    sequence: trace.clone(),
                    event,
                    fault,
                }),
                Err(EngineError::EventNotEnabled { .. }) => unreachable!("selected from available"),
            }
            stats.steps += 1;
            let next = fsm.add_state(abstract_state(session.state(), &spec, cfg.abstraction));
            fsm.add_transition(current, e, next);
            current = next;
            prev = Some(e);
        }
    }

    Ok(ModelBuild {
        fsm,
        session,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::appspec::parse;
    use crate::corpus;
    use crate::depend::analyze;

    fn running() -> (Arc<AppSpec>, DependencyRelation) {
        let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
        let rel = analyze(&spec);
        (spec, rel)
    }

    fn labels(fsm: &Fsm) -> BTreeSet<String> {
        fsm.alphabet()
            .iter()
            .map(|e| fsm.event_name(*e).to_string())
            .collect()
    }

    #[test]
    fn coarse_collapses_running_example() {
        let (spec, rel) = running();
        for seed in 0..5 {
            let cfg = BuildConfig::new(20, 2).unwrap().seed(seed);
            let built = build_model(spec.clone(), &rel, &cfg).unwrap();
            assert_eq!(built.fsm.state_count(), 1);
            assert!(built.fsm.transition_count() <= 4);
            assert!(built
                .fsm
                .transitions()
                .all(|t| t.from == t.to && t.from == built.fsm.initial()));
            assert!(
                labels(&built.fsm).is_subset(&["A", "B", "C", "Submit"].map(String::from).into())
            );
        }
    }

    #[test]
    fn fine_splits_running_example() {
        let (spec, rel) = running();
        let cfg = BuildConfig::new(20, 2)
            .unwrap()
            .abstraction(Abstraction::Fine);
        let built = build_model(spec, &rel, &cfg).unwrap();
        assert!(built.fsm.state_count() > 1);
    }

    #[test]
    fn config_bounds() {
        assert_eq!(BuildConfig::new(0, 1), Err(ConfigError::ZeroLength));
        assert_eq!(BuildConfig::new(1, 0), Err(ConfigError::ZeroRestarts));
        let (spec, rel) = running();
        let built = build_model(spec, &rel, &BuildConfig::new(1, 1).unwrap()).unwrap();
        assert_eq!(built.fsm.transition_count(), 1);
        assert_eq!(built.stats.steps, 1);
    }

    #[test]
    fn replay_is_deterministic() {
        let (spec, rel) = running();
        let cfg = BuildConfig::new(30, 3)
            .unwrap()
            .abstraction(Abstraction::Fine)
            .strategy(Strategy::Weighted)
            .seed(11);
        let a = build_model(spec.clone(), &rel, &cfg).unwrap();
        let b = build_model(spec, &rel, &cfg).unwrap();
        assert_eq!(a.fsm, b.fsm);
        assert_eq!(a.session.covered(), b.session.covered());
        assert_eq!(a.stats, b.stats);
    }

    #[test]
    fn counts_and_coverage_span_restarts() {
        let (spec, rel) = running();
        let cfg = BuildConfig::new(5, 3).unwrap();
        let built = build_model(spec, &rel, &cfg).unwrap();
        assert_eq!(built.session.fired_counts().iter().sum::<u64>(), 15);
        assert_eq!(built.stats.runs, 3);
    }

    #[test]
    fn dead_end_stops_run() {
        let spec = Arc::new(parse("app t\nevent once { disable(once); }").unwrap());
        let rel = analyze(&spec);
        let built = build_model(spec, &rel, &BuildConfig::new(10, 2).unwrap()).unwrap();
        assert_eq!(built.stats.dead_ends, 2);
        assert_eq!(built.stats.steps, 2);
        assert_eq!(built.fsm.transition_count(), 1);
    }

    #[test]
    fn faults_become_findings() {
        let spec = Arc::new(parse(corpus::DICE).unwrap());
        let rel = analyze(&spec);
        let found = (0..10).any(|seed| {
            let cfg = BuildConfig::new(10, 2).unwrap().seed(seed);
            let built = build_model(spec.clone(), &rel, &cfg).unwrap();
            built
                .stats
                .findings
                .iter()
                .any(|f| f.event == "Average" && !f.sequence.iter().any(|e| e == "Roll"))
        });
        assert!(found);
    }
}
