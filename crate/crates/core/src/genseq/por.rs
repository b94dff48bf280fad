//! Depth-first enumeration of model paths, with optional sleep-set
//! partial-order reduction.

use super::{EventSeq, GenError, Origin};
use crate::appspec::EventId;
use crate::depend::DependencyRelation;
use crate::model::{Fsm, StateId};

/// Per-state outgoing edges grouped by event, events in name order.
type Adjacency = Vec<Vec<(EventId, Vec<StateId>)>>;

fn adjacency(fsm: &Fsm) -> Adjacency {
    (0..fsm.state_count() as u32)
        .map(|s| {
            let mut groups: Vec<(EventId, Vec<StateId>)> = Vec::new();
            for (e, to) in fsm.supp(StateId(s)) {
                match groups.last_mut() {
                    Some((last, succ)) if *last == e => succ.push(to),
                    _ => groups.push((e, vec![to])),
                }
            }
            groups
        })
        .collect()
}

/// Small dense set of events.
#[derive(Clone)]
struct EventSet(Vec<bool>);

impl EventSet {
    fn empty(n: usize) -> Self {
        EventSet(vec![false; n])
    }

    fn contains(&self, e: EventId) -> bool {
        self.0[e.index()]
    }

    fn insert(&mut self, e: EventId) {
        self.0[e.index()] = true;
    }
}

struct Explorer<'a, F> {
    adj: Adjacency,
    max_len: usize,
    rel: Option<&'a DependencyRelation>,
    n_events: usize,
    path: Vec<EventId>,
    emitted: usize,
    visit: F,
}

impl<F: FnMut(&[EventId])> Explorer<'_, F> {
    /// One stack frame: `state` is on top, `sleep` was inherited from the
    /// parent.
    fn explore(&mut self, state: StateId, mut sleep: EventSet) {
        let mut selected = false;
        let mut blocked = false;
        if self.path.len() < self.max_len {
            let mut done = EventSet::empty(self.n_events);
            // Cloned so the recursion below can borrow `self` mutably.
            let groups = self.adj[state.index()].clone();
            for (e, succs) in groups {
                if done.contains(e) || sleep.contains(e) {
                    blocked = true;
                    continue;
                }
                done.insert(e);
                selected = true;
                for next in succs {
                    let child_sleep = match self.rel {
                        Some(rel) => {
                            let mut s = EventSet::empty(self.n_events);
                            for (i, on) in sleep.0.iter().enumerate() {
                                let other = EventId(i as u32);
                                if *on && rel.independent(e, other) {
                                    s.insert(other);
                                }
                            }
                            s
                        }
                        None => EventSet::empty(self.n_events),
                    };
                    self.path.push(e);
                    self.explore(next, child_sleep);
                    self.path.pop();
                    if self.rel.is_some() {
                        sleep.insert(e);
                    }
                }
            }
        }
        // A frame whose every event sits in its sleep set is a prefix of an
        // already explored equivalent sequence; it is not emitted.
        if !selected && !blocked {
            self.emitted += 1;
            (self.visit)(&self.path);
        }
    }
}

fn run<F: FnMut(&[EventId])>(
    fsm: &Fsm,
    max_len: usize,
    rel: Option<&DependencyRelation>,
    visit: F,
) -> Result<usize, GenError> {
    if max_len == 0 {
        return Err(GenError::ZeroLength);
    }
    if fsm.supp(fsm.initial()).is_empty() {
        return Err(GenError::EmptyModel);
    }
    let n_events = fsm.event_names().len();
    let mut ex = Explorer {
        adj: adjacency(fsm),
        max_len,
        rel,
        n_events,
        path: Vec::with_capacity(max_len),
        emitted: 0,
        visit,
    };
    ex.explore(fsm.initial(), EventSet::empty(n_events));
    Ok(ex.emitted)
}

/// Streams every sequence the sleep-set search emits (duplicates possible
/// on nondeterministic models). Returns the number of emissions.
pub fn for_each_por(
    fsm: &Fsm,
    max_len: usize,
    rel: &DependencyRelation,
    visit: impl FnMut(&[EventId]),
) -> Result<usize, GenError> {
    run(fsm, max_len, Some(rel), visit)
}

/// Streams every model path of length `max_len` (or ending in a state with
/// no outgoing transition).
pub fn for_each_exhaustive(
    fsm: &Fsm,
    max_len: usize,
    visit: impl FnMut(&[EventId]),
) -> Result<usize, GenError> {
    run(fsm, max_len, None, visit)
}

fn collect(
    fsm: &Fsm,
    max_len: usize,
    rel: Option<&DependencyRelation>,
    origin: Origin,
) -> Result<Vec<EventSeq>, GenError> {
    let mut out: Vec<Vec<EventId>> = Vec::new();
    run(fsm, max_len, rel, |p| out.push(p.to_vec()))?;
    out.sort_unstable();
    out.dedup();
    Ok(out.into_iter().map(|e| EventSeq::new(e, origin)).collect())
}

/// Model paths up to `max_len` with sleep-set pruning of sequences that
/// only reorder independent events. Sorted and de-duplicated.
pub fn gen_por(
    fsm: &Fsm,
    max_len: usize,
    rel: &DependencyRelation,
) -> Result<Vec<EventSeq>, GenError> {
    collect(fsm, max_len, Some(rel), Origin::Por)
}

/// Every model path of length `max_len`. Sorted and de-duplicated.
pub fn gen_exhaustive(fsm: &Fsm, max_len: usize) -> Result<Vec<EventSeq>, GenError> {
    collect(fsm, max_len, None, Origin::Exhaustive)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;
    use crate::appspec::{parse, AppSpec};
    use crate::depend::analyze;
    use crate::model::AbstractState;

    const INDEP: &str =
        "app t\nvar x: int = 0;\nvar y: int = 0;\nevent a { x = x + 1; }\nevent b { y = y + 1; }";
    const DEP: &str = "app t\nvar x: int = 0;\nevent a { x = x + 1; }\nevent b { x = x * 2; }";

    /// Single state with a self-loop per event.
    fn loops(spec: &AppSpec) -> Fsm {
        let mut m = Fsm::for_spec(spec, AbstractState::from_digest(1));
        for e in spec.event_ids() {
            m.add_transition(m.initial(), e, m.initial());
        }
        m
    }

    fn words(spec: &AppSpec, seqs: &[EventSeq]) -> BTreeSet<String> {
        let names = spec.event_names();
        seqs.iter().map(|s| s.render(&names)).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn independent_pair_is_pruned() {
        let spec = parse(INDEP).unwrap();
        let rel = analyze(&spec);
        let fsm = loops(&spec);
        assert_eq!(
            words(&spec, &gen_por(&fsm, 2, &rel).unwrap()),
            set(&["a;a", "a;b", "b;b"])
        );
        assert_eq!(
            words(&spec, &gen_exhaustive(&fsm, 2).unwrap()),
            set(&["a;a", "a;b", "b;a", "b;b"])
        );
    }

    #[test]
    fn dependent_pair_keeps_everything() {
        let spec = parse(DEP).unwrap();
        let rel = analyze(&spec);
        let fsm = loops(&spec);
        assert_eq!(
            words(&spec, &gen_por(&fsm, 2, &rel).unwrap()),
            set(&["a;a", "a;b", "b;a", "b;b"])
        );
    }

    #[test]
    fn depth_one_is_one_per_event() {
        for src in [INDEP, DEP] {
            let spec = parse(src).unwrap();
            let rel = analyze(&spec);
            let fsm = loops(&spec);
            assert_eq!(
                words(&spec, &gen_por(&fsm, 1, &rel).unwrap()),
                set(&["a", "b"])
            );
        }
    }

    #[test]
    fn errors() {
        let spec = parse(INDEP).unwrap();
        let rel = analyze(&spec);
        let empty = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        assert_eq!(gen_por(&empty, 3, &rel), Err(GenError::EmptyModel));
        assert_eq!(gen_exhaustive(&empty, 3), Err(GenError::EmptyModel));
        assert_eq!(gen_exhaustive(&loops(&spec), 0), Err(GenError::ZeroLength));
    }

    #[test]
    fn dead_end_emits_short_path() {
        let spec = parse(DEP).unwrap();
        let mut m = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        let s1 = m.add_state(AbstractState::from_digest(1));
        m.add_transition(m.initial(), EventId(0), s1);
        m.add_transition(m.initial(), EventId(1), m.initial());
        assert_eq!(
            words(&spec, &gen_exhaustive(&m, 3).unwrap()),
            set(&["a", "b;a", "b;b;a", "b;b;b"])
        );
    }

    #[test]
    fn sleep_blocked_frame_is_not_emitted() {
        // s0 -a-> s1 -b-> s3 and s0 -b-> s2 -a-> s3 with a, b independent.
        let spec = parse(INDEP).unwrap();
        let rel = analyze(&spec);
        let (a, b) = (EventId(0), EventId(1));
        let mut m = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        let s1 = m.add_state(AbstractState::from_digest(1));
        let s2 = m.add_state(AbstractState::from_digest(2));
        let s3 = m.add_state(AbstractState::from_digest(3));
        m.add_transition(m.initial(), a, s1);
        m.add_transition(m.initial(), b, s2);
        m.add_transition(s1, b, s3);
        m.add_transition(s2, a, s3);
        assert_eq!(words(&spec, &gen_por(&m, 2, &rel).unwrap()), set(&["a;b"]));
        assert_eq!(
            words(&spec, &gen_exhaustive(&m, 2).unwrap()),
            set(&["a;b", "b;a"])
        );
    }

    #[test]
    fn nondeterministic_successors_deduplicated() {
        let spec = parse(DEP).unwrap();
        let rel = analyze(&spec);
        let mut m = Fsm::for_spec(&spec, AbstractState::from_digest(0));
        let s1 = m.add_state(AbstractState::from_digest(1));
        m.add_transition(m.initial(), EventId(0), m.initial());
        m.add_transition(m.initial(), EventId(0), s1);
        m.add_transition(s1, EventId(0), s1);
        let mut raw = 0;
        for_each_exhaustive(&m, 2, |_| raw += 1).unwrap();
        assert_eq!(raw, 3);
        assert_eq!(words(&spec, &gen_exhaustive(&m, 2).unwrap()), set(&["a;a"]));
        assert_eq!(words(&spec, &gen_por(&m, 2, &rel).unwrap()), set(&["a;a"]));
    }

    fn random_fsm(spec: &AppSpec, edges: &[(u8, u8, u8)], states: u8) -> Fsm {
        let mut m = Fsm::for_spec(spec, AbstractState::from_digest(0));
        for s in 1..states {
            m.add_state(AbstractState::from_digest(s as u64));
        }
        m.add_transition(m.initial(), EventId(0), m.initial());
        let n = spec.events.len() as u8;
        for (from, e, to) in edges {
            m.add_transition(
                StateId((from % states) as u32),
                EventId((e % n) as u32),
                StateId((to % states) as u32),
            );
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn por_is_a_deterministic_subset(
            edges in prop::collection::vec((0u8..6, 0u8..4, 0u8..6), 0..20),
            states in 1u8..6,
            d in 1usize..5,
        ) {
            let spec = parse(
                "app t\nvar x: int = 0;\nvar y: int = 0;\n\
                 event a { x = 1; }\nevent b { y = 1; }\nevent c { x = y; }\nevent e { log(\"e\"); }",
            ).unwrap();
            let rel = analyze(&spec);
            let m = random_fsm(&spec, &edges, states);
            let por = gen_por(&m, d, &rel).unwrap();
            let ex = gen_exhaustive(&m, d).unwrap();
            let ex_set: BTreeSet<_> = ex.iter().map(|s| s.events.clone()).collect();
            for s in &por {
                prop_assert!(ex_set.contains(&s.events));
                prop_assert!(m.accepts(&s.events));
            }
            prop_assert_eq!(&por, &gen_por(&m, d, &rel).unwrap());
            prop_assert!(por.len() <= ex.len());
        }
    }
}
