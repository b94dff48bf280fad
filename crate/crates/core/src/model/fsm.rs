use std::collections::{BTreeSet, HashMap};

use super::abstraction::AbstractState;
use crate::appspec::{AppSpec, EventId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub event: EventId,
    pub to: StateId,
}

/// Nondeterministic finite-state machine `(S, I, delta, s0)` over abstract
/// states. States are numbered in discovery order; `s0` is always state 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsm {
    event_names: Vec<String>,
    name_rank: Vec<usize>,
    states: Vec<AbstractState>,
    index: HashMap<u64, StateId>,
    alphabet: BTreeSet<EventId>,
    delta: BTreeSet<Transition>,
}

impl Fsm {
    /// An FSM with only the initial state. `event_names` is indexed by
    /// [`EventId`].
    pub fn new(event_names: Vec<String>, initial: AbstractState) -> Self {
        let mut order: Vec<usize> = (0..event_names.len()).collect();
        order.sort_by(|a, b| event_names[*a].cmp(&event_names[*b]));
        let mut name_rank = vec![0; event_names.len()];
        for (rank, i) in order.into_iter().enumerate() {
            name_rank[i] = rank;
        }
        let mut fsm = Fsm {
            event_names,
            name_rank,
            states: Vec::new(),
            index: HashMap::new(),
            alphabet: BTreeSet::new(),
            delta: BTreeSet::new(),
        };
        fsm.add_state(initial);
        fsm
    }

    pub fn for_spec(spec: &AppSpec, initial: AbstractState) -> Self {
        Fsm::new(spec.event_names(), initial)
    }

    /// Returns the id of `state`, inserting it if new.
    pub fn add_state(&mut self, state: AbstractState) -> StateId {
        if let Some(id) = self.index.get(&state.digest()) {
            return *id;
        }
        let id = StateId(self.states.len() as u32);
        self.index.insert(state.digest(), id);
        self.states.push(state);
        id
    }

    /// Adds `(from, event, to)`; false if it was already present.
    pub fn add_transition(&mut self, from: StateId, event: EventId, to: StateId) -> bool {
        assert!(from.index() < self.states.len() && to.index() < self.states.len());
        assert!(event.index() < self.event_names.len());
        self.alphabet.insert(event);
        self.delta.insert(Transition { from, event, to })
    }

    pub fn initial(&self) -> StateId {
        StateId(0)
    }

    pub fn state(&self, id: StateId) -> &AbstractState {
        &self.states[id.index()]
    }

    pub fn lookup(&self, state: &AbstractState) -> Option<StateId> {
        self.index.get(&state.digest()).copied()
    }

    pub fn states(&self) -> &[AbstractState] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.delta.iter()
    }

    pub fn transition_count(&self) -> usize {
        self.delta.len()
    }

    /// Event labels used by at least one transition.
    pub fn alphabet(&self) -> &BTreeSet<EventId> {
        &self.alphabet
    }

    pub fn event_name(&self, e: EventId) -> &str {
        &self.event_names[e.index()]
    }

    pub fn event_names(&self) -> &[String] {
        &self.event_names
    }

    pub fn name_rank(&self, e: EventId) -> usize {
        self.name_rank[e.index()]
    }

    /// `supp(s)`: outgoing `(event, successor)` pairs, sorted by event name
    /// then successor id.
    pub fn supp(&self, s: StateId) -> Vec<(EventId, StateId)> {
        let lo = Transition {
            from: s,
            event: EventId(0),
            to: StateId(0),
        };
        let mut out: Vec<(EventId, StateId)> = self
            .delta
            .range(lo..)
            .take_while(|t| t.from == s)
            .map(|t| (t.event, t.to))
            .collect();
        out.sort_by_key(|(e, to)| (self.name_rank(*e), *to));
        out
    }

    /// Distinct events leaving `s`, in name order.
    pub fn events_at(&self, s: StateId) -> Vec<EventId> {
        let mut out: Vec<EventId> = self.supp(s).into_iter().map(|(e, _)| e).collect();
        out.dedup();
        out
    }

    pub fn successors(&self, s: StateId, e: EventId) -> Vec<StateId> {
        self.supp(s)
            .into_iter()
            .filter(|(ev, _)| *ev == e)
            .map(|(_, to)| to)
            .collect()
    }

    /// Checks that `seq` is a run from `s0`.
    pub fn accepts(&self, seq: &[EventId]) -> bool {
        let mut current = BTreeSet::from([self.initial()]);
        for e in seq {
            current = current
                .iter()
                .flat_map(|s| self.successors(*s, *e))
                .collect();
            if current.is_empty() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(d: u64) -> AbstractState {
        AbstractState::from_digest(d)
    }

    #[test]
    fn supp_and_nondeterminism() {
        let mut m = Fsm::new(vec!["b".into(), "a".into()], st(10));
        let s1 = m.add_state(st(11));
        let s2 = m.add_state(st(12));
        assert_eq!(m.add_state(st(11)), s1);
        let (a, b) = (EventId(1), EventId(0));
        assert!(m.add_transition(m.initial(), b, s1));
        assert!(m.add_transition(m.initial(), a, s2));
        assert!(m.add_transition(m.initial(), a, s1));
        assert!(!m.add_transition(m.initial(), a, s1));
        assert_eq!(m.supp(m.initial()), vec![(a, s1), (a, s2), (b, s1)]);
        assert_eq!(m.events_at(m.initial()), vec![a, b]);
        assert!(m.supp(s1).is_empty());
        assert_eq!(m.transition_count(), 3);
        assert!(m.accepts(&[a]));
        assert!(!m.accepts(&[a, a]));
        assert!(m.accepts(&[]));
    }
}
