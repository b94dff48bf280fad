use std::collections::BTreeSet;

use crate::appspec::{AppSpec, EventId, StmtId, Value, VarId};

/// Full interpreter state: variable valuation plus the enabled event set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConcreteState {
    values: Vec<Value>,
    enabled: Vec<bool>,
}

impl ConcreteState {
    pub fn initial(spec: &AppSpec) -> Self {
        ConcreteState {
            values: spec.variables.iter().map(|v| v.initial).collect(),
            enabled: spec.events.iter().map(|e| e.initially_enabled).collect(),
        }
    }

    pub fn value(&self, var: VarId) -> Value {
        self.values[var.index()]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub(crate) fn set(&mut self, var: VarId, value: Value) {
        self.values[var.index()] = value;
    }

    pub fn is_enabled(&self, event: EventId) -> bool {
        self.enabled[event.index()]
    }

    pub(crate) fn set_enabled(&mut self, event: EventId, on: bool) {
        self.enabled[event.index()] = on;
    }

    /// Enabled events in declaration order.
    pub fn enabled_events(&self) -> Vec<EventId> {
        self.enabled
            .iter()
            .enumerate()
            .filter(|(_, on)| **on)
            .map(|(i, _)| EventId(i as u32))
            .collect()
    }

    /// Value lookup by name, for tests and examples.
    pub fn get(&self, spec: &AppSpec, name: &str) -> Option<Value> {
        spec.var_id(name).map(|v| self.value(v))
    }
}

/// Statements executed at least once, indexed by statement ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoveredSet {
    bits: Vec<bool>,
    count: usize,
}

impl CoveredSet {
    pub fn empty(spec: &AppSpec) -> Self {
        CoveredSet {
            bits: vec![false; spec.statement_count()],
            count: 0,
        }
    }

    pub fn insert(&mut self, ordinal: usize) -> bool {
        let fresh = !self.bits[ordinal];
        if fresh {
            self.bits[ordinal] = true;
            self.count += 1;
        }
        fresh
    }

    pub fn contains(&self, ordinal: usize) -> bool {
        self.bits[ordinal]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn total(&self) -> usize {
        self.bits.len()
    }

    pub fn is_subset(&self, other: &CoveredSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    pub fn union_with(&mut self, other: &CoveredSet) {
        for (i, on) in other.bits.iter().enumerate() {
            if *on {
                self.insert(i);
            }
        }
    }

    pub fn ordinals(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, on)| **on)
            .map(|(i, _)| i)
    }

    /// Statement ids in the set, sorted by source position.
    pub fn ids(&self, spec: &AppSpec) -> BTreeSet<StmtId> {
        self.ordinals().map(|i| spec.statements()[i].id).collect()
    }
}
