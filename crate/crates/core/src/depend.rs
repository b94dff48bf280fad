//! Static event-dependency analysis over handler read/write sets.
//!
//! `e1 -> e2` holds when `e1` can influence `e2`: either a chain of data or
//! control dependencies leads from `e1` to `e2` (reflexive-transitive), or
//! `e1` enables/disables `e2`. Two events are independent when neither
//! depends on the other; adjacent independent events commute.

use std::collections::BTreeSet;

use crate::appspec::{AppSpec, EventId, Stmt, StmtKind, VarId};

/// Read/write footprint of one handler.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HandlerFacts {
    pub reads: BTreeSet<VarId>,
    pub writes: BTreeSet<VarId>,
    /// Variables read by `if` conditions; a subset of `reads`.
    pub ctrl_reads: BTreeSet<VarId>,
    /// Targets of `enable`/`disable`.
    pub regs: BTreeSet<EventId>,
}

impl HandlerFacts {
    fn collect(&mut self, body: &[Stmt]) {
        for s in body {
            match &s.kind {
                StmtKind::Assign(var, rhs) => {
                    self.writes.insert(*var);
                    rhs.visit_reads(&mut |v| {
                        self.reads.insert(v);
                    });
                }
                StmtKind::If {
                    cond,
                    then_body,
                    else_body,
                } => {
                    cond.visit_reads(&mut |v| {
                        self.reads.insert(v);
                        self.ctrl_reads.insert(v);
                    });
                    self.collect(then_body);
                    self.collect(else_body);
                }
                StmtKind::Enable(e) | StmtKind::Disable(e) => {
                    self.regs.insert(*e);
                }
                StmtKind::Log(_) => {}
            }
        }
    }
}

/// Square boolean matrix over events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    bits: Vec<bool>,
}

impl Relation {
    fn new(n: usize) -> Self {
        Relation {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn get(&self, a: EventId, b: EventId) -> bool {
        self.bits[a.index() * self.n + b.index()]
    }

    fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.n + b] = true;
    }

    fn at(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.n + b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyRelation {
    names: Vec<String>,
    /// Position of each event in lexicographic name order.
    rank: Vec<usize>,
    facts: Vec<HandlerFacts>,
    rc: Relation,
    rd: Relation,
    closure: Relation,
    dep: Relation,
}

pub fn analyze(spec: &AppSpec) -> DependencyRelation {
    let n = spec.events.len();
    let facts: Vec<HandlerFacts> = spec
        .events
        .iter()
        .map(|e| {
            let mut f = HandlerFacts::default();
            f.collect(&e.body);
            f
        })
        .collect();

    let mut rc = Relation::new(n);
    let mut rd = Relation::new(n);
    for (a, fa) in facts.iter().enumerate() {
        for (b, fb) in facts.iter().enumerate() {
            if !fa.writes.is_disjoint(&fb.reads) {
                rd.set(a, b);
            }
            if !fa.writes.is_disjoint(&fb.ctrl_reads) {
                rc.set(a, b);
            }
        }
    }

    // Warshall over Rc ∪ Rd, seeded with the identity.
    let mut closure = Relation::new(n);
    for a in 0..n {
        closure.set(a, a);
        for b in 0..n {
            if rc.at(a, b) || rd.at(a, b) {
                closure.set(a, b);
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            if !closure.at(a, k) {
                continue;
            }
            for b in 0..n {
                if closure.at(k, b) {
                    closure.set(a, b);
                }
            }
        }
    }

    let mut dep = closure.clone();
    for (a, fa) in facts.iter().enumerate() {
        for e in &fa.regs {
            dep.set(a, e.index());
        }
    }

    let mut rank = vec![0; n];
    for (pos, id) in spec.events_by_name().iter().enumerate() {
        rank[id.index()] = pos;
    }

    DependencyRelation {
        names: spec.event_names(),
        rank,
        facts,
        rc,
        rd,
        closure,
        dep,
    }
}

impl DependencyRelation {
    pub fn event_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: EventId) -> &str {
        &self.names[e.index()]
    }

    /// Position of `e` in lexicographic name order.
    pub fn name_rank(&self, e: EventId) -> usize {
        self.rank[e.index()]
    }

    pub fn facts(&self, e: EventId) -> &HandlerFacts {
        &self.facts[e.index()]
    }

    pub fn control(&self) -> &Relation {
        &self.rc
    }

    pub fn data(&self) -> &Relation {
        &self.rd
    }

    pub fn closure(&self) -> &Relation {
        &self.closure
    }

    /// `a -> b`: `b` depends upon `a`.
    pub fn depends(&self, a: EventId, b: EventId) -> bool {
        self.dep.get(a, b)
    }

    pub fn independent(&self, a: EventId, b: EventId) -> bool {
        !self.dep.get(a, b) && !self.dep.get(b, a)
    }

    fn ids(&self) -> impl Iterator<Item = EventId> {
        (0..self.names.len() as u32).map(EventId)
    }

    /// All pairs `(a, b)` with `a -> b`, sorted by name.
    pub fn dependent_pairs(&self) -> Vec<(EventId, EventId)> {
        let mut out: Vec<_> = self
            .ids()
            .flat_map(|a| self.ids().map(move |b| (a, b)))
            .filter(|(a, b)| self.depends(*a, *b))
            .collect();
        out.sort_by(|x, y| (self.name(x.0), self.name(x.1)).cmp(&(self.name(y.0), self.name(y.1))));
        out
    }

    /// One `e1 -> e2` line per dependent pair, sorted.
    pub fn render(&self) -> String {
        self.dependent_pairs()
            .into_iter()
            .map(|(a, b)| format!("{} -> {}\n", self.name(a), self.name(b)))
            .collect()
    }

    /// Lexicographic normal form of the trace of `seq`: repeatedly emit the
    /// smallest-named event that commutes with everything still ahead of it.
    pub fn normal_form(&self, seq: &[EventId]) -> Vec<EventId> {
        let mut rest: Vec<EventId> = seq.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let e = rest[i];
                if best.is_some_and(|b| self.rank[rest[b].index()] <= self.rank[e.index()]) {
                    continue;
                }
                if rest[..i].iter().all(|p| self.independent(*p, e)) {
                    best = Some(i);
                }
            }
            // the first element always qualifies
            let pick = best.expect("non-empty sequence has a minimal element");
            out.push(rest.remove(pick));
        }
        out
    }

    pub fn equivalent(&self, a: &[EventId], b: &[EventId]) -> bool {
        a.len() == b.len() && self.normal_form(a) == self.normal_form(b)
    }
}

/// True when `a` can be turned into `b` by swapping adjacent independent
/// events.
pub fn equivalent(rel: &DependencyRelation, a: &[EventId], b: &[EventId]) -> bool {
    rel.equivalent(a, b)
}
