use std::fmt;
use std::hash::{Hash, Hasher};

use fnv::FnvHasher;

use crate::appspec::{AppSpec, Value};
use crate::engine::ConcreteState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Abstraction {
    /// Non-implicit variables only; the enabled set is ignored.
    #[default]
    Coarse,
    /// Every variable plus the enabled set.
    Fine,
}

impl fmt::Display for Abstraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Abstraction::Coarse => "coarse",
            Abstraction::Fine => "fine",
        })
    }
}

/// A model state: the digest of an abstracted concrete state.
///
/// Equality and hashing look at the digest alone.
#[derive(Debug, Clone)]
pub struct AbstractState {
    digest: u64,
    detail: Option<String>,
}

impl AbstractState {
    pub fn from_digest(digest: u64) -> Self {
        AbstractState {
            digest,
            detail: None,
        }
    }

    pub fn digest(&self) -> u64 {
        self.digest
    }

    /// Human-readable form of the hashed tuple, when built with
    /// [`abstract_state_debug`].
    pub fn detail(&self) -> Option<&str> {
        self.detail.as_deref()
    }
}

impl PartialEq for AbstractState {
    fn eq(&self, other: &Self) -> bool {
        self.digest == other.digest
    }
}

impl Eq for AbstractState {}

impl Hash for AbstractState {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digest.hash(state);
    }
}

/// Canonical byte serialization hashed into the digest.
///
/// Per included variable, in declaration order: name bytes, `0x00`, a type
/// tag (`0x01` int, `0x02` bool), then the value as 8 little-endian bytes.
/// Fine mode appends `0xFF` and the enabled event names in lexicographic
/// order, each NUL-terminated.
pub fn canonical_bytes(state: &ConcreteState, spec: &AppSpec, mode: Abstraction) -> Vec<u8> {
    let mut out = Vec::new();
    for (decl, value) in spec.variables.iter().zip(state.values()) {
        if mode == Abstraction::Coarse && decl.implicit {
            continue;
        }
        out.extend_from_slice(decl.name.as_bytes());
        out.push(0x00);
        match value {
            Value::Int(v) => {
                out.push(0x01);
                out.extend_from_slice(&v.to_le_bytes());
            }
            Value::Bool(b) => {
                out.push(0x02);
                out.extend_from_slice(&u64::from(*b).to_le_bytes());
            }
        }
    }
    if mode == Abstraction::Fine {
        out.push(0xFF);
        for e in spec.events_by_name() {
            if state.is_enabled(*e) {
                out.extend_from_slice(spec.event_name(*e).as_bytes());
                out.push(0x00);
            }
        }
    }
    out
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

pub fn abstract_state(state: &ConcreteState, spec: &AppSpec, mode: Abstraction) -> AbstractState {
    AbstractState::from_digest(fnv1a64(&canonical_bytes(state, spec, mode)))
}

/// Like [`abstract_state`] but keeps a readable rendering of the tuple.
pub fn abstract_state_debug(
    state: &ConcreteState,
    spec: &AppSpec,
    mode: Abstraction,
) -> AbstractState {
    let mut parts: Vec<String> = spec
        .variables
        .iter()
        .zip(state.values())
        .filter(|(d, _)| mode == Abstraction::Fine || !d.implicit)
        .map(|(d, v)| format!("{}={}", d.name, v))
        .collect();
    if mode == Abstraction::Fine {
        let enabled: Vec<&str> = spec
            .events_by_name()
            .iter()
            .filter(|e| state.is_enabled(**e))
            .map(|e| spec.event_name(*e))
            .collect();
        parts.push(format!("enabled={{{}}}", enabled.join(",")));
    }
    AbstractState {
        detail: Some(format!("({})", parts.join(", "))),
        ..abstract_state(state, spec, mode)
    }
}
