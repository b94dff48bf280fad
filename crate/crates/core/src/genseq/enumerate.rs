use std::sync::Arc;

use crate::appspec::AppSpec;
use crate::engine::EngineSession;

/// Every concrete event sequence of length 1 up to the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// Sequences in depth-first, name-ordered discovery order.
    pub sequences: Vec<Vec<String>>,
}

fn walk(
    session: &EngineSession,
    depth: usize,
    path: &mut Vec<String>,
    out: &mut Option<&mut Vec<Vec<String>>>,
) -> u64 {
    if depth == 0 {
        return 0;
    }
    let spec = Arc::clone(session.spec());
    let mut count = 0;
    for &e in spec.events_by_name() {
        if !session.is_enabled(e) {
            continue;
        }
        let mut child = session.clone();
        // A faulting handler still fires; the state is rolled back.
        let _ = child.fire(e);
        count += 1;
        path.push(spec.event_name(e).to_string());
        if let Some(out) = out.as_deref_mut() {
            out.push(path.clone());
        }
        count += walk(&child, depth - 1, path, out);
        path.pop();
    }
    count
}

/// Enumerates the concrete event tree down to `max_len` with seed 0.
pub fn enumerate_all(spec: Arc<AppSpec>, max_len: usize) -> Enumeration {
    enumerate_all_seeded(spec, max_len, 0)
}

/// As [`enumerate_all`] with an explicit seed for `rand_bool()` handlers.
/// Every branch of the tree inherits the rng position of its parent.
pub fn enumerate_all_seeded(spec: Arc<AppSpec>, max_len: usize, seed: u64) -> Enumeration {
    let session = EngineSession::init(spec, seed);
    let mut sequences = Vec::new();
    let count = walk(
        &session,
        max_len,
        &mut Vec::new(),
        &mut Some(&mut sequences),
    );
    Enumeration { count, sequences }
}

/// Size of the concrete event tree without materialising it.
pub fn count_all(spec: Arc<AppSpec>, max_len: usize) -> u64 {
    let session = EngineSession::init(spec, 0);
    walk(&session, max_len, &mut Vec::new(), &mut None)
}
