use std::collections::BTreeMap;
use std::fmt::Write;

use crate::model::{Fsm, StateId};

fn node(fsm: &Fsm, s: StateId) -> String {
    format!("s{:016x}", fsm.state(s).digest())
}

/// Renders the model as a DOT digraph. Nodes are labelled with the first
/// eight hex digits of their digest; the initial state is double-circled.
/// Transitions between the same pair of states share one edge whose label
/// lists the events in name order.
pub fn export_dot(fsm: &Fsm) -> String {
    let mut edges: BTreeMap<(StateId, StateId), Vec<(usize, &str)>> = BTreeMap::new();
    for t in fsm.transitions() {
        edges
            .entry((t.from, t.to))
            .or_default()
            .push((fsm.name_rank(t.event), fsm.event_name(t.event)));
    }

    let mut out = String::from("digraph model {\n    rankdir=LR;\n    init [shape=point];\n");
    for i in 0..fsm.state_count() {
        let s = StateId(i as u32);
        let shape = if s == fsm.initial() {
            "doublecircle"
        } else {
            "circle"
        };
        let digest = format!("{:016x}", fsm.state(s).digest());
        writeln!(
            out,
            "    {} [label=\"{}\", shape={shape}];",
            node(fsm, s),
            &digest[..8]
        )
        .unwrap();
    }
    writeln!(out, "    init -> {};", node(fsm, fsm.initial())).unwrap();
    for ((from, to), mut labels) in edges {
        labels.sort_unstable();
        labels.dedup();
        let text: Vec<&str> = labels.into_iter().map(|(_, n)| n).collect();
        writeln!(
            out,
            "    {} -> {} [label=\"{}\"];",
            node(fsm, from),
            node(fsm, to),
            text.join(",")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::appspec::parse;
    use crate::corpus;
    use crate::depend::analyze;
    use crate::model::{build_model, AbstractState, BuildConfig};

    #[test]
    fn coarse_running_example_is_one_loop() {
        let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
        let rel = analyze(&spec);
        let built = build_model(spec, &rel, &BuildConfig::new(20, 2).unwrap()).unwrap();
        let dot = export_dot(&built.fsm);
        assert_eq!(dot.matches("shape=doublecircle").count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.contains("[label=\"A,B,C,Submit\"]"));
        assert_eq!(dot, export_dot(&built.fsm));
    }

    #[test]
    fn empty_model_has_one_node() {
        let spec = parse("app t\nevent a { log(\"a\"); }").unwrap();
        let fsm = Fsm::for_spec(&spec, AbstractState::from_digest(0xabcdef0123456789));
        let dot = export_dot(&fsm);
        assert!(dot.contains("sabcdef0123456789 [label=\"abcdef01\", shape=doublecircle];"));
        assert_eq!(dot.matches(" -> ").count(), 1);
    }
}
