//! Prints the selection weights step by step while the weighted strategy
//! drives the running example.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use eventseq::{
    appspec::parse,
    corpus,
    depend::analyze,
    engine::EngineSession,
    model::{format_weight, select_event, weight, Strategy, WeightParams},
};

fn main() {
    let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
    let rel = analyze(&spec);
    let params = WeightParams::default();
    let mut session = EngineSession::init(spec.clone(), 0);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut prev = None;
    for step in 1..=6 {
        let avail = session.available_events();
        let row: Vec<String> = avail
            .iter()
            .map(|&e| {
                let w = weight(e, prev, &rel, session.fired_counts(), &params);
                format!("{}={}", spec.event_name(e), format_weight(&w))
            })
            .collect();
        let e = select_event(
            Strategy::Weighted,
            &avail,
            prev,
            &rel,
            session.fired_counts(),
            &params,
            &mut rng,
        );
        println!(
            "step {step}: {:<40} -> {}",
            row.join(" "),
            spec.event_name(e)
        );
        session.fire(e).unwrap();
        prev = Some(e);
    }
}
