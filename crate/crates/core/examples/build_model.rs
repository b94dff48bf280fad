//! Builds coarse and fine models of the running example and compares them.

use std::sync::Arc;

use eventseq::{
    appspec::parse,
    corpus,
    depend::analyze,
    model::{build_model, Abstraction, BuildConfig},
};

fn main() {
    let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
    let rel = analyze(&spec);
    for abstraction in [Abstraction::Coarse, Abstraction::Fine] {
        let cfg = BuildConfig::new(20, 2).unwrap().abstraction(abstraction);
        let built = build_model(spec.clone(), &rel, &cfg).unwrap();
        let cov = built.session.coverage();
        println!(
            "{abstraction:>6}: {} states, {} transitions, construction coverage {}/{}",
            built.fsm.state_count(),
            built.fsm.transition_count(),
            cov.covered_count(),
            cov.total
        );
    }
}
