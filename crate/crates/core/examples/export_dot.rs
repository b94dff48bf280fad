//! Writes the fine-grained model of the lamps app as DOT.
//!
//!     cargo run --example export_dot | dot -Tsvg > lamps.svg

use std::sync::Arc;

use eventseq::{
    appspec::parse,
    campaign::export_dot,
    corpus,
    depend::analyze,
    model::{build_model, Abstraction, BuildConfig},
};

fn main() {
    let spec = Arc::new(parse(corpus::LAMPS).unwrap());
    let rel = analyze(&spec);
    let cfg = BuildConfig::new(20, 3)
        .unwrap()
        .abstraction(Abstraction::Fine);
    print!(
        "{}",
        export_dot(&build_model(spec, &rel, &cfg).unwrap().fsm)
    );
}
