//! Random walks over the model of the ten-checkbox app.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use eventseq::{
    appspec::parse,
    corpus,
    depend::analyze,
    genseq::gen_long,
    model::{build_model, BuildConfig},
};

fn main() {
    let spec = Arc::new(parse(corpus::CHECKBOXES10).unwrap());
    let rel = analyze(&spec);
    let fsm = build_model(spec.clone(), &rel, &BuildConfig::new(21, 2).unwrap())
        .unwrap()
        .fsm;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let walks = gen_long(&fsm, 21, 5, &mut rng).unwrap();
    let names = spec.event_names();
    for (seq, n) in walks.sequences.iter().zip(&walks.multiplicity) {
        println!("x{n} {}", seq.render(&names));
    }
    println!("{} walks, {} truncated", walks.walks, walks.truncated);
}
