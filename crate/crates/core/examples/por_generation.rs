//! Compares sleep-set generation with plain exhaustive generation.

use std::sync::Arc;

use eventseq::{
    appspec::parse,
    corpus,
    depend::analyze,
    genseq::{gen_exhaustive, gen_por},
    model::{build_model, Abstraction, BuildConfig},
};

fn main() {
    for (name, src) in corpus::ALL {
        let spec = Arc::new(parse(src).unwrap());
        let rel = analyze(&spec);
        let cfg = BuildConfig::new(20, 2)
            .unwrap()
            .abstraction(Abstraction::Fine);
        let fsm = build_model(spec.clone(), &rel, &cfg).unwrap().fsm;
        for d in 1..=4 {
            let por = gen_por(&fsm, d, &rel).unwrap().len();
            let all = gen_exhaustive(&fsm, d).unwrap().len();
            println!("{name:<16} d={d}: por {por:>6}  exhaustive {all:>6}");
        }
    }

    let spec = parse(corpus::LAMPS).unwrap();
    let rel = analyze(&spec);
    let fsm = build_model(
        Arc::new(spec.clone()),
        &rel,
        &BuildConfig::new(20, 2).unwrap(),
    )
    .unwrap()
    .fsm;
    println!("\nlamps, d=2, sleep-set output:");
    for s in gen_por(&fsm, 2, &rel).unwrap() {
        println!("  {}", s.render(&spec.event_names()));
    }
}
