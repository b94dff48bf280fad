//! Shows read/write facts, the dependency relation and trace equivalence.

use eventseq::{appspec::parse, corpus, depend::analyze};

fn main() {
    for (name, src) in [
        ("running_example", corpus::RUNNING_EXAMPLE),
        ("lamps", corpus::LAMPS),
    ] {
        let spec = parse(src).unwrap();
        let rel = analyze(&spec);
        println!("== {name}");
        print!("{}", rel.render());
        for a in spec.event_ids() {
            for b in spec.event_ids() {
                if a < b && rel.independent(a, b) {
                    println!("independent: {} {}", spec.event_name(a), spec.event_name(b));
                }
            }
        }
    }

    let spec = parse(corpus::LAMPS).unwrap();
    let rel = analyze(&spec);
    let id = |n| spec.event_id(n).unwrap();
    let x = [id("ToggleLeft"), id("ToggleRight"), id("Count")];
    let y = [id("ToggleRight"), id("ToggleLeft"), id("Count")];
    println!(
        "\nToggleLeft;ToggleRight;Count ~ ToggleRight;ToggleLeft;Count: {}",
        rel.equivalent(&x, &y)
    );
}
