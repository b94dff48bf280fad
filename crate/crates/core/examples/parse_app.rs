//! Parses an app, lists its events and statements, and pretty-prints it.
//!
//!     cargo run --example parse_app [path/to/app.eda]

use eventseq::{appspec::parse, corpus};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable app file"),
        None => corpus::RUNNING_EXAMPLE.to_string(),
    };
    let spec = match parse(&text) {
        Ok(spec) => spec,
        Err(e) => {
            eprintln!("parse error at {e}");
            std::process::exit(1);
        }
    };
    println!(
        "app {} has {} statements",
        spec.name,
        spec.statement_count()
    );
    for e in &spec.events {
        let state = if e.initially_enabled {
            "enabled"
        } else {
            "disabled"
        };
        println!("  event {:<8} {state}", e.name);
    }
    println!("\n{spec}");
}
