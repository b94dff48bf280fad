//! Size of the concrete event tree of the running example by depth.

use std::sync::Arc;

use eventseq::{appspec::parse, corpus, genseq::count_all};

fn main() {
    let spec = Arc::new(parse(corpus::RUNNING_EXAMPLE).unwrap());
    for d in 1..=7 {
        println!("depth {d}: {} sequences", count_all(spec.clone(), d));
    }
}
