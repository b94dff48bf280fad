//! Runs a full campaign and prints the JSON report.
//!
//!     cargo run --example campaign [seed]

use std::sync::Arc;

use eventseq::{
    appspec::parse,
    campaign::{run_campaign, CampaignConfig},
    corpus,
    model::BuildConfig,
};

fn main() {
    let seed = std::env::args()
        .nth(1)
        .map_or(0, |s| s.parse().expect("numeric seed"));
    let spec = Arc::new(parse(corpus::CHECKBOXES10).unwrap());
    let mut cfg = CampaignConfig::new(BuildConfig::new(21, 2).unwrap().seed(seed));
    cfg.sequences = 10;
    let report = run_campaign(spec, &cfg).unwrap();
    print!("{}", report.to_json());
}
