//! Generate random and constructive instances and cross-check every route.
//!
//!     cargo run --release --example selftest_campaign -- 500 7

use riskorder::equivalence::{
    check_proposition, gen_positive_instance, run_campaign, CampaignConfig, InstanceGenParams,
};
use riskorder::instance::param_to_json;
use riskorder::Rational;

fn main() {
    let mut args = std::env::args().skip(1);
    let instances = args.next().and_then(|s| s.parse().ok()).unwrap_or(200);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);

    let sample = gen_positive_instance(&InstanceGenParams {
        seed,
        n_alternatives: 3,
        n_params: 2,
        relation_density: Rational::one(),
        ..Default::default()
    })
    .unwrap();
    println!("a constructive instance:\n{}", serde_json::to_string_pretty(&param_to_json(&sample)).unwrap());
    println!("holds: {}", check_proposition(&sample).unwrap().holds());

    let summary = run_campaign(&CampaignConfig::new(instances, seed));
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    for (name, failure) in &summary.failures {
        println!("{name}: {failure}");
    }
    std::process::exit(if summary.passed() { 0 } else { 1 });
}
