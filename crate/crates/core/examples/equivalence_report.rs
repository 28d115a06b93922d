//! A parameterised utility U(x, θ): are lower slices less risk-averse than
//! higher ones, and do the utility differences cross zero once? Both
//! questions get the same answer; the report shows the sub-verdicts.
//!
//!     cargo run --example equivalence_report

use riskorder::equivalence::{check_proposition, differences_family};
use riskorder::instance::{parse_instance, Instance};

const INSTANCE: &str = r#"{
  "alternatives": ["safe", "bet", "long shot"],
  "poset": {"elements": ["cautious", "bold", "reckless"],
            "relation": [["reckless", "bold"], ["bold", "cautious"]]},
  "U": {
    "safe":      {"cautious": 0, "bold": 0,   "reckless": 0},
    "bet":       {"cautious": 2, "bold": 1,   "reckless": 1},
    "long shot": {"cautious": 3, "bold": "5/2", "reckless": 4}
  }
}"#;

fn main() {
    let Instance::Param(inst) = parse_instance(INSTANCE.as_bytes()).unwrap() else {
        unreachable!()
    };
    let table = &inst.table;
    let report = check_proposition(table).expect("the two sides agree");

    println!("slice comparisons:");
    for p in &report.side_a.pairs {
        println!("  {} <= {}: {}", p.theta, p.theta_prime, if p.verdict.holds { "less risk-averse" } else { "not ordered" });
    }
    println!("differences single-crossing: {}", report.side_b.sc.holds);
    for (y, verdict) in &report.side_b.srm {
        println!("  signed-ratio monotone around {y}: {}", verdict.holds);
        if let Some(w) = &verdict.witness {
            println!("    {}", w.explain(&differences_family(table, y).unwrap()));
        }
    }
    println!("agree: {}", report.agree);
    println!("{}", serde_json::to_string_pretty(&report.side_b.sc).unwrap());
}
