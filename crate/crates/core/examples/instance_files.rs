//! Reading and writing the three JSON instance kinds. Numbers must be exact:
//! integers or "p/q" strings.
//!
//!     cargo run --example instance_files

use riskorder::instance::{instance_to_json, parse_instance};

fn main() {
    let inputs = [
        r#"{"alternatives": ["a", "b"], "u": {"a": 0, "b": "3/2"}, "v": {"a": 0, "b": 1},
            "lottery": {"a": "1/4", "b": "3/4"}}"#,
        r#"{"poset": {"elements": ["lo", "hi"], "relation": [["lo", "hi"]]},
            "functions": {"f": {"lo": -1, "hi": 2}}}"#,
        r#"{"alternatives": ["a"], "poset": {"elements": ["t"]}, "U": {"a": {"t": "6/4"}}}"#,
        r#"{"alternatives": ["a", "b"], "u": {"a": 0, "b": 0.5}, "v": {"a": 0, "b": 1}}"#,
        r#"{"alternatives": ["a", "b"], "u": {"a": 0, "b": 1}, "v": {"a": 0, "b": 1},
            "lottery": {"a": "1/2", "b": "1/3"}}"#,
        r#"{"poset": {"elements": ["p", "q"], "relation": [["p", "q"], ["q", "p"]]}, "functions": {}}"#,
    ];
    for text in inputs {
        match parse_instance(text.as_bytes()) {
            Ok(inst) => println!("{}: {}", inst.kind(), serde_json::to_string(&instance_to_json(&inst)).unwrap()),
            Err(e) => println!("rejected: {e}"),
        }
    }
}
