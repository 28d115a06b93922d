//! Decide "u is less risk-averse than v" four ways and print the witnesses.
//!
//!     cargo run --example risk_aversion_routes

use riskorder::risk_order::{
    check_lra_definition, check_lra_grid, check_lra_pratt, check_lra_transform, RiskOrderVerdict,
};
use riskorder::{ratio, Alternatives, Rational, UtilityTable};

fn report(name: &str, u: &UtilityTable, v: &UtilityTable) {
    println!("{name}: u = {:?}, v = {:?}", show(u), show(v));
    let verdicts: [RiskOrderVerdict; 4] = [
        check_lra_definition(u, v).unwrap(),
        check_lra_pratt(u, v).unwrap(),
        check_lra_transform(u, v).unwrap(),
        check_lra_grid(u, v, 6).unwrap(),
    ];
    for verdict in &verdicts {
        let status = if verdict.holds { "holds" } else { "fails" };
        println!("  {:<10} {status}", verdict.route.to_string());
        if let Some(w) = &verdict.witness {
            println!("             {}", w.explain(u, v));
        }
    }
}

fn show(t: &UtilityTable) -> Vec<String> {
    t.values().iter().map(ToString::to_string).collect()
}

fn main() {
    let abc = Alternatives::new(&["a", "b", "c"]).unwrap();
    let table = |xs: [Rational; 3]| UtilityTable::new(abc.clone(), xs.to_vec()).unwrap();

    // u bends upward faster than v: u is the less risk-averse one.
    let convex = table([0.into(), 1.into(), 4.into()]);
    let linear = table([0.into(), 1.into(), 2.into()]);
    report("convex vs linear", &convex, &linear);

    // Swapping the roles gives a compression violation and a lottery witness.
    report("linear vs convex", &linear, &convex);

    // Same ranking, same curvature up to an affine map: both directions hold.
    let scaled = linear.affine(&ratio(3, 2), &ratio(-1, 4));
    report("linear vs affine copy", &linear, &scaled);
}
