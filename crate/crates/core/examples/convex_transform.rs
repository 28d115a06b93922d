//! Build the increasing convex map with u = φ(v), evaluate it between knots,
//! and compose two such maps.
//!
//!     cargo run --example convex_transform

use riskorder::risk_order::{apply_transform, build_transform, PLTransform};
use riskorder::{ratio, Rational, UtilityTable};

fn print_map(label: &str, phi: &PLTransform) {
    let knots: Vec<String> = phi.knots().iter().map(|(t, y)| format!("({t}, {y})")).collect();
    let slopes: Vec<String> = phi.slopes().iter().map(ToString::to_string).collect();
    println!("{label}: knots {}  slopes [{}]", knots.join(" "), slopes.join(", "));
}

fn main() {
    let v = UtilityTable::from_pairs(&[("low", Rational::from(0)), ("mid", Rational::from(1)), ("high", Rational::from(2))]).unwrap();
    let u = UtilityTable::from_pairs(&[("low", Rational::from(0)), ("mid", Rational::from(1)), ("high", Rational::from(4))]).unwrap();

    let phi = build_transform(&u, &v).expect("u is a convex transform of v");
    print_map("u = phi(v)", &phi);
    for t in [ratio(1, 2), ratio(3, 2)] {
        println!("  phi({t}) = {}", apply_transform(&phi, &t).unwrap());
    }

    // A second, steeper map applied after the first.
    let w = u.map(|x| x * x + x);
    let psi = build_transform(&w, &u).unwrap();
    print_map("w = psi(u)", &psi);
    let both = phi.then(&psi).unwrap();
    print_map("w = psi(phi(v))", &both);
    assert_eq!(build_transform(&w, &v).unwrap().knots(), both.knots());

    // Decreasing slopes cannot come from a convex map.
    match build_transform(&v, &u) {
        Ok(_) => unreachable!(),
        Err(e) => println!("v from u: {e}"),
    }
}
