//! Every positive mixture of a family is single-crossing exactly when each
//! member is and the family is signed-ratio monotone. This example checks
//! both sides and prints the mixing weights when they fail.
//!
//!     cargo run --example mixture_aggregation

use riskorder::crossing::{
    check_family_sc, check_mixture_sc, check_mixture_sc_grid, check_srm, FunctionFamily,
};
use riskorder::poset::Poset;
use riskorder::Rational;

fn run(title: &str, family: &FunctionFamily) {
    let exact = check_mixture_sc(family);
    println!("{title}");
    println!("  members single-crossing: {}", check_family_sc(family).holds);
    println!("  signed-ratio monotone:   {}", check_srm(family).holds);
    println!("  every mixture crosses once: {}", exact.holds);
    if let Some(w) = &exact.witness {
        println!("    {}", w.explain(family));
    }
    println!("  grid oracle (step 1/6) agrees: {}", check_mixture_sc_grid(family, 6).holds == exact.holds);
}

fn main() {
    let params = Poset::chain(&["s", "t"]).unwrap();
    let int = |xs: &[i64]| xs.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();

    let bad = FunctionFamily::from_rows(params.clone(), &[("phi", int(&[-1, -3])), ("psi", int(&[1, 1]))]).unwrap();
    run("phi = (-1, -3), psi = (1, 1)", &bad);

    let good = FunctionFamily::from_rows(params, &[("phi", int(&[-1, 1])), ("psi", int(&[1, 2]))]).unwrap();
    run("phi = (-1, 1), psi = (1, 2)", &good);
}
