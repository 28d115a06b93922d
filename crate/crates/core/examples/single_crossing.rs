//! Single-crossing and signed-ratio monotonicity on a parameter poset.
//!
//!     cargo run --example single_crossing

use riskorder::crossing::{check_family_sc, check_srm, srm_ratio_form, FunctionFamily};
use riskorder::poset::Poset;
use riskorder::Rational;

fn row(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from(x)).collect()
}

fn main() {
    // Two chains joined at the bottom: "base" sits below both "left" and
    // "right", which are incomparable.
    let params = Poset::new(&["base", "left", "right"], &[("base", "left"), ("base", "right")]).unwrap();
    println!("comparable pairs: {:?}", params.strict_pairs().map(|(a, b)| (params.label(a), params.label(b))).collect::<Vec<_>>());

    let family = FunctionFamily::from_rows(
        params.clone(),
        &[("rising", row(&[-2, 1, 3])), ("flat", row(&[1, 1, 1])), ("falling", row(&[-1, -3, -2]))],
    )
    .unwrap();

    for (name, f) in family.members() {
        let one = FunctionFamily::new(params.clone(), vec![(name.clone(), f.clone())]).unwrap();
        println!("{name:>8}: single-crossing {}", check_family_sc(&one).holds);
    }

    let srm = check_srm(&family);
    println!("signed-ratio monotone: {}", srm.holds);
    if let Some(w) = &srm.witness {
        println!("  {}", w.explain(&family));
    }
    match srm_ratio_form(&family) {
        Ok(ratio) => println!("ratio form agrees: {}", ratio.holds == srm.holds),
        Err(e) => println!("ratio form unavailable: {e}"),
    }
}
