use super::{LraWitness, Part, RiskOrderError, RiskOrderVerdict, Route};
use crate::simplex::simplex_grid;
use crate::table::{expected_value, Lottery, UtilityTable};

/// Brute-force oracle: tests the lottery definition on every lottery whose
/// weights are multiples of `1/denom_bound`.
///
/// Only sound as a refutation procedure (a grid point may miss a thin
/// violating region), and exponential in `|X|`. Meant for tests with
/// `|X| ≤ 5` and `denom_bound ≤ 12`. At each `(y, p)` the strict part is
/// tested before the weak part.
pub fn check_lra_grid(
    u: &UtilityTable,
    v: &UtilityTable,
    denom_bound: u32,
) -> Result<RiskOrderVerdict, RiskOrderError> {
    assert!(denom_bound >= 1, "denom_bound must be positive");
    u.domain().ensure_same(v.domain())?;
    let lotteries: Vec<Lottery> = simplex_grid(u.len(), denom_bound)
        .map(|w| Lottery::new(u.domain().clone(), w).expect("grid point is a lottery"))
        .collect();
    let means: Vec<_> = lotteries
        .iter()
        .map(|p| (expected_value(u, p).unwrap(), expected_value(v, p).unwrap()))
        .collect();
    for y in 0..u.len() {
        let (uy, vy) = (u.value(y), v.value(y));
        for (p, (eu, ev)) in lotteries.iter().zip(&means) {
            let part = if uy > eu && vy <= ev {
                Part::Strict
            } else if uy >= eu && vy < ev {
                Part::Weak
            } else {
                continue;
            };
            return Ok(RiskOrderVerdict::fails(
                Route::Grid,
                LraWitness::Lottery {
                    y: u.domain().label(y).to_string(),
                    p: p.clone(),
                    part,
                },
            ));
        }
    }
    Ok(RiskOrderVerdict::holds(Route::Grid))
}
