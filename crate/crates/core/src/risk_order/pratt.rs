use super::{LraWitness, RiskOrderError, RiskOrderVerdict, Route};
use crate::table::UtilityTable;

/// `u(x) ≥ u(y) ⇒ v(x) ≥ v(y)` and `u(x) > u(y) ⇒ v(x) > v(y)` for every
/// ordered pair, scanned `x` outer, `y` inner.
pub fn check_ordinal_equivalence(
    u: &UtilityTable,
    v: &UtilityTable,
) -> Result<RiskOrderVerdict, RiskOrderError> {
    u.domain().ensure_same(v.domain())?;
    let n = u.len();
    for x in 0..n {
        for y in 0..n {
            let (ux, uy, vx, vy) = (u.value(x), u.value(y), v.value(x), v.value(y));
            if (ux >= uy && vx < vy) || (ux > uy && vx <= vy) {
                return Ok(RiskOrderVerdict::fails(
                    Route::Pratt,
                    LraWitness::Ordinal {
                        x: u.domain().label(x).to_string(),
                        y: u.domain().label(y).to_string(),
                    },
                ));
            }
        }
    }
    Ok(RiskOrderVerdict::holds(Route::Pratt))
}

/// For every triple with `u(x) < u(y) < u(z)`:
/// `(u(z)−u(y))/(u(y)−u(x)) ≥ (v(z)−v(y))/(v(y)−v(x))`.
///
/// Errors with `DegenerateDenominator` if some qualifying triple has
/// `v(x) = v(y)`, which can only happen when ordinal equivalence fails.
pub fn check_compression(
    u: &UtilityTable,
    v: &UtilityTable,
) -> Result<RiskOrderVerdict, RiskOrderError> {
    u.domain().ensure_same(v.domain())?;
    let n = u.len();
    let label = |i: usize| u.domain().label(i).to_string();
    for x in 0..n {
        for y in 0..n {
            if u.value(x) >= u.value(y) {
                continue;
            }
            let du = u.value(y) - u.value(x);
            let dv = v.value(y) - v.value(x);
            for z in 0..n {
                if u.value(y) >= u.value(z) {
                    continue;
                }
                let u_ratio = (u.value(z) - u.value(y)) / &du;
                let v_ratio = (v.value(z) - v.value(y)).checked_div(&dv).map_err(|_| {
                    RiskOrderError::DegenerateDenominator {
                        x: label(x),
                        y: label(y),
                        z: label(z),
                    }
                })?;
                if u_ratio < v_ratio {
                    return Ok(RiskOrderVerdict::fails(
                        Route::Pratt,
                        LraWitness::Compression {
                            x: label(x),
                            y: label(y),
                            z: label(z),
                        },
                    ));
                }
            }
        }
    }
    Ok(RiskOrderVerdict::holds(Route::Pratt))
}

/// Ordinal equivalence, then compression. The first failing condition's
/// witness is returned.
pub fn check_lra_pratt(
    u: &UtilityTable,
    v: &UtilityTable,
) -> Result<RiskOrderVerdict, RiskOrderError> {
    let ordinal = check_ordinal_equivalence(u, v)?;
    if !ordinal.holds {
        return Ok(ordinal);
    }
    check_compression(u, v)
}
