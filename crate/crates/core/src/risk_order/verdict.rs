use std::fmt;

use serde::Serialize;

use crate::rational::Rational;
use crate::table::{expected_value, Lottery, UtilityTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Definition,
    Pratt,
    Transform,
    Grid,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Definition => "definition",
            Route::Pratt => "pratt",
            Route::Transform => "transform",
            Route::Grid => "grid",
        })
    }
}

/// Which half of a "`≥` (resp. `>`) implies `≥` (resp. `>`)" statement failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Weak,
    Strict,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Weak => "weak",
            Part::Strict => "strict",
        })
    }
}

/// A concrete reason why `u` is not less risk-averse than `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LraWitness {
    /// `u(x) ≥ u(y)` with `v(x) < v(y)`, or `u(x) > u(y)` with `v(x) ≤ v(y)`.
    Ordinal { x: String, y: String },
    /// `u(x) < u(y) < u(z)` and
    /// `(u(z)−u(y))/(u(y)−u(x)) < (v(z)−v(y))/(v(y)−v(x))`.
    Compression { x: String, y: String, z: String },
    /// The sure alternative `y` against lottery `p`.
    Lottery { y: String, p: Lottery, part: Part },
}

impl LraWitness {
    /// Re-evaluates the witness on the raw tables. Unknown labels or a
    /// mismatched lottery domain count as a failed check.
    pub fn verify(&self, u: &UtilityTable, v: &UtilityTable) -> bool {
        if u.domain() != v.domain() {
            return false;
        }
        let idx = |l: &str| u.domain().index_of(l);
        match self {
            LraWitness::Ordinal { x, y } => {
                let (Some(x), Some(y)) = (idx(x), idx(y)) else {
                    return false;
                };
                let (ux, uy, vx, vy) = (u.value(x), u.value(y), v.value(x), v.value(y));
                (ux >= uy && vx < vy) || (ux > uy && vx <= vy)
            }
            LraWitness::Compression { x, y, z } => {
                let (Some(x), Some(y), Some(z)) = (idx(x), idx(y), idx(z)) else {
                    return false;
                };
                let (ux, uy, uz) = (u.value(x), u.value(y), u.value(z));
                if !(ux < uy && uy < uz) {
                    return false;
                }
                let dv = v.value(y) - v.value(x);
                let Ok(rv) = (v.value(z) - v.value(y)).checked_div(&dv) else {
                    return false;
                };
                (uz - uy) / (uy - ux) < rv
            }
            LraWitness::Lottery { y, p, part } => {
                let Some(yi) = idx(y) else {
                    return false;
                };
                let (Ok(eu), Ok(ev)) = (expected_value(u, p), expected_value(v, p)) else {
                    return false;
                };
                match part {
                    Part::Weak => u.value(yi) >= &eu && v.value(yi) < &ev,
                    Part::Strict => u.value(yi) > &eu && v.value(yi) <= &ev,
                }
            }
        }
    }

    /// The violated inequality with the exact numbers plugged in.
    pub fn explain(&self, u: &UtilityTable, v: &UtilityTable) -> String {
        let val = |t: &UtilityTable, l: &str| -> Rational {
            t.get(l).cloned().unwrap_or_else(Rational::zero)
        };
        match self {
            LraWitness::Ordinal { x, y } => {
                let (ux, uy, vx, vy) = (val(u, x), val(u, y), val(v, x), val(v, y));
                if ux > uy {
                    format!("u({x}) = {ux} > u({y}) = {uy} but v({x}) = {vx} <= v({y}) = {vy}")
                } else {
                    format!("u({x}) = {ux} >= u({y}) = {uy} but v({x}) = {vx} < v({y}) = {vy}")
                }
            }
            LraWitness::Compression { x, y, z } => {
                let (ux, uy, uz) = (val(u, x), val(u, y), val(u, z));
                let (vx, vy, vz) = (val(v, x), val(v, y), val(v, z));
                let lhs = (&uz - &uy) / (&uy - &ux);
                let rhs = (&vz - &vy)
                    .checked_div(&(&vy - &vx))
                    .map(|r| r.to_string())
                    .unwrap_or_else(|_| "undefined".into());
                format!(
                    "u({x}) = {ux} < u({y}) = {uy} < u({z}) = {uz} but \
                     (u({z})-u({y}))/(u({y})-u({x})) = {lhs} < \
                     (v({z})-v({y}))/(v({y})-v({x})) = {rhs}"
                )
            }
            LraWitness::Lottery { y, p, part } => {
                let eu = expected_value(u, p).unwrap_or_default();
                let ev = expected_value(v, p).unwrap_or_default();
                let (uy, vy) = (val(u, y), val(v, y));
                match part {
                    Part::Weak => format!(
                        "p = {p}: u({y}) = {uy} >= E_p[u] = {eu} but v({y}) = {vy} < E_p[v] = {ev}"
                    ),
                    Part::Strict => format!(
                        "p = {p}: u({y}) = {uy} > E_p[u] = {eu} but v({y}) = {vy} <= E_p[v] = {ev}"
                    ),
                }
            }
        }
    }
}

impl Serialize for Lottery {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.weights().len()))?;
        for (label, w) in self.domain().labels().iter().zip(self.weights()) {
            map.serialize_entry(label, w)?;
        }
        map.end()
    }
}

/// Outcome of one route. `witness` is present exactly when `holds` is false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiskOrderVerdict {
    pub holds: bool,
    pub route: Route,
    pub witness: Option<LraWitness>,
}

impl RiskOrderVerdict {
    pub fn holds(route: Route) -> Self {
        RiskOrderVerdict {
            holds: true,
            route,
            witness: None,
        }
    }

    pub fn fails(route: Route, witness: LraWitness) -> Self {
        RiskOrderVerdict {
            holds: false,
            route,
            witness: Some(witness),
        }
    }
}
