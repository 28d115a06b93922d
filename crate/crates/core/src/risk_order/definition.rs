use super::{LraWitness, Part, RiskOrderError, RiskOrderVerdict, Route};
use crate::rational::Rational;
use crate::simplex::{first_vertex_violation, Threshold};
use crate::table::{Lottery, UtilityTable};

/// Decides "`u` is less risk-averse than `v`" straight from the lottery
/// definition, without enumerating lotteries.
///
/// For each sure alternative `y` (in domain order):
///
/// * weak part: is there `p` with `E_p[u] ≤ u(y)` and `E_p[v] > v(y)`?
///   Equivalently, does `max{E_p[v] : E_p[u] ≤ u(y)}` exceed `v(y)`?
/// * strict part: is there `p` with `E_p[v] ≥ v(y)` and `E_p[u] < u(y)`?
///   Equivalently, is `min{E_p[u] : E_p[v] ≥ v(y)}` below `u(y)`?
///
/// Both regions contain `δ_y`, and both optima are attained on supports of
/// size at most two, which [`first_vertex_violation`] scans in order.
pub fn check_lra_definition(
    u: &UtilityTable,
    v: &UtilityTable,
) -> Result<RiskOrderVerdict, RiskOrderError> {
    u.domain().ensure_same(v.domain())?;
    let n = u.len();
    for y in 0..n {
        // gaps relative to the sure thing: positive means x is worse than y
        let gu: Vec<Rational> = u.values().iter().map(|ux| u.value(y) - ux).collect();
        let gv: Vec<Rational> = v.values().iter().map(|vx| v.value(y) - vx).collect();

        let weak = first_vertex_violation(&gu, &gv, Threshold::Negative).map(|vx| (vx, Part::Weak));
        let found = weak.or_else(|| {
            let neg_gv: Vec<Rational> = gv.iter().map(|g| -g).collect();
            first_vertex_violation(&neg_gv, &gu, Threshold::Positive).map(|vx| (vx, Part::Strict))
        });
        if let Some((vertex, part)) = found {
            let p = Lottery::new(u.domain().clone(), vertex.weights(n))
                .expect("simplex vertex is a lottery");
            return Ok(RiskOrderVerdict::fails(
                Route::Definition,
                LraWitness::Lottery {
                    y: u.domain().label(y).to_string(),
                    p,
                    part,
                },
            ));
        }
    }
    Ok(RiskOrderVerdict::holds(Route::Definition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::table::Alternatives;

    fn pair(u: &[i64], v: &[i64]) -> (UtilityTable, UtilityTable) {
        let labels: Vec<String> = (0..u.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let d = Alternatives::new(&labels).unwrap();
        (
            UtilityTable::new(d.clone(), u.iter().map(|&x| x.into()).collect()).unwrap(),
            UtilityTable::new(d, v.iter().map(|&x| x.into()).collect()).unwrap(),
        )
    }

    #[test]
    fn convex_transform_holds() {
        let (u, v) = pair(&[0, 1, 4], &[0, 1, 2]);
        assert!(check_lra_definition(&u, &v).unwrap().holds);
    }

    #[test]
    fn concave_transform_fails_at_midpoint_lottery() {
        let (u, v) = pair(&[0, 1, 2], &[0, 1, 4]);
        let verdict = check_lra_definition(&u, &v).unwrap();
        assert!(!verdict.holds);
        let w = verdict.witness.unwrap();
        match &w {
            LraWitness::Lottery { y, p, part } => {
                assert_eq!(y, "b");
                assert_eq!(p.weights(), &[ratio(1, 2), Rational::zero(), ratio(1, 2)]);
                assert_eq!(*part, Part::Weak);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(w.verify(&u, &v));
    }

    #[test]
    fn reflexive() {
        let (u, _) = pair(&[3, -1, 7, 7], &[0, 0, 0, 0]);
        assert!(check_lra_definition(&u, &u).unwrap().holds);
    }

    #[test]
    fn strict_part_catches_ties_in_v() {
        // u separates a < b, v ties them: u(b) > E_{δa}[u] but v(b) <= E_{δa}[v]
        let (u, v) = pair(&[0, 1], &[0, 0]);
        let verdict = check_lra_definition(&u, &v).unwrap();
        assert_eq!(
            verdict.witness,
            Some(LraWitness::Lottery {
                y: "b".into(),
                p: Lottery::point_mass(u.domain().clone(), 0),
                part: Part::Strict,
            })
        );
    }

    #[test]
    fn singleton_domain_holds() {
        let (u, v) = pair(&[5], &[-2]);
        assert!(check_lra_definition(&u, &v).unwrap().holds);
    }

    #[test]
    fn mismatched_domains_error() {
        let (u, _) = pair(&[0, 1], &[0, 1]);
        let v = UtilityTable::from_pairs(&[("b", Rational::zero()), ("a", Rational::one())]).unwrap();
        assert!(matches!(
            check_lra_definition(&u, &v),
            Err(RiskOrderError::DomainMismatch(_))
        ));
    }
}
