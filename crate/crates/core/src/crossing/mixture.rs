use super::{CrossingRoute, CrossingVerdict, CrossingWitness, FunctionFamily, MemberWeights};
use crate::rational::Rational;
use crate::risk_order::Part;
use crate::simplex::{first_vertex_violation, simplex_grid, Threshold};

fn weights_of(family: &FunctionFamily, w: Vec<Rational>) -> MemberWeights {
    MemberWeights(
        family
            .members()
            .iter()
            .map(|(n, _)| n.clone())
            .zip(w)
            .collect(),
    )
}

/// Looks for a mixture of the members that fails single-crossing at the
/// single comparable pair `θ ≲ θ'`.
///
/// With `s(p)` and `s'(p)` the mixture's values at `θ` and `θ'`:
/// the weak part fails iff `max{−s'(p) : s(p) ≥ 0} > 0`, the strict part
/// iff `max{s(p) : s'(p) ≤ 0} > 0`. Both are decided on supports of at most
/// two members. Identical members never yield a two-member vertex, so a
/// repeated function does not lengthen the witness.
pub fn check_mixture_sc_on_pair(
    family: &FunctionFamily,
    theta: usize,
    theta_prime: usize,
) -> Option<CrossingWitness> {
    if family.is_empty() {
        return None;
    }
    let at = family.column(theta);
    let later = family.column(theta_prime);
    let n = family.len();
    let found = first_vertex_violation(&at, &later, Threshold::Negative)
        .map(|v| (v, Part::Weak))
        .or_else(|| {
            let neg_later: Vec<Rational> = later.iter().map(|x| -x).collect();
            first_vertex_violation(&neg_later, &at, Threshold::Positive).map(|v| (v, Part::Strict))
        });
    found.map(|(vertex, part)| CrossingWitness::Mixture {
        weights: weights_of(family, vertex.weights(n)),
        theta: family.params().label(theta).to_string(),
        theta_prime: family.params().label(theta_prime).to_string(),
        part,
    })
}

/// Every convex combination of the members is single-crossing. An empty
/// family has no mixtures and holds vacuously.
pub fn check_mixture_sc(family: &FunctionFamily) -> CrossingVerdict {
    family
        .params()
        .strict_pairs()
        .find_map(|(t, tp)| check_mixture_sc_on_pair(family, t, tp))
        .map(|w| CrossingVerdict::fails(CrossingRoute::Mixture, w))
        .unwrap_or_else(|| CrossingVerdict::holds(CrossingRoute::Mixture))
}

/// Brute-force oracle over mixture weights that are multiples of
/// `1/denom_bound`. Comparable pairs outer, grid points inner; at each point
/// the strict part is tested first.
pub fn check_mixture_sc_grid(family: &FunctionFamily, denom_bound: u32) -> CrossingVerdict {
    assert!(denom_bound >= 1, "denom_bound must be positive");
    if family.is_empty() {
        return CrossingVerdict::holds(CrossingRoute::MixtureGrid);
    }
    let grid: Vec<Vec<Rational>> = simplex_grid(family.len(), denom_bound).collect();
    let params = family.params();
    for (t, tp) in params.strict_pairs() {
        let at = family.column(t);
        let later = family.column(tp);
        for w in &grid {
            let s: Rational = w.iter().zip(&at).map(|(a, b)| a * b).sum();
            let sp: Rational = w.iter().zip(&later).map(|(a, b)| a * b).sum();
            let part = if s.is_positive() && !sp.is_positive() {
                Part::Strict
            } else if !s.is_negative() && sp.is_negative() {
                Part::Weak
            } else {
                continue;
            };
            return CrossingVerdict::fails(
                CrossingRoute::MixtureGrid,
                CrossingWitness::Mixture {
                    weights: weights_of(family, w.clone()),
                    theta: params.label(t).to_string(),
                    theta_prime: params.label(tp).to_string(),
                    part,
                },
            );
        }
    }
    CrossingVerdict::holds(CrossingRoute::MixtureGrid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing::{check_family_sc, check_srm};
    use crate::poset::Poset;
    use crate::rational::ratio;

    fn family(rows: &[(&str, &[i64])]) -> FunctionFamily {
        let chain = Poset::chain(&["a", "b"]).unwrap();
        let rows: Vec<(&str, Vec<Rational>)> = rows
            .iter()
            .map(|(n, v)| (*n, v.iter().map(|&x| Rational::from(x)).collect()))
            .collect();
        FunctionFamily::from_rows(chain, &rows).unwrap()
    }

    #[test]
    fn aggregating_family_holds() {
        // 1 - 2α ≥ 0 at a forces 2 - 3α > 0 at b
        let fam = family(&[("phi", &[-1, -1]), ("psi", &[1, 2])]);
        assert!(check_mixture_sc(&fam).holds);
        assert!(check_mixture_sc_grid(&fam, 6).holds);
    }

    #[test]
    fn srm_failure_shows_up_as_even_mixture() {
        let fam = family(&[("phi", &[-1, -3]), ("psi", &[1, 1])]);
        let v = check_mixture_sc(&fam);
        let expected = CrossingWitness::Mixture {
            weights: MemberWeights(vec![("phi".into(), ratio(1, 2)), ("psi".into(), ratio(1, 2))]),
            theta: "a".into(),
            theta_prime: "b".into(),
            part: Part::Weak,
        };
        assert_eq!(v.witness.as_ref(), Some(&expected));
        assert!(expected.verify(&fam));
        assert!(expected.explain(&fam).contains("value 0 >= 0 but -1 < 0"));

        let g = check_mixture_sc_grid(&fam, 2);
        assert_eq!(g.witness.map(|w| match w {
            CrossingWitness::Mixture { weights, .. } => weights,
            _ => unreachable!(),
        }), Some(MemberWeights(vec![("phi".into(), ratio(1, 2)), ("psi".into(), ratio(1, 2))])));
    }

    #[test]
    fn single_member() {
        let fam = family(&[("up", &[-2, 5])]);
        assert!(check_mixture_sc(&fam).holds);
        let fam = family(&[("down", &[3, 0])]);
        let v = check_mixture_sc(&fam);
        assert!(matches!(
            v.witness,
            Some(CrossingWitness::Mixture { part: Part::Strict, .. })
        ));
    }

    #[test]
    fn point_mass_grid_matches_member_check() {
        for rows in [
            vec![("p", &[-1i64, 2][..]), ("q", &[0, -1][..])],
            vec![("p", &[-1, -3][..]), ("q", &[1, 1][..])],
            vec![("p", &[4, 4][..])],
        ] {
            let fam = family(&rows);
            assert_eq!(check_mixture_sc_grid(&fam, 1).holds, check_family_sc(&fam).holds);
        }
    }

    #[test]
    fn agrees_with_member_conditions_on_fixtures() {
        for rows in [
            vec![("p", &[-1i64, -1][..]), ("q", &[1, 2][..])],
            vec![("p", &[-1, -3][..]), ("q", &[1, 1][..])],
            vec![("p", &[-2, 1][..]), ("q", &[3, 1][..]), ("r", &[0, 0][..])],
        ] {
            let fam = family(&rows);
            assert_eq!(
                check_mixture_sc(&fam).holds,
                check_family_sc(&fam).holds && check_srm(&fam).holds
            );
        }
    }

    #[test]
    fn duplicate_members_do_not_widen_witness() {
        let fam = family(&[("p", &[1, -1]), ("p2", &[1, -1])]);
        let Some(CrossingWitness::Mixture { weights, .. }) = check_mixture_sc(&fam).witness else {
            panic!("expected mixture witness");
        };
        assert_eq!(weights.0.iter().filter(|(_, w)| w.is_positive()).count(), 1);
    }
}
