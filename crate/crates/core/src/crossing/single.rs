use super::{CrossingError, CrossingRoute, CrossingVerdict, CrossingWitness, FunctionFamily};
use crate::risk_order::Part;
use crate::table::ParamFunction;

fn first_crossing(f: &ParamFunction) -> Option<(usize, usize, Part)> {
    f.params().strict_pairs().find_map(|(t, tp)| {
        let (a, b) = (f.at(t), f.at(tp));
        if !a.is_negative() && b.is_negative() {
            Some((t, tp, Part::Weak))
        } else if a.is_positive() && !b.is_positive() {
            Some((t, tp, Part::Strict))
        } else {
            None
        }
    })
}

/// Checks both sign implications on every strict comparable pair. When both
/// fail at the same pair the weak part is reported.
pub fn check_single_crossing(f: &ParamFunction) -> CrossingVerdict {
    match first_crossing(f) {
        None => CrossingVerdict::holds(CrossingRoute::SingleCrossing),
        Some((t, tp, part)) => CrossingVerdict::fails(
            CrossingRoute::SingleCrossing,
            CrossingWitness::SingleCrossing {
                member: None,
                theta: f.params().label(t).to_string(),
                theta_prime: f.params().label(tp).to_string(),
                part,
            },
        ),
    }
}

/// Every member single-crossing; the first failing member is reported.
pub fn check_family_sc(family: &FunctionFamily) -> CrossingVerdict {
    for (name, f) in family.members() {
        if let Some((t, tp, part)) = first_crossing(f) {
            return CrossingVerdict::fails(
                CrossingRoute::SingleCrossing,
                CrossingWitness::SingleCrossing {
                    member: Some(name.clone()),
                    theta: family.params().label(t).to_string(),
                    theta_prime: family.params().label(tp).to_string(),
                    part,
                },
            );
        }
    }
    CrossingVerdict::holds(CrossingRoute::SingleCrossing)
}

/// Signed-ratio monotonicity in product form, over all ordered member pairs
/// `(φ, ψ)` (member pairs outer, comparable pairs inner).
pub fn check_srm(family: &FunctionFamily) -> CrossingVerdict {
    let params = family.params();
    let pairs: Vec<(usize, usize)> = params.strict_pairs().collect();
    for (phi_name, phi) in family.members() {
        for (psi_name, psi) in family.members() {
            for &(t, tp) in &pairs {
                if phi.at(t).is_negative()
                    && psi.at(t).is_positive()
                    && -phi.at(t) * psi.at(tp) < -phi.at(tp) * psi.at(t)
                {
                    return CrossingVerdict::fails(
                        CrossingRoute::Srm,
                        CrossingWitness::Srm {
                            phi: phi_name.clone(),
                            psi: psi_name.clone(),
                            theta: params.label(t).to_string(),
                            theta_prime: params.label(tp).to_string(),
                        },
                    );
                }
            }
        }
    }
    CrossingVerdict::holds(CrossingRoute::Srm)
}

/// Signed-ratio monotonicity in ratio form, `−φ(θ)/ψ(θ) ≥ −φ(θ')/ψ(θ')`.
///
/// Only defined when every member is single-crossing, which makes `ψ(θ') > 0`
/// whenever `ψ(θ) > 0`.
pub fn srm_ratio_form(family: &FunctionFamily) -> Result<CrossingVerdict, CrossingError> {
    if let Some(CrossingWitness::SingleCrossing { member: Some(m), .. }) =
        check_family_sc(family).witness
    {
        return Err(CrossingError::NotSingleCrossing(m));
    }
    let params = family.params();
    let pairs: Vec<(usize, usize)> = params.strict_pairs().collect();
    for (phi_name, phi) in family.members() {
        for (psi_name, psi) in family.members() {
            for &(t, tp) in &pairs {
                if !(phi.at(t).is_negative() && psi.at(t).is_positive()) {
                    continue;
                }
                let before = -phi.at(t) / psi.at(t);
                let after = -phi.at(tp) / psi.at(tp);
                if before < after {
                    return Ok(CrossingVerdict::fails(
                        CrossingRoute::SrmRatio,
                        CrossingWitness::Srm {
                            phi: phi_name.clone(),
                            psi: psi_name.clone(),
                            theta: params.label(t).to_string(),
                            theta_prime: params.label(tp).to_string(),
                        },
                    ));
                }
            }
        }
    }
    Ok(CrossingVerdict::holds(CrossingRoute::SrmRatio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing::singleton_family;
    use crate::poset::Poset;
    use crate::rational::Rational;

    fn chain() -> Poset {
        Poset::chain(&["a", "b"]).unwrap()
    }

    fn func(vals: &[i64]) -> ParamFunction {
        ParamFunction::new(chain(), vals.iter().map(|&v| Rational::from(v)).collect()).unwrap()
    }

    fn family(rows: &[(&str, &[i64])]) -> FunctionFamily {
        let rows: Vec<(&str, Vec<Rational>)> = rows
            .iter()
            .map(|(n, v)| (*n, v.iter().map(|&x| Rational::from(x)).collect()))
            .collect();
        FunctionFamily::from_rows(chain(), &rows).unwrap()
    }

    fn sc_witness(part: Part) -> Option<CrossingWitness> {
        Some(CrossingWitness::SingleCrossing {
            member: None,
            theta: "a".into(),
            theta_prime: "b".into(),
            part,
        })
    }

    #[test]
    fn upward_flip_is_single_crossing() {
        assert!(check_single_crossing(&func(&[-1, 1])).holds);
    }

    #[test]
    fn downward_flip_fails_weak_first() {
        let f = func(&[1, -1]);
        let v = check_single_crossing(&f);
        assert_eq!(v.witness, sc_witness(Part::Weak));
        // the strict implication fails at the same pair as well
        let strict = CrossingWitness::SingleCrossing {
            member: None,
            theta: "a".into(),
            theta_prime: "b".into(),
            part: Part::Strict,
        };
        assert!(strict.verify(&singleton_family(&f)));
    }

    #[test]
    fn zero_counts_as_nonnegative() {
        let f = func(&[0, -1]);
        let v = check_single_crossing(&f);
        assert_eq!(v.witness, sc_witness(Part::Weak));
        assert!(v.witness.unwrap().verify(&singleton_family(&f)));
        // positive to zero breaks only the strict half
        assert_eq!(check_single_crossing(&func(&[2, 0])).witness, sc_witness(Part::Strict));
    }

    #[test]
    fn incomparable_elements_are_unconstrained() {
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let f = ParamFunction::new(anti, vec![1.into(), (-1).into()]).unwrap();
        assert!(check_single_crossing(&f).holds);
    }

    #[test]
    fn family_sc() {
        assert!(check_family_sc(&family(&[("phi", &[-1, -1]), ("psi", &[1, 2])])).holds);
        let bad = family(&[("ok", &[-1, 1]), ("bad", &[1, -1])]);
        let v = check_family_sc(&bad);
        assert!(matches!(
            v.witness,
            Some(CrossingWitness::SingleCrossing { member: Some(ref m), .. }) if m == "bad"
        ));
        let empty = FunctionFamily::new(chain(), vec![]).unwrap();
        assert!(check_family_sc(&empty).holds);
    }

    #[test]
    fn srm_product_form() {
        let good = family(&[("phi", &[-1, -1]), ("psi", &[1, 2])]);
        assert!(check_srm(&good).holds);

        let bad = family(&[("phi", &[-1, -3]), ("psi", &[1, 1])]);
        let v = check_srm(&bad);
        assert_eq!(
            v.witness,
            Some(CrossingWitness::Srm {
                phi: "phi".into(),
                psi: "psi".into(),
                theta: "a".into(),
                theta_prime: "b".into(),
            })
        );
        assert!(v.witness.unwrap().verify(&bad));

        assert!(check_srm(&family(&[("only", &[-5, 3])])).holds);
    }

    #[test]
    fn srm_is_checked_in_both_orders() {
        // (psi, phi) never meets the hypothesis; (phi, psi) does and fails
        let fam = family(&[("psi", &[1, 1]), ("phi", &[-1, -3])]);
        let v = check_srm(&fam);
        assert!(matches!(
            v.witness,
            Some(CrossingWitness::Srm { ref phi, ref psi, .. }) if phi == "phi" && psi == "psi"
        ));
    }

    #[test]
    fn ratio_form() {
        let good = family(&[("phi", &[-1, -1]), ("psi", &[1, 2])]);
        assert!(srm_ratio_form(&good).unwrap().holds);
        let bad = family(&[("phi", &[-1, -3]), ("psi", &[1, 1])]);
        assert!(!srm_ratio_form(&bad).unwrap().holds);
        let not_sc = family(&[("phi", &[-1, -3]), ("down", &[1, -1])]);
        assert_eq!(
            srm_ratio_form(&not_sc),
            Err(CrossingError::NotSingleCrossing("down".into()))
        );
    }
}
