use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use super::{LraWitness, RiskOrderVerdict, Route};
use crate::rational::Rational;
use crate::table::{DomainMismatch, UtilityTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    DomainMismatch(#[from] DomainMismatch),
    #[error("v({x}) = v({y}) but u({x}) != u({y}): no function of v can produce u")]
    NotWellDefined { x: String, y: String },
    #[error("v({x}) < v({y}) but u({x}) >= u({y}): transform cannot be strictly increasing")]
    NotIncreasing { x: String, y: String },
    #[error("chord slopes decrease at knot {knot} (t = {t}): {left} then {right}")]
    NotConvex {
        knot: usize,
        t: Rational,
        left: Rational,
        right: Rational,
    },
    #[error("invalid knots: {0}")]
    InvalidKnots(String),
    #[error("{0} lies outside the transform's domain")]
    OutOfDomain(Rational),
}

/// An increasing convex piecewise-linear function on `[t₀, tₖ]`, given by its
/// knots. Between knots it interpolates linearly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLTransform {
    knots: Vec<(Rational, Rational)>,
}

impl PLTransform {
    /// Validates strictly increasing abscissae and values and nondecreasing
    /// chord slopes.
    pub fn new(knots: Vec<(Rational, Rational)>) -> Result<Self, TransformError> {
        if knots.is_empty() {
            return Err(TransformError::InvalidKnots("no knots".into()));
        }
        for (k, w) in knots.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(TransformError::InvalidKnots(format!(
                    "abscissae not strictly increasing at knot {}",
                    k + 1
                )));
            }
            if w[0].1 >= w[1].1 {
                return Err(TransformError::InvalidKnots(format!(
                    "values not strictly increasing at knot {}",
                    k + 1
                )));
            }
        }
        let t = PLTransform { knots };
        if let Some((knot, left, right)) = t.first_concave_kink() {
            return Err(TransformError::NotConvex {
                knot,
                t: t.knots[knot].0.clone(),
                left,
                right,
            });
        }
        Ok(t)
    }

    pub fn knots(&self) -> &[(Rational, Rational)] {
        &self.knots
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.knots[0].0, &self.knots[self.knots.len() - 1].0)
    }

    /// Chord slope of each segment, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        self.knots
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    fn first_concave_kink(&self) -> Option<(usize, Rational, Rational)> {
        let slopes = self.slopes();
        slopes
            .windows(2)
            .position(|s| s[0] > s[1])
            .map(|k| (k + 1, slopes[k].clone(), slopes[k + 1].clone()))
    }

    /// `f ∘ self`, for `f` defined on an interval containing this
    /// transform's range. Knots of both are kept.
    pub fn then(&self, f: &PLTransform) -> Result<PLTransform, TransformError> {
        let mut ts: Vec<Rational> = self.knots.iter().map(|(t, _)| t.clone()).collect();
        // pull f's knots back through self
        for (s, _) in &f.knots {
            if let Some(t) = self.preimage(s) {
                ts.push(t);
            }
        }
        ts.sort();
        ts.dedup();
        let knots = ts
            .into_iter()
            .map(|t| {
                let mid = apply_transform(self, &t)?;
                Ok((t, apply_transform(f, &mid)?))
            })
            .collect::<Result<Vec<_>, TransformError>>()?;
        PLTransform::new(knots)
    }

    fn preimage(&self, s: &Rational) -> Option<Rational> {
        let k = self.knots.len();
        if s < &self.knots[0].1 || s > &self.knots[k - 1].1 {
            return None;
        }
        match self.knots.binary_search_by(|(_, val)| val.cmp(s)) {
            Ok(i) => Some(self.knots[i].0.clone()),
            Err(i) => {
                let (t0, v0) = &self.knots[i - 1];
                let (t1, v1) = &self.knots[i];
                Some(t0 + (s - v0) * (t1 - t0) / (v1 - v0))
            }
        }
    }
}

/// Exact linear interpolation between the bracketing knots.
pub fn apply_transform(phi: &PLTransform, t: &Rational) -> Result<Rational, TransformError> {
    let (lo, hi) = phi.domain();
    if t < lo || t > hi {
        return Err(TransformError::OutOfDomain(t.clone()));
    }
    match phi.knots.binary_search_by(|(k, _)| k.cmp(t)) {
        Ok(i) => Ok(phi.knots[i].1.clone()),
        Err(i) => {
            let (t0, v0) = &phi.knots[i - 1];
            let (t1, v1) = &phi.knots[i];
            Ok(v0 + (t - t0) * (v1 - v0) / (t1 - t0))
        }
    }
}

/// Constructs `φ` with `u = φ ∘ v`, increasing and convex on the convex hull
/// of `v`'s values and strictly increasing on those values. Knots are the
/// distinct values of `v`, each paired with the common `u` value there.
///
/// Pairs are scanned `x` outer, `y` inner; a failed well-definedness or
/// monotonicity check is reported before convexity is examined.
pub fn build_transform(u: &UtilityTable, v: &UtilityTable) -> Result<PLTransform, TransformError> {
    u.domain().ensure_same(v.domain())?;
    let n = u.len();
    let label = |i: usize| u.domain().label(i).to_string();
    for x in 0..n {
        for y in 0..n {
            match v.value(x).cmp(v.value(y)) {
                Ordering::Equal if u.value(x) != u.value(y) => {
                    return Err(TransformError::NotWellDefined { x: label(x), y: label(y) });
                }
                Ordering::Less if u.value(x) >= u.value(y) => {
                    return Err(TransformError::NotIncreasing { x: label(x), y: label(y) });
                }
                _ => {}
            }
        }
    }
    let mut knots: Vec<(Rational, Rational)> = (0..n)
        .map(|x| (v.value(x).clone(), u.value(x).clone()))
        .collect();
    knots.sort();
    knots.dedup();
    PLTransform::new(knots)
}

/// The transform construction as a yes/no route. A failure is translated
/// into the equivalent ordinal or compression witness.
pub fn check_lra_transform(
    u: &UtilityTable,
    v: &UtilityTable,
) -> Result<RiskOrderVerdict, DomainMismatch> {
    let err = match build_transform(u, v) {
        Ok(_) => return Ok(RiskOrderVerdict::holds(Route::Transform)),
        Err(e) => e,
    };
    let first_with_v = |t: &Rational| -> String {
        let i = (0..v.len()).find(|&i| v.value(i) == t).expect("knot comes from v");
        u.domain().label(i).to_string()
    };
    let witness = match err {
        TransformError::DomainMismatch(e) => return Err(e),
        TransformError::NotWellDefined { x, y } => {
            // whichever of the two has the larger u is strictly preferred under u only
            if u.get(&x) > u.get(&y) {
                LraWitness::Ordinal { x, y }
            } else {
                LraWitness::Ordinal { x: y, y: x }
            }
        }
        TransformError::NotIncreasing { x, y } => LraWitness::Ordinal { x, y },
        TransformError::NotConvex { knot, .. } => {
            let mut ts: Vec<&Rational> = v.values().iter().collect();
            ts.sort();
            ts.dedup();
            LraWitness::Compression {
                x: first_with_v(ts[knot - 1]),
                y: first_with_v(ts[knot]),
                z: first_with_v(ts[knot + 1]),
            }
        }
        TransformError::InvalidKnots(_) | TransformError::OutOfDomain(_) => {
            unreachable!("knots built from validated tables")
        }
    };
    Ok(RiskOrderVerdict::fails(Route::Transform, witness))
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

    fn knots(pts: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        pts.iter().map(|&(t, y)| (t.into(), y.into())).collect()
    }

    #[test]
    fn convex_knots_from_reference_pair() {
        let (u, v) = pair(&[0, 1, 4], &[0, 1, 2]);
        let phi = build_transform(&u, &v).unwrap();
        assert_eq!(phi.knots(), knots(&[(0, 0), (1, 1), (2, 4)]).as_slice());
        assert_eq!(phi.slopes(), vec![Rational::from(1), Rational::from(3)]);
        for x in 0..3 {
            assert_eq!(&apply_transform(&phi, v.value(x)).unwrap(), u.value(x));
        }
    }

    #[test]
    fn concave_knots_rejected_at_middle() {
        let (u, v) = pair(&[0, 1, 2], &[0, 1, 4]);
        match build_transform(&u, &v) {
            Err(TransformError::NotConvex { knot, left, right, .. }) => {
                assert_eq!(knot, 1);
                assert_eq!(left, Rational::from(1));
                assert_eq!(right, ratio(1, 3));
            }
            other => panic!("expected NotConvex, got {other:?}"),
        }
        let verdict = check_lra_transform(&u, &v).unwrap();
        let w = verdict.witness.unwrap();
        assert_eq!(w, LraWitness::Compression { x: "a".into(), y: "b".into(), z: "c".into() });
        assert!(w.verify(&u, &v));
    }

    #[test]
    fn identity_transform() {
        let (u, _) = pair(&[3, -2, 8], &[0, 0, 0]);
        let phi = build_transform(&u, &u).unwrap();
        assert!(phi.slopes().iter().all(|s| *s == Rational::one()));
    }

    #[test]
    fn ties_collapse_only_when_u_agrees() {
        let (u, v) = pair(&[1, 1, 5], &[2, 2, 3]);
        let phi = build_transform(&u, &v).unwrap();
        assert_eq!(phi.knots().len(), 2);

        let (u, v) = pair(&[1, 2, 5], &[2, 2, 3]);
        assert_eq!(
            build_transform(&u, &v),
            Err(TransformError::NotWellDefined { x: "a".into(), y: "b".into() })
        );
        let w = check_lra_transform(&u, &v).unwrap().witness.unwrap();
        assert_eq!(w, LraWitness::Ordinal { x: "b".into(), y: "a".into() });
        assert!(w.verify(&u, &v));
    }

    #[test]
    fn decreasing_pair_rejected() {
        let (u, v) = pair(&[0, 1], &[1, 0]);
        assert_eq!(
            build_transform(&u, &v),
            Err(TransformError::NotIncreasing { x: "b".into(), y: "a".into() })
        );
        assert!(check_lra_transform(&u, &v).unwrap().witness.unwrap().verify(&u, &v));
    }

    #[test]
    fn singleton_domain_is_single_knot() {
        let (u, v) = pair(&[7], &[3]);
        let phi = build_transform(&u, &v).unwrap();
        assert_eq!(phi.domain(), (&Rational::from(3), &Rational::from(3)));
        assert_eq!(apply_transform(&phi, &Rational::from(3)).unwrap(), Rational::from(7));
    }

    #[test]
    fn interpolation() {
        let phi = PLTransform::new(knots(&[(0, 0), (1, 1), (2, 4)])).unwrap();
        assert_eq!(apply_transform(&phi, &ratio(3, 2)).unwrap(), ratio(5, 2));
        assert_eq!(apply_transform(&phi, &Rational::from(1)).unwrap(), Rational::from(1));
        let phi = PLTransform::new(knots(&[(0, 0), (2, 4)])).unwrap();
        assert_eq!(
            apply_transform(&phi, &Rational::from(-1)),
            Err(TransformError::OutOfDomain(Rational::from(-1)))
        );
    }

    #[test]
    fn knot_validation() {
        assert!(PLTransform::new(vec![]).is_err());
        assert!(PLTransform::new(knots(&[(0, 0), (0, 1)])).is_err());
        assert!(PLTransform::new(knots(&[(0, 1), (1, 1)])).is_err());
        assert!(matches!(
            PLTransform::new(knots(&[(0, 0), (1, 2), (2, 3)])),
            Err(TransformError::NotConvex { knot: 1, .. })
        ));
    }

    #[test]
    fn composition_is_pointwise() {
        let g = PLTransform::new(knots(&[(0, 0), (1, 1), (2, 4)])).unwrap();
        let f = PLTransform::new(knots(&[(0, 1), (3, 2), (4, 6)])).unwrap();
        let fg = g.then(&f).unwrap();
        for k in 0..=8 {
            let t = ratio(k, 4);
            let direct = apply_transform(&f, &apply_transform(&g, &t).unwrap()).unwrap();
            assert_eq!(apply_transform(&fg, &t).unwrap(), direct);
        }
    }
}
