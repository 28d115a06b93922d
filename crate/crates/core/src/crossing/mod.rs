//! Single-crossing, signed-ratio monotonicity and mixture aggregation for
//! families of functions on a finite poset.
//!
//! A function `φ` is single-crossing when, for every `θ ≲ θ'`, `φ(θ) ≥ 0`
//! implies `φ(θ') ≥ 0` and `φ(θ) > 0` implies `φ(θ') > 0`. A family has
//! signed-ratio monotonicity when `φ(θ) < 0 < ψ(θ)` implies
//! `−φ(θ)ψ(θ') ≥ −φ(θ')ψ(θ)` for every ordered member pair. Every mixture of a
//! family is single-crossing exactly when both properties hold, and
//! [`check_mixture_sc`] decides the mixture side directly so the two can be
//! compared.
//!
//! Only strict comparable pairs `θ ≲ θ'`, `θ ≠ θ'`, are examined; for `θ = θ'`
//! every condition holds trivially.

mod mixture;
mod single;

pub use mixture::{check_mixture_sc, check_mixture_sc_grid, check_mixture_sc_on_pair};
pub use single::{check_family_sc, check_single_crossing, check_srm, srm_ratio_form};

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poset::Poset;
use crate::rational::Rational;
use crate::risk_order::Part;
use crate::table::ParamFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingError {
    #[error("member {0:?} is defined on a different poset")]
    ParamsMismatch(String),
    #[error("duplicate member name {0:?}")]
    DuplicateMember(String),
    #[error("member {0:?} is not single-crossing; the ratio form is undefined")]
    NotSingleCrossing(String),
}

/// An ordered, named family of functions on one poset.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionFamily {
    params: Poset,
    members: Vec<(String, ParamFunction)>,
}

impl FunctionFamily {
    pub fn new(params: Poset, members: Vec<(String, ParamFunction)>) -> Result<Self, CrossingError> {
        for (k, (name, f)) in members.iter().enumerate() {
            if f.params() != &params {
                return Err(CrossingError::ParamsMismatch(name.clone()));
            }
            if members[..k].iter().any(|(other, _)| other == name) {
                return Err(CrossingError::DuplicateMember(name.clone()));
            }
        }
        Ok(FunctionFamily { params, members })
    }

    /// Builds a family from raw value rows, one per member.
    pub fn from_rows<S: AsRef<str>>(
        params: Poset,
        rows: &[(S, Vec<Rational>)],
    ) -> Result<Self, CrossingError> {
        let members = rows
            .iter()
            .map(|(name, values)| {
                ParamFunction::new(params.clone(), values.clone())
                    .map(|f| (name.as_ref().to_string(), f))
                    .map_err(|_| CrossingError::ParamsMismatch(name.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        FunctionFamily::new(params, members)
    }

    pub fn params(&self) -> &Poset {
        &self.params
    }

    pub fn members(&self) -> &[(String, ParamFunction)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.members[i].0
    }

    pub fn member(&self, name: &str) -> Option<&ParamFunction> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Values of every member at `θ`, in member order.
    pub fn column(&self, theta: usize) -> Vec<Rational> {
        self.members.iter().map(|(_, f)| f.at(theta).clone()).collect()
    }

    /// The same family with the members for which `keep` is false removed.
    pub fn filter(&self, mut keep: impl FnMut(&str, &ParamFunction) -> bool) -> FunctionFamily {
        FunctionFamily {
            params: self.params.clone(),
            members: self
                .members
                .iter()
                .filter(|(n, f)| keep(n, f))
                .cloned()
                .collect(),
        }
    }

    /// Moves every member onto `params`, which must have the same elements.
    pub fn with_params(&self, params: Poset) -> FunctionFamily {
        assert_eq!(params.elements(), self.params.elements());
        FunctionFamily {
            members: self
                .members
                .iter()
                .map(|(n, f)| (n.clone(), f.with_params(params.clone()).expect("same length")))
                .collect(),
            params,
        }
    }

    pub fn map_member(&self, i: usize, f: impl FnOnce(&ParamFunction) -> ParamFunction) -> FunctionFamily {
        let mut out = self.clone();
        out.members[i].1 = f(&self.members[i].1);
        out
    }
}

impl fmt::Debug for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionFamily")
            .field("params", &self.params)
            .field("members", &self.members)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingRoute {
    SingleCrossing,
    Srm,
    SrmRatio,
    Mixture,
    MixtureGrid,
}

impl fmt::Display for CrossingRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingRoute::SingleCrossing => "single_crossing",
            CrossingRoute::Srm => "srm",
            CrossingRoute::SrmRatio => "srm_ratio",
            CrossingRoute::Mixture => "mixture",
            CrossingRoute::MixtureGrid => "mixture_grid",
        })
    }
}

/// Mixture weights over named members, serialised as an ordered map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberWeights(pub Vec<(String, Rational)>);

impl MemberWeights {
    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }
}

impl Serialize for MemberWeights {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (n, w) in &self.0 {
            map.serialize_entry(n, w)?;
        }
        map.end()
    }
}

impl fmt::Display for MemberWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for (n, w) in self.0.iter().filter(|(_, w)| w.is_positive()) {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{n}: {w}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingWitness {
    /// `member` (or the lone function, when `None`) crosses back at `θ ≲ θ'`.
    SingleCrossing {
        member: Option<String>,
        theta: String,
        theta_prime: String,
        part: Part,
    },
    /// `φ(θ) < 0 < ψ(θ)` and `−φ(θ)ψ(θ') < −φ(θ')ψ(θ)`.
    Srm {
        phi: String,
        psi: String,
        theta: String,
        theta_prime: String,
    },
    /// The mixture with these weights crosses back at `θ ≲ θ'`.
    Mixture {
        weights: MemberWeights,
        theta: String,
        theta_prime: String,
        part: Part,
    },
}

fn crossing_violated(at: &Rational, later: &Rational, part: Part) -> bool {
    match part {
        Part::Weak => !at.is_negative() && later.is_negative(),
        Part::Strict => at.is_positive() && !later.is_positive(),
    }
}

impl CrossingWitness {
    /// Re-evaluates the witness against the family. For a lone function,
    /// pass it as a one-member family.
    pub fn verify(&self, family: &FunctionFamily) -> bool {
        let params = family.params();
        let pair = |a: &str, b: &str| -> Option<(usize, usize)> {
            let (i, j) = (params.index_of(a)?, params.index_of(b)?);
            (i != j && params.leq(i, j)).then_some((i, j))
        };
        match self {
            CrossingWitness::SingleCrossing { member, theta, theta_prime, part } => {
                let Some((t, tp)) = pair(theta, theta_prime) else {
                    return false;
                };
                let f = match member {
                    Some(m) => family.member(m),
                    None if family.len() == 1 => Some(&family.members()[0].1),
                    None => None,
                };
                f.is_some_and(|f| crossing_violated(f.at(t), f.at(tp), *part))
            }
            CrossingWitness::Srm { phi, psi, theta, theta_prime } => {
                let Some((t, tp)) = pair(theta, theta_prime) else {
                    return false;
                };
                let (Some(f), Some(g)) = (family.member(phi), family.member(psi)) else {
                    return false;
                };
                f.at(t).is_negative()
                    && g.at(t).is_positive()
                    && -f.at(t) * g.at(tp) < -f.at(tp) * g.at(t)
            }
            CrossingWitness::Mixture { weights, theta, theta_prime, part } => {
                let Some((t, tp)) = pair(theta, theta_prime) else {
                    return false;
                };
                if weights.0.iter().any(|(_, w)| w.is_negative())
                    || weights.0.iter().map(|(_, w)| w).sum::<Rational>() != Rational::one()
                {
                    return false;
                }
                let mut s = Rational::zero();
                let mut sp = Rational::zero();
                for (name, w) in &weights.0 {
                    let Some(f) = family.member(name) else {
                        return false;
                    };
                    s = s + w * f.at(t);
                    sp = sp + w * f.at(tp);
                }
                crossing_violated(&s, &sp, *part)
            }
        }
    }

    pub fn explain(&self, family: &FunctionFamily) -> String {
        let params = family.params();
        let at = |name: &str, theta: &str| -> String {
            match (family.member(name), params.index_of(theta)) {
                (Some(f), Some(t)) => f.at(t).to_string(),
                _ => "?".into(),
            }
        };
        match self {
            CrossingWitness::SingleCrossing { member, theta, theta_prime, part } => {
                let name = member.clone().unwrap_or_else(|| family.name(0).to_string());
                let (a, b) = (at(&name, theta), at(&name, theta_prime));
                match part {
                    Part::Weak => format!(
                        "{theta} <= {theta_prime}: {name}({theta}) = {a} >= 0 but {name}({theta_prime}) = {b} < 0"
                    ),
                    Part::Strict => format!(
                        "{theta} <= {theta_prime}: {name}({theta}) = {a} > 0 but {name}({theta_prime}) = {b} <= 0"
                    ),
                }
            }
            CrossingWitness::Srm { phi, psi, theta, theta_prime } => {
                let (ft, gt) = (at(phi, theta), at(psi, theta));
                let (ftp, gtp) = (at(phi, theta_prime), at(psi, theta_prime));
                format!(
                    "{theta} <= {theta_prime}: {phi}({theta}) = {ft} < 0 < {psi}({theta}) = {gt} but \
                     -{phi}({theta})*{psi}({theta_prime}) = -({ft})*({gtp}) < \
                     -{phi}({theta_prime})*{psi}({theta}) = -({ftp})*({gt})"
                )
            }
            CrossingWitness::Mixture { weights, theta, theta_prime, part } => {
                let eval = |th: &str| -> String {
                    let Some(t) = params.index_of(th) else {
                        return "?".into();
                    };
                    weights
                        .0
                        .iter()
                        .filter_map(|(n, w)| family.member(n).map(|f| w * f.at(t)))
                        .sum::<Rational>()
                        .to_string()
                };
                let (s, sp) = (eval(theta), eval(theta_prime));
                match part {
                    Part::Weak => format!(
                        "mixture {weights} at {theta} <= {theta_prime}: value {s} >= 0 but {sp} < 0"
                    ),
                    Part::Strict => format!(
                        "mixture {weights} at {theta} <= {theta_prime}: value {s} > 0 but {sp} <= 0"
                    ),
                }
            }
        }
    }
}

/// Outcome of a crossing check; `witness` is present exactly when `holds` is
/// false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingVerdict {
    pub holds: bool,
    pub route: CrossingRoute,
    pub witness: Option<CrossingWitness>,
}

impl CrossingVerdict {
    pub fn holds(route: CrossingRoute) -> Self {
        CrossingVerdict {
            holds: true,
            route,
            witness: None,
        }
    }

    pub fn fails(route: CrossingRoute, witness: CrossingWitness) -> Self {
        CrossingVerdict {
            holds: false,
            route,
            witness: Some(witness),
        }
    }
}

/// Wraps a lone function as a one-member family named `"f"`.
pub fn singleton_family(f: &ParamFunction) -> FunctionFamily {
    FunctionFamily {
        params: f.params().clone(),
        members: vec![("f".to_string(), f.clone())],
    }
}
