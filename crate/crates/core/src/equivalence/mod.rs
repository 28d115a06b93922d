//! For `U : X × Θ → ℚ` on a finite poset, compares two conditions that must
//! always agree:
//!
//! * (a) for every `θ ≲ θ'`, the slice `U(·, θ)` is less risk-averse than
//!   `U(·, θ')`;
//! * (b) every difference `U(y, ·) − U(x, ·)` is single-crossing, and for each
//!   `y` the family `{U(y, ·) − U(x, ·) : x ∈ X}` has signed-ratio
//!   monotonicity.
//!
//! [`check_proposition`] evaluates (a) by the lottery definition and by the
//! ordinal-plus-compression conditions, (b) member-wise, and additionally the
//! mixture route (every mixture of each difference family is
//! single-crossing). Any disagreement is reported as a [`TheoremViolation`],
//! which can only mean a bug.

mod campaign;
mod gen;

pub use campaign::{campaign_instance, run_campaign, CampaignConfig, CampaignSummary};
pub use gen::{
    gen_positive_instance, gen_random_instance, random_pl_transform, random_poset, random_rational,
    random_table, GenError, InstanceGenParams,
};

use serde::Serialize;
use thiserror::Error;

use crate::crossing::{
    check_family_sc, check_mixture_sc_on_pair, check_srm, CrossingRoute, CrossingVerdict,
    CrossingWitness, FunctionFamily,
};
use crate::instance::param_to_json;
use crate::rational::Rational;
use crate::risk_order::{check_lra_definition, check_lra_pratt, RiskOrderVerdict};
use crate::table::{ParamFunction, ParamUtilityTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown alternative {0:?}")]
pub struct UnknownAlternative(pub String);

/// The two sides disagreed. Carries the offending instance as JSON so it can
/// be replayed.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("theorem violation: {message}")]
pub struct TheoremViolation {
    pub message: String,
    pub instance: serde_json::Value,
}

/// Deliberate defects for testing that the campaign notices broken checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Side (b)'s signed-ratio check uses the reversed product inequality.
    FlipSrmInequality,
}

/// `{U(y, ·) − U(x, ·) : x ∈ X}`, one member per `x` named by its label. The
/// member for `x = y` is identically zero.
pub fn differences_family(
    table: &ParamUtilityTable,
    y: &str,
) -> Result<FunctionFamily, UnknownAlternative> {
    let yi = table
        .alternatives()
        .index_of(y)
        .ok_or_else(|| UnknownAlternative(y.to_string()))?;
    Ok(differences_family_at(table, yi))
}

fn differences_family_at(table: &ParamUtilityTable, y: usize) -> FunctionFamily {
    let params = table.params().clone();
    let rows = table.rows();
    let members = (0..rows.len())
        .map(|x| {
            let values = rows[y].iter().zip(&rows[x]).map(|(a, b)| a - b).collect();
            (
                table.alternatives().label(x).to_string(),
                ParamFunction::new(params.clone(), values).expect("row length matches poset"),
            )
        })
        .collect();
    FunctionFamily::new(params, members).expect("labels are distinct")
}

/// Every difference `U(y, ·) − U(x, ·)` over ordered pairs, named
/// `U(y)-U(x)`, `y` outer.
pub fn all_differences(table: &ParamUtilityTable) -> FunctionFamily {
    let alts = table.alternatives();
    let mut members = Vec::with_capacity(alts.len() * alts.len());
    for y in 0..alts.len() {
        for (x, (_, f)) in differences_family_at(table, y).members().iter().enumerate() {
            members.push((format!("U({})-U({})", alts.label(y), alts.label(x)), f.clone()));
        }
    }
    FunctionFamily::new(table.params().clone(), members).expect("names are distinct")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub theta: String,
    pub theta_prime: String,
    pub verdict: RiskOrderVerdict,
}

/// Side (a): one risk-order verdict per strict comparable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideA {
    pub holds: bool,
    pub pairs: Vec<PairVerdict>,
}

impl SideA {
    pub fn first_failure(&self) -> Option<&PairVerdict> {
        self.pairs.iter().find(|p| !p.verdict.holds)
    }
}

/// Side (b): single-crossing differences and per-`y` signed-ratio
/// monotonicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideB {
    pub holds: bool,
    pub sc: CrossingVerdict,
    pub srm: Vec<(String, CrossingVerdict)>,
}

fn side_a_with(
    table: &ParamUtilityTable,
    check: impl Fn(&crate::table::UtilityTable, &crate::table::UtilityTable) -> RiskOrderVerdict,
) -> SideA {
    let params = table.params();
    let pairs: Vec<PairVerdict> = params
        .strict_pairs()
        .map(|(t, tp)| PairVerdict {
            theta: params.label(t).to_string(),
            theta_prime: params.label(tp).to_string(),
            verdict: check(&table.slice(t), &table.slice(tp)),
        })
        .collect();
    SideA {
        holds: pairs.iter().all(|p| p.verdict.holds),
        pairs,
    }
}

/// Side (a) by the lottery definition.
pub fn check_prop_a(table: &ParamUtilityTable) -> SideA {
    side_a_with(table, |u, v| {
        check_lra_definition(u, v).expect("slices share alternatives")
    })
}

/// Side (a) by ordinal equivalence plus compression.
pub fn check_prop_a_pratt(table: &ParamUtilityTable) -> SideA {
    side_a_with(table, |u, v| check_lra_pratt(u, v).expect("slices share alternatives"))
}

pub fn check_prop_b(table: &ParamUtilityTable) -> SideB {
    check_prop_b_with(table, Fault::None)
}

fn check_prop_b_with(table: &ParamUtilityTable, fault: Fault) -> SideB {
    let sc = check_family_sc(&all_differences(table));
    let srm: Vec<(String, CrossingVerdict)> = (0..table.alternatives().len())
        .map(|y| {
            let fam = differences_family_at(table, y);
            let verdict = match fault {
                Fault::None => check_srm(&fam),
                Fault::FlipSrmInequality => flipped_srm(&fam),
            };
            (table.alternatives().label(y).to_string(), verdict)
        })
        .collect();
    SideB {
        holds: sc.holds && srm.iter().all(|(_, v)| v.holds),
        sc,
        srm,
    }
}

fn flipped_srm(family: &FunctionFamily) -> CrossingVerdict {
    let params = family.params();
    for (pn, phi) in family.members() {
        for (qn, psi) in family.members() {
            for (t, tp) in params.strict_pairs() {
                if phi.at(t).is_negative()
                    && psi.at(t).is_positive()
                    && -phi.at(t) * psi.at(tp) >= -phi.at(tp) * psi.at(t)
                {
                    return CrossingVerdict::fails(
                        CrossingRoute::Srm,
                        CrossingWitness::Srm {
                            phi: pn.clone(),
                            psi: qn.clone(),
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

/// The mixture route: for each `y` and each strict comparable pair, every
/// mixture of the difference family is single-crossing on that pair.
pub fn check_prop_mixture(table: &ParamUtilityTable) -> Vec<(String, CrossingVerdict)> {
    let params = table.params();
    let pairs: Vec<(usize, usize)> = params.strict_pairs().collect();
    (0..table.alternatives().len())
        .map(|y| {
            let fam = differences_family_at(table, y);
            let verdict = pairs
                .iter()
                .find_map(|&(t, tp)| check_mixture_sc_on_pair(&fam, t, tp))
                .map(|w| CrossingVerdict::fails(CrossingRoute::Mixture, w))
                .unwrap_or_else(|| CrossingVerdict::holds(CrossingRoute::Mixture));
            (table.alternatives().label(y).to_string(), verdict)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    /// Side (a) by the lottery definition.
    pub side_a: SideA,
    /// Side (a) by ordinal equivalence and compression.
    pub side_a_pratt: SideA,
    pub side_b: SideB,
    /// Mixture single-crossing of each difference family, keyed by `y`.
    pub mixture: Vec<(String, CrossingVerdict)>,
    pub agree: bool,
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.side_a.holds
    }

    pub fn mixture_holds(&self) -> bool {
        self.mixture.iter().all(|(_, v)| v.holds)
    }
}

pub fn check_proposition(table: &ParamUtilityTable) -> Result<PropositionReport, TheoremViolation> {
    check_proposition_with(table, Fault::None)
}

pub fn check_proposition_with(
    table: &ParamUtilityTable,
    fault: Fault,
) -> Result<PropositionReport, TheoremViolation> {
    let side_a = check_prop_a(table);
    let side_a_pratt = check_prop_a_pratt(table);
    let side_b = check_prop_b_with(table, fault);
    let mixture = check_prop_mixture(table);
    let mixture_holds = mixture.iter().all(|(_, v)| v.holds);

    let mut problems = Vec::new();
    if side_a.holds != side_b.holds {
        problems.push(format!(
            "side (a) {} but side (b) {}",
            holds_word(side_a.holds),
            holds_word(side_b.holds)
        ));
    }
    if side_a.holds != side_a_pratt.holds {
        problems.push(format!(
            "definition route {} but pratt route {}",
            holds_word(side_a.holds),
            holds_word(side_a_pratt.holds)
        ));
    }
    if side_a.holds != mixture_holds {
        problems.push(format!(
            "definition route {} but mixture route {}",
            holds_word(side_a.holds),
            holds_word(mixture_holds)
        ));
    }
    // pair-level agreement of the two risk-order routes
    for (d, p) in side_a.pairs.iter().zip(&side_a_pratt.pairs) {
        if d.verdict.holds != p.verdict.holds {
            problems.push(format!(
                "routes disagree on {} <= {}",
                d.theta, d.theta_prime
            ));
        }
    }
    if !problems.is_empty() {
        return Err(TheoremViolation {
            message: problems.join("; "),
            instance: param_to_json(table),
        });
    }
    Ok(PropositionReport {
        side_a,
        side_a_pratt,
        side_b,
        mixture,
        agree: true,
    })
}

fn holds_word(h: bool) -> &'static str {
    if h {
        "holds"
    } else {
        "fails"
    }
}

/// `U` built from a constant-in-`θ` table: every slice equal to `values`.
pub fn constant_table(
    alternatives: crate::table::Alternatives,
    params: crate::poset::Poset,
    values: &[Rational],
) -> ParamUtilityTable {
    let rows = values.iter().map(|v| vec![v.clone(); params.len()]).collect();
    ParamUtilityTable::new(alternatives, params, rows).expect("dimensions match")
}
