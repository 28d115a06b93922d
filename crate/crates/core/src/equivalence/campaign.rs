//! The randomized self-check: random instances on mixed posets plus
//! constructive chain instances, every route cross-checked on each.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gen::{gen_positive_instance, gen_random_instance, InstanceGenParams};
use super::{check_proposition_with, differences_family_at, Fault, TheoremViolation};
use crate::crossing::{check_family_sc, check_srm};
use crate::instance::param_to_json;
use crate::rational::Rational;
use crate::risk_order::check_lra_transform;
use crate::table::ParamUtilityTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    /// Number of random instances; half as many constructive ones (rounded
    /// up) are added.
    pub instances: usize,
    pub seed: u64,
    pub fault: Fault,
    /// Worker threads; `None` uses rayon's default.
    pub threads: Option<usize>,
}

impl CampaignConfig {
    pub fn new(instances: usize, seed: u64) -> Self {
        CampaignConfig {
            instances,
            seed,
            fault: Fault::None,
            threads: None,
        }
    }

    pub fn constructive_count(&self) -> usize {
        self.instances.div_ceil(2)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CampaignSummary {
    pub random_instances: usize,
    pub constructive_instances: usize,
    /// Instances on which every slice pair is ordered (side (a) holds).
    pub holding: usize,
    /// Instances where the mixture route and the ordinal/compression route
    /// returned the same verdict.
    pub proof_routes_matched: usize,
    /// Sides (a) and (b), or the proof routes, disagreed.
    pub disagreements: usize,
    /// Some other cross-check failed: transform route, aggregation theorem on
    /// a difference family, witness re-verification, or a constructive
    /// instance that does not hold.
    pub oracle_mismatches: usize,
    /// Up to a handful of failures, lowest instance index first.
    #[serde(skip)]
    pub failures: Vec<(String, TheoremViolation)>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0 && self.oracle_mismatches == 0
    }

    pub fn total(&self) -> usize {
        self.random_instances + self.constructive_instances
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Random,
    Constructive,
}

struct Outcome {
    holds: bool,
    proof_routes_matched: bool,
    disagreement: Option<TheoremViolation>,
    mismatch: Option<TheoremViolation>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator parameters for instance `index` of a campaign with `seed`.
fn instance_params(seed: u64, kind: Kind, index: usize) -> InstanceGenParams {
    let tag = match kind {
        Kind::Random => 0x5241_4e44u64,
        Kind::Constructive => 0x434f_4e53u64,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(tag ^ index as u64)));
    let density = match kind {
        Kind::Random => Rational::new(rng.gen_range(0..=4), 4).expect("nonzero"),
        Kind::Constructive => Rational::one(),
    };
    let n_params = match kind {
        Kind::Random => rng.gen_range(2..=5),
        Kind::Constructive => rng.gen_range(1..=5),
    };
    InstanceGenParams {
        seed: rng.gen(),
        n_alternatives: rng.gen_range(2..=6),
        n_params,
        relation_density: density,
        max_abs_numerator: [1, 2, 3, 5, 10, 20][rng.gen_range(0..6)],
        max_denominator: [1, 2, 4, 6][rng.gen_range(0..4)],
    }
}

pub fn campaign_instance(seed: u64, constructive: bool, index: usize) -> ParamUtilityTable {
    let kind = if constructive { Kind::Constructive } else { Kind::Random };
    let params = instance_params(seed, kind, index);
    match kind {
        Kind::Random => gen_random_instance(&params),
        Kind::Constructive => gen_positive_instance(&params),
    }
    .expect("campaign parameters are valid")
}

fn mismatch(table: &ParamUtilityTable, message: String) -> Option<TheoremViolation> {
    Some(TheoremViolation {
        message,
        instance: param_to_json(table),
    })
}

fn run_one(table: &ParamUtilityTable, kind: Kind, fault: Fault) -> Outcome {
    let report = match check_proposition_with(table, fault) {
        Ok(r) => r,
        Err(v) => {
            return Outcome {
                holds: false,
                proof_routes_matched: false,
                disagreement: Some(v),
                mismatch: None,
            }
        }
    };
    let proof_routes_matched = report.mixture_holds() == report.side_a_pratt.holds;
    let holds = report.side_a.holds;

    let check = || -> Option<TheoremViolation> {
        if kind == Kind::Constructive && !holds {
            return mismatch(table, "constructive instance does not hold".into());
        }
        let params = table.params();
        for (pv, (t, tp)) in report.side_a.pairs.iter().zip(params.strict_pairs()) {
            let (u, v) = (table.slice(t), table.slice(tp));
            let transform = check_lra_transform(&u, &v).expect("shared alternatives");
            if transform.holds != pv.verdict.holds {
                return mismatch(
                    table,
                    format!("transform route disagrees on {} <= {}", pv.theta, pv.theta_prime),
                );
            }
            let pratt = &report.side_a_pratt.pairs.iter().find(|p| p.theta == pv.theta && p.theta_prime == pv.theta_prime);
            let witnesses = [pv.verdict.witness.as_ref(), transform.witness.as_ref(), pratt.and_then(|p| p.verdict.witness.as_ref())];
            if witnesses.into_iter().flatten().any(|w| !w.verify(&u, &v)) {
                return mismatch(
                    table,
                    format!("witness does not re-verify on {} <= {}", pv.theta, pv.theta_prime),
                );
            }
        }
        for (y, (label, mix)) in report.mixture.iter().enumerate() {
            let fam = differences_family_at(table, y);
            let members_ok = check_family_sc(&fam).holds && check_srm(&fam).holds;
            if mix.holds != members_ok {
                return mismatch(table, format!("aggregation theorem fails for y = {label}"));
            }
            if let Some(w) = &mix.witness {
                if !w.verify(&fam) {
                    return mismatch(table, format!("mixture witness does not re-verify for y = {label}"));
                }
            }
        }
        None
    };

    Outcome {
        holds,
        proof_routes_matched,
        disagreement: None,
        mismatch: check(),
    }
}

const KEPT_FAILURES: usize = 5;

/// Runs the campaign. Results are independent of the thread count.
pub fn run_campaign(config: &CampaignConfig) -> CampaignSummary {
    let jobs: Vec<(Kind, usize)> = (0..config.instances)
        .map(|i| (Kind::Random, i))
        .chain((0..config.constructive_count()).map(|i| (Kind::Constructive, i)))
        .collect();
    let work = || -> Vec<Outcome> {
        jobs.par_iter()
            .map(|&(kind, i)| {
                let table = campaign_instance(config.seed, kind == Kind::Constructive, i);
                run_one(&table, kind, config.fault)
            })
            .collect()
    };
    let outcomes = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    };

    let mut summary = CampaignSummary {
        random_instances: config.instances,
        constructive_instances: config.constructive_count(),
        ..Default::default()
    };
    for (&(kind, i), out) in jobs.iter().zip(outcomes) {
        let name = match kind {
            Kind::Random => format!("random-{i}"),
            Kind::Constructive => format!("constructive-{i}"),
        };
        summary.holding += out.holds as usize;
        summary.proof_routes_matched += out.proof_routes_matched as usize;
        if let Some(v) = out.disagreement {
            summary.disagreements += 1;
            if summary.failures.len() < KEPT_FAILURES {
                summary.failures.push((name.clone(), v));
            }
        }
        if let Some(v) = out.mismatch {
            summary.oracle_mismatches += 1;
            if summary.failures.len() < KEPT_FAILURES {
                summary.failures.push((name, v));
            }
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaign_passes() {
        let s = run_campaign(&CampaignConfig::new(40, 7));
        assert!(s.passed(), "{:?}", s.failures);
        assert_eq!(s.total(), 60);
        assert_eq!(s.proof_routes_matched, 60);
        assert!(s.holding >= 20);
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let mut c = CampaignConfig::new(10, 3);
        c.threads = Some(1);
        let a = run_campaign(&c);
        c.threads = Some(4);
        let b = run_campaign(&c);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn injected_fault_is_detected() {
        let mut c = CampaignConfig::new(20, 11);
        c.fault = Fault::FlipSrmInequality;
        let s = run_campaign(&c);
        assert!(s.disagreements > 0);
        assert!(!s.failures.is_empty());
    }
}
