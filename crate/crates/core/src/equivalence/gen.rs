//! Seeded instance generators. Every generator is a pure function of its
//! parameters; no global RNG state is touched.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::poset::Poset;
use crate::rational::Rational;
use crate::risk_order::{apply_transform, PLTransform};
use crate::table::{Alternatives, ParamUtilityTable, UtilityTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParams(String),
    #[error("constructive instances need a chain poset (relation_density = 1), got density {0}")]
    UnsupportedPoset(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceGenParams {
    pub seed: u64,
    /// 2..=6
    pub n_alternatives: usize,
    /// 1..=5
    pub n_params: usize,
    /// Probability in `[0, 1]` that each forward pair of the hidden
    /// topological order is declared.
    pub relation_density: Rational,
    pub max_abs_numerator: u32,
    pub max_denominator: u32,
}

impl Default for InstanceGenParams {
    fn default() -> Self {
        InstanceGenParams {
            seed: 0,
            n_alternatives: 3,
            n_params: 3,
            relation_density: Rational::new(1, 2).unwrap(),
            max_abs_numerator: 10,
            max_denominator: 4,
        }
    }
}

impl InstanceGenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::InvalidParams(m.to_string()));
        if !(2..=6).contains(&self.n_alternatives) {
            return bad("n_alternatives must be in 2..=6");
        }
        if !(1..=5).contains(&self.n_params) {
            return bad("n_params must be in 1..=5");
        }
        if self.relation_density.is_negative() || self.relation_density > Rational::one() {
            return bad("relation_density must be in [0, 1]");
        }
        if self.max_abs_numerator == 0 || self.max_denominator == 0 {
            return bad("max_abs_numerator and max_denominator must be positive");
        }
        Ok(())
    }
}

fn alt_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn param_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

fn bernoulli(rng: &mut impl Rng, p: &Rational) -> bool {
    use num_traits::ToPrimitive;
    // exact for densities with denominators that fit u64
    let (Some(num), Some(den)) = (p.numer().to_u64(), p.denom().to_u64()) else {
        return rng.gen_bool(0.5);
    };
    rng.gen_range(0..den) < num
}

/// A rational with numerator in `[-max_num, max_num]` and denominator in
/// `[1, max_den]`.
pub fn random_rational(rng: &mut impl Rng, max_num: u32, max_den: u32) -> Rational {
    let n = rng.gen_range(-(max_num as i64)..=max_num as i64);
    let d = rng.gen_range(1..=max_den as i64);
    Rational::new(n, d).expect("positive denominator")
}

fn random_positive(rng: &mut impl Rng, max_num: u32, max_den: u32) -> Rational {
    let n = rng.gen_range(1..=max_num.max(1) as i64);
    let d = rng.gen_range(1..=max_den.max(1) as i64);
    Rational::new(n, d).expect("positive denominator")
}

/// Samples a random poset on `n` elements: a hidden random order, with each
/// forward pair declared independently with probability `density`.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: &Rational) -> Poset {
    let labels = param_labels(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut relation = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if bernoulli(rng, density) {
                relation.push((labels[order[i]].clone(), labels[order[j]].clone()));
            }
        }
    }
    Poset::new(&labels, &relation).expect("forward edges of an order are acyclic")
}

pub fn random_table(
    rng: &mut impl Rng,
    domain: &Alternatives,
    max_num: u32,
    max_den: u32,
) -> UtilityTable {
    let values = (0..domain.len())
        .map(|_| random_rational(rng, max_num, max_den))
        .collect();
    UtilityTable::new(domain.clone(), values).expect("length matches")
}

/// An increasing convex piecewise-linear map with knots at the sorted
/// distinct values of `ts`. Roughly a third of slope increments are zero, so
/// affine stretches (and hence boundary equalities) are common.
pub fn random_pl_transform(
    rng: &mut impl Rng,
    ts: &[Rational],
    max_num: u32,
    max_den: u32,
) -> PLTransform {
    let mut ts = ts.to_vec();
    ts.sort();
    ts.dedup();
    assert!(!ts.is_empty());
    let mut value = random_rational(rng, max_num, max_den);
    let mut slope = random_positive(rng, max_num, max_den);
    let mut knots = vec![(ts[0].clone(), value.clone())];
    for w in ts.windows(2) {
        value = &value + &slope * (&w[1] - &w[0]);
        knots.push((w[1].clone(), value.clone()));
        if rng.gen_range(0..3) > 0 {
            slope = &slope + random_positive(rng, max_num, max_den);
        }
    }
    PLTransform::new(knots).expect("increasing convex by construction")
}

/// A uniformly random `U` on a random poset.
pub fn gen_random_instance(params: &InstanceGenParams) -> Result<ParamUtilityTable, GenError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let domain = Alternatives::new(&alt_labels(params.n_alternatives)).expect("distinct labels");
    let poset = random_poset(&mut rng, params.n_params, &params.relation_density);
    let rows = (0..params.n_alternatives)
        .map(|_| {
            (0..params.n_params)
                .map(|_| random_rational(&mut rng, params.max_abs_numerator, params.max_denominator))
                .collect()
        })
        .collect();
    Ok(ParamUtilityTable::new(domain, poset, rows).expect("dimensions match"))
}

/// A `U` on the chain `t0 ≲ t1 ≲ …` for which every lower slice is less
/// risk-averse than every higher one: the top slice is random and each slice
/// below is a random increasing convex transform of the one above.
pub fn gen_positive_instance(params: &InstanceGenParams) -> Result<ParamUtilityTable, GenError> {
    params.validate()?;
    if params.relation_density != Rational::one() {
        return Err(GenError::UnsupportedPoset(params.relation_density.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let domain = Alternatives::new(&alt_labels(params.n_alternatives)).expect("distinct labels");
    let labels = param_labels(params.n_params);
    let poset = Poset::chain(&labels).expect("chain is acyclic");
    let (m, d) = (params.max_abs_numerator, params.max_denominator);
    let mut slices = vec![random_table(&mut rng, &domain, m, d)];
    for _ in 1..params.n_params {
        let above = slices.last().expect("non-empty");
        let phi = random_pl_transform(&mut rng, above.values(), m, d);
        let below = above.map(|t| apply_transform(&phi, t).expect("knot in domain"));
        slices.push(below);
    }
    slices.reverse();
    Ok(ParamUtilityTable::from_slices(poset, &slices).expect("slices share alternatives"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{check_prop_a, check_prop_b};

    #[test]
    fn same_seed_same_instance() {
        let p = InstanceGenParams { seed: 99, ..Default::default() };
        assert_eq!(gen_random_instance(&p).unwrap(), gen_random_instance(&p).unwrap());
        assert_eq!(gen_positive_instance(&InstanceGenParams { relation_density: Rational::one(), ..p.clone() }).unwrap(),
                   gen_positive_instance(&InstanceGenParams { relation_density: Rational::one(), ..p }).unwrap());
    }

    #[test]
    fn zero_density_gives_antichain() {
        let p = InstanceGenParams {
            relation_density: Rational::zero(),
            n_params: 5,
            ..Default::default()
        };
        let t = gen_random_instance(&p).unwrap();
        assert_eq!(t.params().strict_pairs().count(), 0);
    }

    #[test]
    fn full_density_gives_chain() {
        for seed in 0..20 {
            let p = InstanceGenParams {
                seed,
                relation_density: Rational::one(),
                n_params: 3,
                ..Default::default()
            };
            let t = gen_random_instance(&p).unwrap();
            assert!(t.params().is_chain());
            assert_eq!(t.params().strict_pairs().count(), 3);
        }
    }

    #[test]
    fn positive_instances_hold_on_both_sides() {
        for seed in 0..40 {
            let p = InstanceGenParams {
                seed,
                relation_density: Rational::one(),
                n_alternatives: 2 + (seed as usize % 5),
                n_params: 1 + (seed as usize % 5),
                ..Default::default()
            };
            let t = gen_positive_instance(&p).unwrap();
            assert!(check_prop_a(&t).holds, "seed {seed}");
            assert!(check_prop_b(&t).holds, "seed {seed}");
        }
    }

    #[test]
    fn chain_of_one_is_vacuous() {
        let p = InstanceGenParams {
            n_params: 1,
            relation_density: Rational::one(),
            ..Default::default()
        };
        let t = gen_positive_instance(&p).unwrap();
        assert_eq!(t.params().len(), 1);
        assert!(check_prop_a(&t).pairs.is_empty());
    }

    #[test]
    fn parameter_validation() {
        let p = InstanceGenParams { relation_density: Rational::new(1, 2).unwrap(), ..Default::default() };
        assert!(matches!(gen_positive_instance(&p), Err(GenError::UnsupportedPoset(_))));
        let p = InstanceGenParams { n_alternatives: 7, ..Default::default() };
        assert!(matches!(gen_random_instance(&p), Err(GenError::InvalidParams(_))));
        let p = InstanceGenParams { relation_density: Rational::from(2), ..Default::default() };
        assert!(gen_random_instance(&p).is_err());
    }

    #[test]
    fn random_transform_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let ts: Vec<Rational> = (0..4).map(|_| random_rational(&mut rng, 5, 3)).collect();
            let phi = random_pl_transform(&mut rng, &ts, 5, 3);
            let slopes = phi.slopes();
            assert!(slopes.windows(2).all(|w| w[0] <= w[1]));
            assert!(slopes.iter().all(Rational::is_positive));
        }
    }
}
