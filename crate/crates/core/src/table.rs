//! Utility tables, lotteries and parameterised functions over finite sets.
//!
//! Alternatives and poset elements are opaque labels. Values are stored in
//! label order, so every scan over a table is deterministic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poset::Poset;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("alternative set is empty")]
    EmptyAlternatives,
    #[error("duplicate alternative {0:?}")]
    DuplicateAlternative(String),
    #[error("unknown alternative {0:?}")]
    UnknownAlternative(String),
    #[error("no value given for {0:?}")]
    MissingValue(String),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("negative lottery weight {weight} on {label:?}")]
    NegativeWeight { label: String, weight: Rational },
    #[error("lottery weights sum to {0}, not 1")]
    WeightsDoNotSumToOne(Rational),
    #[error("mixing coefficient {0} outside [0, 1]")]
    MixOutOfRange(Rational),
}

/// Tables were built over different alternative lists.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("alternative lists differ: {left:?} vs {right:?}")]
pub struct DomainMismatch {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(PartialEq, Eq)]
struct AltInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A non-empty, ordered list of distinct labels. Cheap to clone.
///
/// Two lists are the same domain only if they hold the same labels in the
/// same order.
#[derive(Clone)]
pub struct Alternatives(Arc<AltInner>);

impl Alternatives {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self, TableError> {
        if labels.is_empty() {
            return Err(TableError::EmptyAlternatives);
        }
        let mut index = HashMap::with_capacity(labels.len());
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref().to_string();
            if index.insert(l.clone(), i).is_some() {
                return Err(TableError::DuplicateAlternative(l));
            }
            owned.push(l);
        }
        Ok(Alternatives(Arc::new(AltInner {
            labels: owned,
            index,
        })))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn ensure_same(&self, other: &Alternatives) -> Result<(), DomainMismatch> {
        if self == other {
            Ok(())
        } else {
            Err(DomainMismatch {
                left: self.labels().to_vec(),
                right: other.labels().to_vec(),
            })
        }
    }
}

impl PartialEq for Alternatives {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Alternatives {}

impl fmt::Debug for Alternatives {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels()).finish()
    }
}

/// A function `X → ℚ`.
#[derive(Clone, PartialEq, Eq)]
pub struct UtilityTable {
    domain: Alternatives,
    values: Vec<Rational>,
}

impl UtilityTable {
    pub fn new(domain: Alternatives, values: Vec<Rational>) -> Result<Self, TableError> {
        if values.len() != domain.len() {
            return Err(TableError::WrongLength {
                expected: domain.len(),
                got: values.len(),
            });
        }
        Ok(UtilityTable { domain, values })
    }

    /// Builds a table from `(label, value)` pairs; the labels become the
    /// domain in the order given.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, Rational)]) -> Result<Self, TableError> {
        let labels: Vec<&str> = pairs.iter().map(|(l, _)| l.as_ref()).collect();
        let domain = Alternatives::new(&labels)?;
        UtilityTable::new(domain, pairs.iter().map(|(_, v)| v.clone()).collect())
    }

    pub fn domain(&self) -> &Alternatives {
        &self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn get(&self, label: &str) -> Option<&Rational> {
        self.domain.index_of(label).map(|i| &self.values[i])
    }

    /// `x ↦ scale·u(x) + shift`.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> UtilityTable {
        UtilityTable {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| scale * v + shift).collect(),
        }
    }

    pub fn map(&self, mut f: impl FnMut(&Rational) -> Rational) -> UtilityTable {
        UtilityTable {
            domain: self.domain.clone(),
            values: self.values.iter().map(&mut f).collect(),
        }
    }
}

impl fmt::Debug for UtilityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.domain.labels().iter().zip(&self.values))
            .finish()
    }
}

/// A probability distribution on a finite set of alternatives.
#[derive(Clone, PartialEq, Eq)]
pub struct Lottery {
    domain: Alternatives,
    weights: Vec<Rational>,
}

impl Lottery {
    pub fn new(domain: Alternatives, weights: Vec<Rational>) -> Result<Self, TableError> {
        if weights.len() != domain.len() {
            return Err(TableError::WrongLength {
                expected: domain.len(),
                got: weights.len(),
            });
        }
        for (i, w) in weights.iter().enumerate() {
            if w.is_negative() {
                return Err(TableError::NegativeWeight {
                    label: domain.label(i).to_string(),
                    weight: w.clone(),
                });
            }
        }
        let total: Rational = weights.iter().sum();
        if total != Rational::one() {
            return Err(TableError::WeightsDoNotSumToOne(total));
        }
        Ok(Lottery { domain, weights })
    }

    pub fn point_mass(domain: Alternatives, at: usize) -> Self {
        let mut weights = vec![Rational::zero(); domain.len()];
        weights[at] = Rational::one();
        Lottery { domain, weights }
    }

    /// `weight` on `a`, the rest on `b`. `a == b` gives a point mass.
    pub fn two_point(
        domain: Alternatives,
        a: usize,
        b: usize,
        weight: Rational,
    ) -> Result<Self, TableError> {
        if weight.is_negative() || weight > Rational::one() {
            return Err(TableError::MixOutOfRange(weight));
        }
        let mut weights = vec![Rational::zero(); domain.len()];
        weights[b] = Rational::one() - &weight;
        weights[a] = &weights[a] + &weight;
        Ok(Lottery { domain, weights })
    }

    /// `alpha·p + (1 − alpha)·q`.
    pub fn mix(alpha: &Rational, p: &Lottery, q: &Lottery) -> Result<Lottery, TableError> {
        if alpha.is_negative() || *alpha > Rational::one() {
            return Err(TableError::MixOutOfRange(alpha.clone()));
        }
        p.domain
            .ensure_same(&q.domain)
            .map_err(|e| TableError::UnknownAlternative(format!("{e}")))?;
        let beta = Rational::one() - alpha;
        let weights = p
            .weights
            .iter()
            .zip(&q.weights)
            .map(|(a, b)| alpha * a + &beta * b)
            .collect();
        Ok(Lottery {
            domain: p.domain.clone(),
            weights,
        })
    }

    pub fn domain(&self) -> &Alternatives {
        &self.domain
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn get(&self, label: &str) -> Option<&Rational> {
        self.domain.index_of(label).map(|i| &self.weights[i])
    }

    /// Indices with positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i].is_positive())
            .collect()
    }
}

impl fmt::Debug for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.domain.labels().iter().zip(&self.weights))
            .finish()
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.support().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", self.domain.label(i), self.weights[i])?;
        }
        f.write_str(")")
    }
}

/// `∑ₓ u(x)·p(x)`.
pub fn expected_value(u: &UtilityTable, p: &Lottery) -> Result<Rational, DomainMismatch> {
    u.domain.ensure_same(&p.domain)?;
    Ok(u.values.iter().zip(&p.weights).map(|(a, b)| a * b).sum())
}

/// A function `Θ → ℚ` on a poset.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamFunction {
    params: Poset,
    values: Vec<Rational>,
}

impl ParamFunction {
    pub fn new(params: Poset, values: Vec<Rational>) -> Result<Self, TableError> {
        if values.len() != params.len() {
            return Err(TableError::WrongLength {
                expected: params.len(),
                got: values.len(),
            });
        }
        Ok(ParamFunction { params, values })
    }

    pub fn params(&self) -> &Poset {
        &self.params
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, theta: usize) -> &Rational {
        &self.values[theta]
    }

    pub fn scaled(&self, c: &Rational) -> ParamFunction {
        ParamFunction {
            params: self.params.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    pub fn with_params(&self, params: Poset) -> Result<ParamFunction, TableError> {
        ParamFunction::new(params, self.values.clone())
    }
}

impl fmt::Debug for ParamFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.params.elements().iter().zip(&self.values))
            .finish()
    }
}

/// A function `X × Θ → ℚ`, stored row-major by alternative.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamUtilityTable {
    alternatives: Alternatives,
    params: Poset,
    values: Vec<Vec<Rational>>,
}

impl ParamUtilityTable {
    /// `values[x][θ]`.
    pub fn new(
        alternatives: Alternatives,
        params: Poset,
        values: Vec<Vec<Rational>>,
    ) -> Result<Self, TableError> {
        if values.len() != alternatives.len() {
            return Err(TableError::WrongLength {
                expected: alternatives.len(),
                got: values.len(),
            });
        }
        for row in &values {
            if row.len() != params.len() {
                return Err(TableError::WrongLength {
                    expected: params.len(),
                    got: row.len(),
                });
            }
        }
        Ok(ParamUtilityTable {
            alternatives,
            params,
            values,
        })
    }

    /// Assembles a table from one slice `U(·, θ)` per poset element.
    pub fn from_slices(params: Poset, slices: &[UtilityTable]) -> Result<Self, TableError> {
        if slices.len() != params.len() {
            return Err(TableError::WrongLength {
                expected: params.len(),
                got: slices.len(),
            });
        }
        let alternatives = slices[0].domain().clone();
        let mut values = vec![Vec::with_capacity(params.len()); alternatives.len()];
        for s in slices {
            if s.domain() != &alternatives {
                return Err(TableError::UnknownAlternative(format!(
                    "{:?}",
                    s.domain().labels()
                )));
            }
            for (x, v) in s.values().iter().enumerate() {
                values[x].push(v.clone());
            }
        }
        ParamUtilityTable::new(alternatives, params, values)
    }

    pub fn alternatives(&self) -> &Alternatives {
        &self.alternatives
    }

    pub fn params(&self) -> &Poset {
        &self.params
    }

    pub fn value(&self, x: usize, theta: usize) -> &Rational {
        &self.values[x][theta]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// `U(·, θ)`.
    pub fn slice(&self, theta: usize) -> UtilityTable {
        UtilityTable {
            domain: self.alternatives.clone(),
            values: self.values.iter().map(|row| row[theta].clone()).collect(),
        }
    }

    /// `U(x, ·)`.
    pub fn row(&self, x: usize) -> ParamFunction {
        ParamFunction {
            params: self.params.clone(),
            values: self.values[x].clone(),
        }
    }
}

impl fmt::Debug for ParamUtilityTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamUtilityTable")
            .field("alternatives", &self.alternatives)
            .field("params", &self.params)
            .field("values", &self.values)
            .finish()
    }
}
