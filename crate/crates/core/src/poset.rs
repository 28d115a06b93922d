//! Finite posets given by an arbitrary generating relation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("poset has no elements")]
    Empty,
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("relation pair ({0:?}, {1:?}) names an unknown element")]
    UnknownElement(String, String),
    #[error("relation is not antisymmetric: {0:?} and {1:?} lie on a cycle")]
    Cycle(String, String),
}

/// Reflexive-transitive closure of a relation on `n` indexed elements, as a
/// dense boolean matrix. `leq(i, j)` reads `i ≲ j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Comparability {
    n: usize,
    leq: Vec<bool>,
}

impl Comparability {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    /// All pairs `(i, j)` with `i ≲ j`, reflexive ones included, in
    /// lexicographic index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |i| (0..self.n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.leq(i, j))
    }

    /// Pairs with `i ≲ j` and `i != j`, in lexicographic index order.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(|&(i, j)| i != j)
    }
}

impl fmt::Debug for Comparability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Computes the smallest reflexive, transitive relation on `0..n` containing
/// `declared`, rejecting it if two distinct elements become equivalent.
///
/// On a cycle the error carries the lexicographically first offending index
/// pair.
pub fn transitive_closure(
    n: usize,
    declared: &[(usize, usize)],
) -> Result<Comparability, (usize, usize)> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for &(a, b) in declared {
        assert!(a < n && b < n, "relation endpoint out of range");
        leq[a * n + b] = true;
    }
    // Warshall
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i * n + j] && leq[j * n + i] {
                return Err((i, j));
            }
        }
    }
    Ok(Comparability { n, leq })
}

#[derive(Debug, PartialEq, Eq)]
struct PosetInner {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    declared: Vec<(usize, usize)>,
    closure: Comparability,
}

/// A finite poset over opaque string labels. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset(Arc<PosetInner>);

impl Poset {
    pub fn new<S: AsRef<str>>(elements: &[S], relation: &[(S, S)]) -> Result<Self, PosetError> {
        if elements.is_empty() {
            return Err(PosetError::Empty);
        }
        let mut index = HashMap::with_capacity(elements.len());
        let mut labels = Vec::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e));
            }
            labels.push(e);
        }
        let mut declared = Vec::with_capacity(relation.len());
        for (a, b) in relation {
            let (a, b) = (a.as_ref(), b.as_ref());
            match (index.get(a), index.get(b)) {
                (Some(&i), Some(&j)) => declared.push((i, j)),
                _ => return Err(PosetError::UnknownElement(a.to_string(), b.to_string())),
            }
        }
        let closure = transitive_closure(labels.len(), &declared)
            .map_err(|(i, j)| PosetError::Cycle(labels[i].clone(), labels[j].clone()))?;
        Ok(Poset(Arc::new(PosetInner {
            elements: labels,
            index,
            declared,
            closure,
        })))
    }

    /// The chain `e0 ≲ e1 ≲ … ≲ e(n-1)`.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self, PosetError> {
        let relation: Vec<(&str, &str)> = elements
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let elems: Vec<&str> = elements.iter().map(|e| e.as_ref()).collect();
        Poset::new(&elems, &relation)
    }

    /// An antichain: no two distinct elements comparable.
    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<Self, PosetError> {
        Poset::new::<S>(elements, &[])
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.0.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn declared(&self) -> &[(usize, usize)] {
        &self.0.declared
    }

    pub fn declared_labels(&self) -> Vec<(String, String)> {
        self.0
            .declared
            .iter()
            .map(|&(i, j)| (self.label(i).to_string(), self.label(j).to_string()))
            .collect()
    }

    pub fn comparability(&self) -> &Comparability {
        &self.0.closure
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.0.closure.leq(i, j)
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.closure.strict_pairs()
    }

    /// True when every two elements are comparable.
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    /// The same elements under a sub-relation of the declared pairs, selected
    /// by `keep(position)`.
    pub fn with_declared_subset(&self, mut keep: impl FnMut(usize) -> bool) -> Poset {
        let relation: Vec<(&str, &str)> = self
            .declared()
            .iter()
            .enumerate()
            .filter(|&(k, _)| keep(k))
            .map(|(_, &(i, j))| (self.label(i), self.label(j)))
            .collect();
        let elems: Vec<&str> = self.elements().iter().map(String::as_str).collect();
        Poset::new(&elems, &relation).expect("sub-relation of an acyclic relation is acyclic")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.0.elements)
            .field("declared", &self.declared_labels())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closure_adds_transitive_pair() {
        let c = transitive_closure(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.leq(0, 2));
        assert!(!c.leq(2, 0));
        assert_eq!(c.strict_pairs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn empty_relation_is_reflexive_only() {
        let c = transitive_closure(2, &[]).unwrap();
        assert_eq!(c.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(c.strict_pairs().count(), 0);
    }

    #[test]
    fn two_cycle_is_rejected() {
        assert_eq!(transitive_closure(2, &[(0, 1), (1, 0)]), Err((0, 1)));
        let err = Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, PosetError::Cycle("a".into(), "b".into()));
    }

    #[test]
    fn long_cycle_is_rejected() {
        let err = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(..)));
    }

    #[test]
    fn self_loops_are_harmless() {
        let p = Poset::new(&["a", "b"], &[("a", "a"), ("a", "b")]).unwrap();
        assert_eq!(p.strict_pairs().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Poset::new::<&str>(&[], &[]).unwrap_err(), PosetError::Empty);
        assert!(matches!(
            Poset::new(&["a", "a"], &[]),
            Err(PosetError::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::new(&["a"], &[("a", "z")]),
            Err(PosetError::UnknownElement(..))
        ));
    }

    #[test]
    fn chain_and_antichain() {
        let c = Poset::chain(&["a", "b", "c", "d"]).unwrap();
        assert!(c.is_chain());
        assert_eq!(c.strict_pairs().count(), 6);
        let a = Poset::antichain(&["a", "b"]).unwrap();
        assert!(!a.is_chain());
    }

    fn arb_dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (1usize..7).prop_flat_map(|n| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..12).prop_map(|es| {
                es.into_iter()
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect::<Vec<_>>()
            });
            (Just(n), edges)
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent((n, edges) in arb_dag()) {
            let once = transitive_closure(n, &edges).unwrap();
            let pairs: Vec<_> = once.pairs().collect();
            let twice = transitive_closure(n, &pairs).unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn closure_is_transitive((n, edges) in arb_dag()) {
            let c = transitive_closure(n, &edges).unwrap();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        if c.leq(i, j) && c.leq(j, k) {
                            prop_assert!(c.leq(i, k));
                        }
                    }
                }
            }
            for &(a, b) in &edges {
                prop_assert!(c.leq(a, b));
            }
        }
    }
}
