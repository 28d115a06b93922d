//! Exact optimisation of linear forms over the probability simplex cut by one
//! closed half-space, plus the rational grid used by the brute-force oracles.
//!
//! Every question of the form "is there `p ∈ Δ(n)` with `c·p ≥ 0` and
//! `o·p < 0`" (or `o·p > 0`) is a linear program whose optimum sits at a vertex
//! of `Δ(n) ∩ {c·p ≥ 0}`. Those vertices are point masses `δᵢ` with `cᵢ ≥ 0`
//! and, for each pair `cᵢ < 0 < cⱼ` (either order), the unique point on the
//! edge `[δᵢ, δⱼ]` with `c·p = 0`. So supports of size at most two suffice.

use crate::rational::Rational;

/// Which side of zero counts as a violation for the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// Violation iff `o·p < 0`.
    Negative,
    /// Violation iff `o·p > 0`.
    Positive,
}

impl Threshold {
    fn violated(self, value: &Rational) -> bool {
        match self {
            Threshold::Negative => value.is_negative(),
            Threshold::Positive => value.is_positive(),
        }
    }
}

/// A vertex of `Δ(n) ∩ {c·p ≥ 0}` with support `{first, second}`; `weight` is
/// the mass on `first`. For a point mass `first == second` and `weight == 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub first: usize,
    pub second: usize,
    pub weight: Rational,
}

impl Vertex {
    pub fn weights(&self, n: usize) -> Vec<Rational> {
        let mut w = vec![Rational::zero(); n];
        w[self.second] = Rational::one() - &self.weight;
        w[self.first] = &w[self.first] + &self.weight;
        w
    }

    fn eval(&self, o: &[Rational]) -> Rational {
        if self.first == self.second {
            o[self.first].clone()
        } else {
            &self.weight * &o[self.first] + (Rational::one() - &self.weight) * &o[self.second]
        }
    }
}

/// Mass on `i` that puts the mixture of `δᵢ` and `δⱼ` exactly on `c·p = 0`.
/// Requires `cᵢ` and `cⱼ` to have strictly opposite signs.
pub fn zero_crossing_weight(ci: &Rational, cj: &Rational) -> Rational {
    debug_assert!(ci.is_negative() != cj.is_negative() && !ci.is_zero() && !cj.is_zero());
    cj / &(cj - ci)
}

/// Vertices of `Δ(n) ∩ {c·p ≥ 0}`, supports enumerated as pairs `(i, j)` with
/// `i ≤ j` in lexicographic order.
pub fn halfspace_vertices(c: &[Rational]) -> impl Iterator<Item = Vertex> + '_ {
    let n = c.len();
    (0..n)
        .flat_map(move |i| (i..n).map(move |j| (i, j)))
        .filter_map(move |(i, j)| {
            if i == j {
                (!c[i].is_negative()).then(|| Vertex {
                    first: i,
                    second: i,
                    weight: Rational::one(),
                })
            } else if (c[i].is_negative() && c[j].is_positive())
                || (c[i].is_positive() && c[j].is_negative())
            {
                Some(Vertex {
                    first: i,
                    second: j,
                    weight: zero_crossing_weight(&c[i], &c[j]),
                })
            } else {
                None
            }
        })
}

/// First vertex (in scan order) of `Δ(n) ∩ {c·p ≥ 0}` at which `o·p` is on the
/// violating side of zero. `None` means no point of the region violates.
pub fn first_vertex_violation(c: &[Rational], o: &[Rational], threshold: Threshold) -> Option<Vertex> {
    assert_eq!(c.len(), o.len());
    halfspace_vertices(c).find(|v| threshold.violated(&v.eval(o)))
}

/// All weight vectors of length `n` whose entries are multiples of
/// `1/denom` and sum to one, in lexicographically decreasing order of the
/// numerators (so `δ₀` comes first).
pub fn simplex_grid(n: usize, denom: u32) -> SimplexGrid {
    assert!(n >= 1 && denom >= 1);
    let mut counts = vec![0u32; n];
    counts[0] = denom;
    SimplexGrid {
        denom,
        counts: Some(counts),
    }
}

pub struct SimplexGrid {
    denom: u32,
    counts: Option<Vec<u32>>,
}

impl SimplexGrid {
    fn advance(counts: &mut [u32]) -> bool {
        let n = counts.len();
        // rightmost position (excluding the last) holding mass
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| counts[k] > 0) else {
            return false;
        };
        counts[k] -= 1;
        let tail: u32 = counts[k + 1..].iter().sum::<u32>() + 1;
        for c in counts[k + 1..].iter_mut() {
            *c = 0;
        }
        counts[k + 1] = tail;
        true
    }
}

impl Iterator for SimplexGrid {
    type Item = Vec<Rational>;

    fn next(&mut self) -> Option<Self::Item> {
        let counts = self.counts.as_mut()?;
        let out = counts
            .iter()
            .map(|&c| Rational::new(c, self.denom).expect("positive denominator"))
            .collect();
        if !Self::advance(counts) {
            self.counts = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn grid_counts_match_stars_and_bars() {
        // C(n + d - 1, n - 1)
        assert_eq!(simplex_grid(1, 5).count(), 1);
        assert_eq!(simplex_grid(3, 2).count(), 6);
        assert_eq!(simplex_grid(4, 6).count(), 84);
        assert_eq!(simplex_grid(5, 12).count(), 1820);
        for w in simplex_grid(3, 4) {
            assert_eq!(w.iter().sum::<Rational>(), Rational::one());
        }
        let first: Vec<_> = simplex_grid(3, 2).take(2).collect();
        assert_eq!(first[0], vec![Rational::one(), Rational::zero(), Rational::zero()]);
        assert_eq!(first[1], vec![ratio(1, 2), ratio(1, 2), Rational::zero()]);
    }

    #[test]
    fn crossing_weight_lands_on_zero() {
        let (a, b) = (Rational::from(-1), Rational::from(3));
        let w = zero_crossing_weight(&a, &b);
        assert_eq!(w, ratio(3, 4));
        assert!((&w * &a + (Rational::one() - &w) * &b).is_zero());
    }

    #[test]
    fn vertices_of_cut_simplex() {
        let c = r(&[-1, 0, 2]);
        let vs: Vec<_> = halfspace_vertices(&c).collect();
        assert_eq!(vs.len(), 3);
        assert_eq!((vs[0].first, vs[0].second), (0, 2));
        assert_eq!(vs[0].weight, ratio(2, 3));
        assert_eq!((vs[1].first, vs[1].second), (1, 1));
        assert_eq!((vs[2].first, vs[2].second), (2, 2));
    }

    #[test]
    fn violation_search_matches_grid_on_small_case() {
        // region c·p ≥ 0 with c = (-1, 1); objective o = (-3, 1) is negative at (1/2, 1/2)
        let c = r(&[-1, 1]);
        let o = r(&[-3, 1]);
        let v = first_vertex_violation(&c, &o, Threshold::Negative).unwrap();
        assert_eq!(v.weights(2), vec![ratio(1, 2), ratio(1, 2)]);
        assert!(first_vertex_violation(&c, &o, Threshold::Positive).is_some());
        assert!(first_vertex_violation(&c, &r(&[-1, -3]), Threshold::Positive).is_none());
    }
}
