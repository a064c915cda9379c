//! Structural parameters of a profile: maximum range, average KT distance,
//! unanimity width, blocking size and consensus distance.
//!
//! All of them are read off two objects: the unanimity order (pairs every
//! voter agrees on) and its complement graph, the non-unanimity graph, whose
//! edges are exactly the contested pairs.

mod antichain;
pub(crate) mod pathwidth;

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::model::{CandidateId, PairwiseCosts, Profile, Ranking};
use crate::Limits;

pub use antichain::{max_antichain_size, max_clique_exhaustive};
pub use pathwidth::{pathwidth, Pathwidth};
pub(crate) use pathwidth::min_vertex_separation;

/// Strict partial order of the candidate pairs all voters agree on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnanimityOrder {
    m: usize,
    // rel[a * m + b]: every voter prefers a over b
    rel: Vec<bool>,
}

impl UnanimityOrder {
    pub fn of(profile: &Profile) -> Self {
        Self::from_costs(&PairwiseCosts::new(profile))
    }

    pub fn from_costs(costs: &PairwiseCosts) -> Self {
        let m = costs.m();
        let mut rel = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                rel[a * m + b] = a != b && costs.cost(a, b) == 0;
            }
        }
        UnanimityOrder { m, rel }
    }

    /// Builds an order from explicit pairs, checking it is a strict partial order.
    pub fn from_pairs(m: usize, pairs: &[(CandidateId, CandidateId)]) -> Result<Self> {
        let mut rel = vec![false; m * m];
        for &(a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::Structural(format!("pair ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Structural(format!("reflexive pair ({a},{a})")));
            }
            rel[a * m + b] = true;
        }
        let order = UnanimityOrder { m, rel };
        for a in 0..m {
            for b in 0..m {
                if !order.prefers(a, b) {
                    continue;
                }
                if order.prefers(b, a) {
                    return Err(Error::Structural(format!("pairs ({a},{b}) and ({b},{a})")));
                }
                for c in 0..m {
                    if order.prefers(b, c) && !order.prefers(a, c) {
                        return Err(Error::Structural(format!(
                            "not transitive: ({a},{b}), ({b},{c}) without ({a},{c})"
                        )));
                    }
                }
            }
        }
        Ok(order)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// True when every voter ranks `a` above `b`.
    #[inline]
    pub fn prefers(&self, a: CandidateId, b: CandidateId) -> bool {
        self.rel[a * self.m + b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (CandidateId, CandidateId)> + '_ {
        (0..self.m).flat_map(move |a| {
            (0..self.m)
                .filter(move |&b| self.prefers(a, b))
                .map(move |b| (a, b))
        })
    }

    pub fn len(&self) -> usize {
        self.rel.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when `q` keeps every unanimous pair in its agreed orientation.
    pub fn respected_by(&self, q: &Ranking) -> bool {
        if q.len() != self.m {
            return false;
        }
        let pos = q.positions();
        self.pairs().all(|(a, b)| pos[a] < pos[b])
    }

    fn check_mask_width(&self) -> Result<()> {
        if self.m > 64 {
            return Err(Error::Resource {
                what: "bitmask representation",
                limit: 64,
                actual: self.m,
            });
        }
        Ok(())
    }

    /// `masks[c]` has bit `u` set when `(u, c)` is unanimous.
    pub fn predecessor_masks(&self) -> Result<Vec<u64>> {
        self.check_mask_width()?;
        Ok((0..self.m)
            .map(|c| {
                (0..self.m)
                    .filter(|&u| self.prefers(u, c))
                    .fold(0u64, |acc, u| acc | 1 << u)
            })
            .collect())
    }

    /// `masks[c]` has bit `w` set when `(c, w)` is unanimous.
    pub fn successor_masks(&self) -> Result<Vec<u64>> {
        self.check_mask_width()?;
        Ok((0..self.m)
            .map(|c| {
                (0..self.m)
                    .filter(|&w| self.prefers(c, w))
                    .fold(0u64, |acc, w| acc | 1 << w)
            })
            .collect())
    }
}

/// Shorthand for [`UnanimityOrder::of`].
pub fn unanimity_order(profile: &Profile) -> UnanimityOrder {
    UnanimityOrder::of(profile)
}

/// Shorthand for [`UnanimityOrder::respected_by`].
pub fn respects_unanimity(q: &Ranking, order: &UnanimityOrder) -> bool {
    order.respected_by(q)
}

/// Undirected graph on the candidates with an edge for every pair that is not
/// unanimous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUnanimityGraph {
    m: usize,
    adj: Vec<bool>,
}

impl NonUnanimityGraph {
    pub fn of(order: &UnanimityOrder) -> Self {
        let m = order.m();
        let mut adj = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                adj[a * m + b] = a != b && !order.prefers(a, b) && !order.prefers(b, a);
            }
        }
        NonUnanimityGraph { m, adj }
    }

    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; m * m];
        for &(a, b) in edges {
            if a >= m || b >= m || a == b {
                return Err(Error::Structural(format!("bad edge ({a},{b})")));
            }
            adj[a * m + b] = true;
            adj[b * m + a] = true;
        }
        Ok(NonUnanimityGraph { m, adj })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.m + b]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |a| {
            (a + 1..self.m)
                .filter(move |&b| self.has_edge(a, b))
                .map(move |b| (a, b))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Adjacency as one bitmask per vertex; needs `m <= 64`.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        if self.m > 64 {
            return Err(Error::Resource {
                what: "bitmask representation",
                limit: 64,
                actual: self.m,
            });
        }
        Ok((0..self.m)
            .map(|a| {
                (0..self.m)
                    .filter(|&b| self.has_edge(a, b))
                    .fold(0u64, |acc, b| acc | 1 << b)
            })
            .collect())
    }
}

/// Average KT distance over ordered pairs of distinct votes, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvgKt {
    /// Sum of KT distances over ordered vote pairs.
    pub total: u64,
    /// `n * (n - 1)`; zero for a single vote.
    pub ordered_pairs: u64,
}

impl AvgKt {
    pub fn ratio(&self) -> Ratio<u64> {
        if self.ordered_pairs == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.total, self.ordered_pairs)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.ordered_pairs == 0 {
            0.0
        } else {
            self.total as f64 / self.ordered_pairs as f64
        }
    }

    /// Rounded to three decimals, as printed in tables.
    pub fn decimal(&self) -> String {
        format!("{:.3}", self.to_f64())
    }
}

impl fmt::Display for AvgKt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ratio())
    }
}

/// Largest position spread of any candidate across the votes, plus one.
pub fn max_range(profile: &Profile) -> usize {
    (0..profile.m())
        .map(|c| {
            let (lo, hi) = position_bounds(profile, c);
            hi - lo + 1
        })
        .max()
        .unwrap_or(1)
}

/// Smallest and largest position of `c` over all votes.
pub fn position_bounds(profile: &Profile, c: CandidateId) -> (usize, usize) {
    (0..profile.n()).fold((usize::MAX, 0), |(lo, hi), v| {
        let p = profile.position(v, c);
        (lo.min(p), hi.max(p))
    })
}

pub fn avg_kt_distance(profile: &Profile) -> AvgKt {
    let n = profile.n() as u64;
    let votes = profile.votes();
    let mut unordered = 0u64;
    for (i, a) in votes.iter().enumerate() {
        for b in &votes[i + 1..] {
            unordered += crate::model::kt_distance(a, b).expect("votes share m");
        }
    }
    AvgKt {
        total: 2 * unordered,
        ordered_pairs: n * (n - 1),
    }
}

/// Number of contested candidate pairs.
pub fn consensus_distance(profile: &Profile) -> usize {
    NonUnanimityGraph::of(&UnanimityOrder::of(profile)).edge_count()
}

/// Largest set of pairwise contested candidates.
pub fn blocking_size(profile: &Profile) -> usize {
    max_antichain_size(&UnanimityOrder::of(profile))
}

/// Pathwidth of the non-unanimity graph.
pub fn unanimity_width(profile: &Profile, limits: &Limits) -> Result<usize> {
    let g = NonUnanimityGraph::of(&UnanimityOrder::of(profile));
    Ok(pathwidth(&g, limits.max_subset_candidates)?.width)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParameterReport {
    pub max_range: usize,
    pub avg_kt: AvgKt,
    pub unanimity_width: usize,
    pub blocking_size: usize,
    pub consensus_distance: usize,
}

impl ParameterReport {
    /// Names of the parameter inequalities this report violates. Empty for
    /// every genuine profile.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let cd = self.consensus_distance;
        if self.blocking_size > self.unanimity_width + 1 {
            out.push("blocking_size - 1 <= unanimity_width");
        }
        if self.unanimity_width > cd {
            out.push("unanimity_width <= consensus_distance");
        }
        if self.blocking_size > cd + 1 {
            out.push("blocking_size - 1 <= consensus_distance");
        }
        if self.avg_kt.total > cd as u64 * self.avg_kt.ordered_pairs {
            out.push("avg_kt <= consensus_distance");
        }
        if self.max_range > cd + 1 {
            out.push("max_range - 1 <= consensus_distance");
        }
        if self.unanimity_width > 2 * self.max_range {
            out.push("unanimity_width <= 2 * max_range");
        }
        out
    }
}

pub fn parameter_report(profile: &Profile, limits: &Limits) -> Result<ParameterReport> {
    let order = UnanimityOrder::of(profile);
    let graph = NonUnanimityGraph::of(&order);
    Ok(ParameterReport {
        max_range: max_range(profile),
        avg_kt: avg_kt_distance(profile),
        unanimity_width: pathwidth(&graph, limits.max_subset_candidates)?.width,
        blocking_size: max_antichain_size(&order),
        consensus_distance: graph.edge_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn block(p: usize) -> Profile {
        // c_1..c_p = 0..p, d_1..d_p = p..2p
        let first: Vec<usize> = (0..2 * p).collect();
        let second: Vec<usize> = (p..2 * p).chain(0..p).collect();
        Profile::from_orders([first, second]).unwrap()
    }

    fn swap() -> Profile {
        Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    fn identical() -> Profile {
        Profile::from_orders([vec![2, 0, 1], vec![2, 0, 1], vec![2, 0, 1]]).unwrap()
    }

    #[test]
    fn unanimity_order_examples() {
        let u = unanimity_order(&identical());
        let pairs: Vec<_> = u.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (2, 0), (2, 1)]);

        let rev = Profile::from_orders([vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert!(unanimity_order(&rev).is_empty());

        // c1=0 c2=1 d1=2 d2=3
        let u = unanimity_order(&block(2));
        assert_eq!(u.pairs().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn respects_unanimity_examples() {
        let empty = UnanimityOrder::from_pairs(3, &[]).unwrap();
        assert!(respects_unanimity(&Ranking::new(vec![2, 1, 0]).unwrap(), &empty));

        let u = unanimity_order(&block(2));
        assert!(respects_unanimity(&Ranking::new(vec![2, 3, 0, 1]).unwrap(), &u));
        assert!(!respects_unanimity(&Ranking::new(vec![1, 0, 2, 3]).unwrap(), &u));
    }

    #[test]
    fn from_pairs_rejects_non_orders() {
        assert!(UnanimityOrder::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        assert!(UnanimityOrder::from_pairs(3, &[(0, 1), (1, 2)]).is_err());
        assert!(UnanimityOrder::from_pairs(2, &[(1, 1)]).is_err());
        assert!(UnanimityOrder::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).is_ok());
    }

    #[test]
    fn max_range_examples() {
        assert_eq!(max_range(&identical()), 1);
        assert_eq!(max_range(&block(2)), 3);
        assert_eq!(max_range(&swap()), 2);
    }

    #[test]
    fn avg_kt_examples() {
        assert_eq!(avg_kt_distance(&identical()).ratio(), Ratio::from_integer(0));
        assert_eq!(avg_kt_distance(&swap()).ratio(), Ratio::from_integer(2));
        let cyclic = Profile::from_orders([vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let d = avg_kt_distance(&cyclic);
        assert_eq!((d.total, d.ordered_pairs), (12, 6));
        assert_eq!(d.to_string(), "2");

        let single = Profile::from_orders([vec![0, 1]]).unwrap();
        assert_eq!(avg_kt_distance(&single).ratio(), Ratio::from_integer(0));
    }

    #[test]
    fn avg_kt_prints_reduced_fraction() {
        let p = Profile::from_orders([vec![0, 1, 2], vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        // ordered pair distances: 0,1 | 0,1 | 1,1 -> total 4 over 6
        let d = avg_kt_distance(&p);
        assert_eq!(d.to_string(), "2/3");
        assert_eq!(d.decimal(), "0.667");
    }

    #[test]
    fn consensus_and_blocking_examples() {
        assert_eq!(consensus_distance(&identical()), 0);
        assert_eq!(consensus_distance(&block(2)), 4);
        assert_eq!(blocking_size(&identical()), 1);
        assert_eq!(blocking_size(&block(2)), 2);
        assert_eq!(blocking_size(&swap()), 2);
    }

    #[test]
    fn unanimity_width_examples() {
        let limits = Limits::default();
        assert_eq!(unanimity_width(&identical(), &limits).unwrap(), 0);
        assert_eq!(unanimity_width(&block(2), &limits).unwrap(), 2);
        assert_eq!(unanimity_width(&swap(), &limits).unwrap(), 1);
    }

    #[test]
    fn report_on_constructions_has_no_violations() {
        for p in [identical(), block(2), block(3), swap()] {
            let rep = parameter_report(&p, &Limits::default()).unwrap();
            assert!(rep.violations().is_empty(), "{rep:?}");
        }
    }

    #[test]
    fn violations_are_detected() {
        let rep = ParameterReport {
            max_range: 1,
            avg_kt: AvgKt { total: 10, ordered_pairs: 2 },
            unanimity_width: 3,
            blocking_size: 5,
            consensus_distance: 2,
        };
        assert_eq!(rep.violations().len(), 5);
    }
}
