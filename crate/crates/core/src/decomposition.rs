//! Nice path decompositions of the non-unanimity graph that are consistent
//! with the unanimity order.
//!
//! A decomposition is a sequence of `2m` events, each introducing or
//! forgetting one candidate; bag `i` is the set of candidates alive after
//! event `i`. It is consistent with the unanimity order ρ when any candidate
//! forgotten before another is introduced is unanimously preferred to it.
//!
//! The builder searches orderings that are linear extensions of ρ for the one
//! of least vertex separation, then introduces candidates in that order and
//! forgets each one as soon as all of its contested partners are in.

use crate::error::{Error, Result};
use crate::parameters::{min_vertex_separation, NonUnanimityGraph, UnanimityOrder};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Introduce(usize),
    Forget(usize),
}

impl Event {
    pub fn candidate(self) -> usize {
        match self {
            Event::Introduce(c) | Event::Forget(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicePathDecomposition {
    m: usize,
    events: Vec<Event>,
    bags: Vec<u64>,
    width: usize,
}

impl NicePathDecomposition {
    /// Wraps an event sequence without validating it; see
    /// [`validate_decomposition`].
    pub fn from_events(m: usize, events: Vec<Event>) -> Result<Self> {
        if m > 64 {
            return Err(Error::Resource {
                what: "path decomposition",
                limit: 64,
                actual: m,
            });
        }
        if let Some(e) = events.iter().find(|e| e.candidate() >= m) {
            return Err(Error::Structural(format!("{e:?} out of range for {m} candidates")));
        }
        let mut bag = 0u64;
        let bags: Vec<u64> = events
            .iter()
            .map(|e| {
                match *e {
                    Event::Introduce(c) => bag |= 1 << c,
                    Event::Forget(c) => bag &= !(1 << c),
                }
                bag
            })
            .collect();
        let width = bags
            .iter()
            .map(|b| b.count_ones() as usize)
            .max()
            .unwrap_or(0)
            .saturating_sub(1);
        Ok(NicePathDecomposition {
            m,
            events,
            bags,
            width,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    /// Bags as candidate bitmasks; `bags()[i]` is the bag after event `i`.
    pub fn bags(&self) -> &[u64] {
        &self.bags
    }

    pub fn bag_members(&self, i: usize) -> Vec<usize> {
        (0..self.m).filter(|&c| self.bags[i] >> c & 1 == 1).collect()
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

/// Per-bag bookkeeping used by the dynamic program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionContext {
    /// `forgotten[i]`: candidates in some earlier bag but not in bag `i`.
    pub forgotten: Vec<u64>,
    /// Candidates in the order they are introduced.
    pub intro_order: Vec<usize>,
}

impl DecompositionContext {
    pub fn new(d: &NicePathDecomposition) -> Self {
        let mut seen = 0u64;
        let forgotten = d
            .bags
            .iter()
            .map(|&bag| {
                let f = seen & !bag;
                seen |= bag;
                f
            })
            .collect();
        let intro_order = d
            .events
            .iter()
            .filter_map(|e| match *e {
                Event::Introduce(c) => Some(c),
                Event::Forget(_) => None,
            })
            .collect();
        DecompositionContext {
            forgotten,
            intro_order,
        }
    }
}

/// Builds a nice ρ-consistent path decomposition of minimum width among those
/// whose introduction order is a linear extension of ρ.
pub fn build_decomposition(
    order: &UnanimityOrder,
    graph: &NonUnanimityGraph,
    limits: &Limits,
) -> Result<NicePathDecomposition> {
    let m = order.m();
    if graph.m() != m {
        return Err(Error::Structural(format!(
            "order over {m} candidates, graph over {}",
            graph.m()
        )));
    }
    if m > limits.max_subset_candidates {
        return Err(Error::Resource {
            what: "path decomposition search",
            limit: limits.max_subset_candidates,
            actual: m,
        });
    }
    let nbrs = graph.neighbor_masks()?;
    let preds = order.predecessor_masks()?;
    let (_, ordering) =
        min_vertex_separation(&nbrs, Some(&preds)).expect("a strict partial order has a linear extension");

    let mut events = Vec::with_capacity(2 * m);
    let mut introduced = 0u64;
    let mut alive: Vec<usize> = Vec::new();
    for &v in &ordering {
        events.push(Event::Introduce(v));
        introduced |= 1 << v;
        alive.push(v);
        alive.retain(|&u| {
            let done = nbrs[u] & !introduced == 0;
            if done {
                events.push(Event::Forget(u));
            }
            !done
        });
    }
    debug_assert!(alive.is_empty());
    NicePathDecomposition::from_events(m, events)
}

/// Checks every structural property of a nice ρ-consistent path decomposition
/// of `graph`.
pub fn validate_decomposition(
    d: &NicePathDecomposition,
    order: &UnanimityOrder,
    graph: &NonUnanimityGraph,
) -> bool {
    let m = d.m;
    if order.m() != m || graph.m() != m || d.events.len() != 2 * m {
        return false;
    }
    let mut intro_at = vec![usize::MAX; m];
    let mut forget_at = vec![usize::MAX; m];
    for (i, e) in d.events.iter().enumerate() {
        match *e {
            Event::Introduce(c) => {
                if intro_at[c] != usize::MAX {
                    return false;
                }
                intro_at[c] = i;
            }
            Event::Forget(c) => {
                if intro_at[c] == usize::MAX || forget_at[c] != usize::MAX {
                    return false;
                }
                forget_at[c] = i;
            }
        }
    }
    if forget_at.contains(&usize::MAX) {
        return false;
    }
    // consecutive bags differ by exactly one candidate
    let mut prev = 0u64;
    for &bag in &d.bags {
        if (bag ^ prev).count_ones() != 1 {
            return false;
        }
        prev = bag;
    }
    // every vertex occupies a contiguous run of bags
    for c in 0..m {
        let holding: Vec<usize> = (0..d.bags.len())
            .filter(|&i| d.bags[i] >> c & 1 == 1)
            .collect();
        if holding.is_empty() || holding.windows(2).any(|w| w[1] != w[0] + 1) {
            return false;
        }
    }
    for (a, b) in graph.edges() {
        let both = (1u64 << a) | (1u64 << b);
        if !d.bags.iter().any(|&bag| bag & both == both) {
            return false;
        }
    }
    for u in 0..m {
        for x in 0..m {
            if u != x && forget_at[u] < intro_at[x] && !order.prefers(u, x) {
                return false;
            }
        }
    }
    let width = d
        .bags
        .iter()
        .map(|b| b.count_ones() as usize)
        .max()
        .unwrap_or(0)
        .saturating_sub(1);
    width == d.width
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Profile;
    use crate::parameters::pathwidth;
    use itertools::Itertools;

    fn parts(p: &Profile) -> (UnanimityOrder, NonUnanimityGraph) {
        let u = UnanimityOrder::of(p);
        let g = NonUnanimityGraph::of(&u);
        (u, g)
    }

    // Exhaustive oracle: least vertex separation over linear extensions of ρ.
    fn best_extension_width(u: &UnanimityOrder, g: &NonUnanimityGraph) -> usize {
        let m = u.m();
        let nbrs = g.neighbor_masks().unwrap();
        (0..m)
            .permutations(m)
            .filter(|o| {
                let pos: Vec<usize> = (0..m).map(|c| o.iter().position(|&x| x == c).unwrap()).collect();
                u.pairs().all(|(a, b)| pos[a] < pos[b])
            })
            .map(|o| crate::parameters::pathwidth::separation_of(&nbrs, &o))
            .min()
            .unwrap()
    }

    #[test]
    fn unanimous_profile_gives_width_zero_in_order() {
        let p = Profile::from_orders([vec![2, 0, 1], vec![2, 0, 1]]).unwrap();
        let (u, g) = parts(&p);
        let d = build_decomposition(&u, &g, &Limits::default()).unwrap();
        assert_eq!(d.width(), 0);
        assert_eq!(
            d.events(),
            &[
                Event::Introduce(2),
                Event::Forget(2),
                Event::Introduce(0),
                Event::Forget(0),
                Event::Introduce(1),
                Event::Forget(1)
            ]
        );
        assert!(validate_decomposition(&d, &u, &g));
    }

    #[test]
    fn block_construction_width_two() {
        let p = Profile::from_orders([vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        let (u, g) = parts(&p);
        assert_eq!(best_extension_width(&u, &g), 2);
        let d = build_decomposition(&u, &g, &Limits::default()).unwrap();
        assert_eq!(d.width(), 2);
        assert!(validate_decomposition(&d, &u, &g));
    }

    #[test]
    fn swap_construction_width_one() {
        let p = Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        let (u, g) = parts(&p);
        let d = build_decomposition(&u, &g, &Limits::default()).unwrap();
        assert_eq!(d.width(), 1);
        assert!(validate_decomposition(&d, &u, &g));
    }

    #[test]
    fn uncovered_edge_is_rejected() {
        // graph with edge 0-1 but 0 is forgotten before 1 arrives
        let u = UnanimityOrder::from_pairs(2, &[]).unwrap();
        let g = NonUnanimityGraph::of(&u);
        let d = NicePathDecomposition::from_events(
            2,
            vec![
                Event::Introduce(0),
                Event::Forget(0),
                Event::Introduce(1),
                Event::Forget(1),
            ],
        )
        .unwrap();
        assert!(!validate_decomposition(&d, &u, &g));
    }

    #[test]
    fn rho_inconsistent_order_is_rejected() {
        // 0 above 1 unanimously; forgetting 1 before introducing 0 violates consistency
        let u = UnanimityOrder::from_pairs(2, &[(0, 1)]).unwrap();
        let g = NonUnanimityGraph::of(&u);
        let bad = NicePathDecomposition::from_events(
            2,
            vec![
                Event::Introduce(1),
                Event::Forget(1),
                Event::Introduce(0),
                Event::Forget(0),
            ],
        )
        .unwrap();
        assert!(!validate_decomposition(&bad, &u, &g));
        let good = build_decomposition(&u, &g, &Limits::default()).unwrap();
        assert!(validate_decomposition(&good, &u, &g));
    }

    #[test]
    fn malformed_event_sequences_are_rejected() {
        let u = UnanimityOrder::from_pairs(2, &[(0, 1)]).unwrap();
        let g = NonUnanimityGraph::of(&u);
        let twice = NicePathDecomposition::from_events(
            2,
            vec![
                Event::Introduce(0),
                Event::Introduce(0),
                Event::Forget(0),
                Event::Introduce(1),
            ],
        )
        .unwrap();
        assert!(!validate_decomposition(&twice, &u, &g));
        let short = NicePathDecomposition::from_events(2, vec![Event::Introduce(0)]).unwrap();
        assert!(!validate_decomposition(&short, &u, &g));
    }

    #[test]
    fn context_tracks_forgotten_sets() {
        let p = Profile::from_orders([vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap();
        let (u, g) = parts(&p);
        let d = build_decomposition(&u, &g, &Limits::default()).unwrap();
        let ctx = DecompositionContext::new(&d);
        assert_eq!(ctx.intro_order.len(), 4);
        assert_eq!(ctx.forgotten[0], 0);
        assert_eq!(*ctx.forgotten.last().unwrap(), 0b1111);
        for w in ctx.forgotten.windows(2) {
            assert_eq!(w[0] & !w[1], 0, "forgotten sets only grow");
        }
    }

    #[test]
    fn random_profiles_match_exhaustive_and_width_bound() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..80 {
            let m = rng.gen_range(1..=6);
            let n = rng.gen_range(1..=4);
            let votes: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let mut v: Vec<usize> = (0..m).collect();
                    v.shuffle(&mut rng);
                    v
                })
                .collect();
            let p = Profile::from_orders(votes).unwrap();
            let (u, g) = parts(&p);
            let d = build_decomposition(&u, &g, &Limits::default()).unwrap();
            assert!(validate_decomposition(&d, &u, &g));
            assert_eq!(d.width(), best_extension_width(&u, &g));
            let pw = pathwidth(&g, 20).unwrap().width;
            assert!(d.width() >= pw);
            assert!(d.width() <= 5 * pw + 4);
        }
    }
}
