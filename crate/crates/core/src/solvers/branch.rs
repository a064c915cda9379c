//! Search tree over contested pairs with the budget as the measure.
//!
//! A node is a partial order containing ρ. The lowest contested pair `(a, b)`
//! (lexicographically, `a < b`) that is still unordered is fixed both ways,
//! `a > b` first, and the transitive closure is taken. Every pair the closure
//! adds is paid for at once, so a leaf's remaining budget is exactly `k`
//! minus its score. A contested pair costs at least one on either side, which
//! bounds the depth by `k` and the tree by `2^(k+1)` nodes.

use std::collections::BinaryHeap;

use crate::model::{Ranking, ScoredRanking, ScoredRankingList};

use super::{bits, Instance};

/// Size of one search run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchRun {
    pub budget: u64,
    /// Nodes visited with non-negative remaining budget.
    pub nodes: u64,
}

struct Search<'a> {
    inst: &'a Instance<'a>,
    r: usize,
    first_only: bool,
    nodes: u64,
    best: BinaryHeap<(u64, Vec<usize>)>,
}

pub(super) fn enumerate(
    inst: &Instance,
    k: u64,
    r: usize,
    first_only: bool,
) -> (ScoredRankingList, BranchRun) {
    let mut search = Search {
        inst,
        r,
        first_only,
        nodes: 0,
        best: BinaryHeap::new(),
    };
    search.visit(inst.succs.clone(), k, 0);
    debug_assert!(k >= 63 || search.nodes < 1u64 << (k + 1));
    let found = search
        .best
        .into_iter()
        .map(|(score, order)| ScoredRanking {
            ranking: Ranking::from_order_unchecked(order),
            score,
        })
        .collect();
    (
        ScoredRankingList::from_unsorted(found),
        BranchRun {
            budget: k,
            nodes: search.nodes,
        },
    )
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.first_only && !self.best.is_empty()
    }

    // `below[x]` holds everything currently ordered under `x`.
    fn visit(&mut self, below: Vec<u64>, budget: u64, score: u64) {
        self.nodes += 1;
        let m = below.len();
        let open = (0..m).find_map(|a| {
            (a + 1..m)
                .find(|&b| below[a] >> b & 1 == 0 && below[b] >> a & 1 == 0)
                .map(|b| (a, b))
        });
        let Some((a, b)) = open else {
            self.leaf(&below, score);
            return;
        };
        for (hi, lo) in [(a, b), (b, a)] {
            if self.done() {
                return;
            }
            let mut next = below.clone();
            let paid = self.close(&mut next, hi, lo);
            if paid <= budget {
                self.visit(next, budget - paid, score + paid);
            }
        }
    }

    /// Orders `hi` above `lo`, closes transitively and returns the cost of
    /// all newly ordered pairs.
    fn close(&self, below: &mut [u64], hi: usize, lo: usize) -> u64 {
        let under = below[lo] | 1 << lo;
        let mut paid = 0;
        for u in 0..below.len() {
            if u == hi || below[u] >> hi & 1 == 1 {
                let fresh = under & !below[u];
                paid += bits(fresh).map(|y| self.inst.costs.cost(u, y)).sum::<u64>();
                below[u] |= under;
            }
        }
        paid
    }

    fn leaf(&mut self, below: &[u64], score: u64) {
        let mut order: Vec<usize> = (0..below.len()).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(below[c].count_ones()));
        let entry = (score, order);
        if self.best.len() < self.r {
            self.best.push(entry);
        } else if self.best.peek().is_some_and(|worst| entry < *worst) {
            self.best.pop();
            self.best.push(entry);
        }
    }
}
