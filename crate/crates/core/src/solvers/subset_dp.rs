//! DP over the set of candidates still to be placed.
//!
//! `T[S]` lists the best `r` linear extensions of ρ restricted to `S`. A
//! ranking of `S` is a head `c` followed by a ranking of `S \ {c}`, and putting
//! `c` on top costs `Σ_{y ∈ S\{c}} cost(c, y)`. Only sets closed under
//! ρ-successors occur, and only heads with no ρ-predecessor left in `S`.

use crate::error::{Error, Result};
use crate::model::{Ranking, ScoredRanking};
use crate::Limits;

use super::{bits, Instance};

#[derive(Clone, Copy, Debug)]
struct Entry {
    score: u64,
    head: u8,
    rank: u32,
}

pub(super) fn top_extensions(
    inst: &Instance,
    r: usize,
    limits: &Limits,
) -> Result<Vec<ScoredRanking>> {
    let m = inst.m();
    if m > limits.max_subset_candidates {
        return Err(Error::Resource {
            what: "subset DP",
            limit: limits.max_subset_candidates,
            actual: m,
        });
    }
    let states = 1usize << m;
    let mut table: Vec<Vec<Entry>> = vec![Vec::new(); states];
    table[0].push(Entry {
        score: 0,
        head: u8::MAX,
        rank: 0,
    });
    let mut merged = Vec::new();
    for set in 1..states {
        let s = set as u64;
        if bits(s).any(|x| inst.succs[x] & !s != 0) {
            continue;
        }
        merged.clear();
        for c in bits(s) {
            if inst.preds[c] & s != 0 {
                continue;
            }
            let rest = s & !(1 << c);
            let head = inst.costs.cost_above_mask(c, rest);
            merged.extend(table[rest as usize].iter().enumerate().map(|(rank, e)| Entry {
                score: head + e.score,
                head: c as u8,
                rank: rank as u32,
            }));
        }
        merged.sort_unstable_by_key(|e| (e.score, e.head, e.rank));
        merged.truncate(r);
        table[set] = merged.clone();
    }

    let full = states - 1;
    Ok(table[full]
        .iter()
        .enumerate()
        .map(|(top, first)| {
            let mut order = Vec::with_capacity(m);
            let (mut set, mut rank) = (full, top);
            while set != 0 {
                let e = table[set][rank];
                order.push(e.head as usize);
                set &= !(1 << e.head);
                rank = e.rank as usize;
            }
            ScoredRanking {
                ranking: Ranking::from_order_unchecked(order),
                score: first.score,
            }
        })
        .collect())
}
