//! DP along a nice ρ-consistent path decomposition.
//!
//! Rankings are grown from the top. At event `i` the admissible prefixes are
//! `forg(i) ∪ T` for `T ⊆ bag(i)`: consistency puts every forgotten candidate
//! above every candidate introduced later, so any linear extension of ρ passes
//! through such prefixes only. Appending `y` below prefix `U \ {y}` pays
//! `Σ_{z ∉ U} cost(y, z)`, the pairs it forms with everything still unplaced.
//! Each prefix keeps its best `r` orderings.

use std::collections::HashMap;

use crate::decomposition::{DecompositionContext, Event, NicePathDecomposition};
use crate::error::{Error, Result};
use crate::model::{Ranking, ScoredRanking};

use super::{bits, select, Instance, Solution, SolveRequest, SolveStats};

type Table = HashMap<u64, Vec<(u64, Vec<u8>)>>;

pub(super) fn solve(
    inst: &Instance,
    req: &SolveRequest,
    d: &NicePathDecomposition,
) -> Result<Solution> {
    let top = top_extensions(inst, d, req.r)?;
    let (rankings, k_opt) = select(top, req.mode);
    Ok(Solution {
        rankings,
        k_opt,
        stats: SolveStats {
            decomposition_width: Some(d.width()),
            ..SolveStats::default()
        },
    })
}

fn top_extensions(
    inst: &Instance,
    d: &NicePathDecomposition,
    r: usize,
) -> Result<Vec<ScoredRanking>> {
    if d.width() >= 30 {
        return Err(Error::Resource {
            what: "pathwidth DP bag",
            limit: 30,
            actual: d.width() + 1,
        });
    }
    let all = inst.full_mask();
    let ctx = DecompositionContext::new(d);
    let mut table = Table::new();
    table.insert(0, vec![(0, Vec::new())]);
    let mut merged = Vec::new();
    for (i, event) in d.events().iter().enumerate() {
        let forg = ctx.forgotten[i];
        match *event {
            Event::Introduce(x) => {
                let others = d.bags()[i] & !(1 << x);
                let mut subsets: Vec<u64> = Vec::new();
                let mut s = others;
                loop {
                    subsets.push(s);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & others;
                }
                subsets.sort_by_key(|s| s.count_ones());
                for s in subsets {
                    let set = forg | s | 1 << x;
                    merged.clear();
                    for y in bits(s | 1 << x) {
                        let rest = set & !(1 << y);
                        if inst.preds[y] & !rest != 0 {
                            continue;
                        }
                        let Some(list) = table.get(&rest) else {
                            continue;
                        };
                        let pay = inst.costs.cost_above_mask(y, all & !set);
                        merged.extend(list.iter().map(|(score, order)| {
                            let mut order = order.clone();
                            order.push(y as u8);
                            (score + pay, order)
                        }));
                    }
                    merged.sort_unstable();
                    merged.truncate(r);
                    if !merged.is_empty() {
                        table.insert(set, std::mem::take(&mut merged));
                    }
                }
            }
            Event::Forget(x) => table.retain(|set, _| set >> x & 1 == 1),
        }
    }
    Ok(table
        .remove(&all)
        .unwrap_or_default()
        .into_iter()
        .map(|(score, order)| ScoredRanking {
            ranking: Ranking::from_order_unchecked(order.into_iter().map(usize::from).collect()),
            score,
        })
        .collect())
}
