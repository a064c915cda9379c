//! DP over positions, filled from the bottom of the ranking upwards.
//!
//! A state `(i, c, P)` places `c` at position `i`; `P` is the set of window
//! candidates already placed above `i`. Everything whose window ends before
//! `i` must also be above, so the set above `i` is `F_{<i} ∪ P` and has
//! exactly `i` members. Placing `c` costs `Σ cost(c, y)` over the candidates
//! below it. Each state keeps its best `r` completions.

use std::collections::HashMap;

use crate::model::{Ranking, ScoredRanking};

use super::windows::PositionWindows;
use super::{bits, Instance};

#[derive(Clone, Copy, Debug)]
struct Entry {
    score: u64,
    next: u8,
    rank: u32,
}

type Layer = HashMap<(u8, u64), Vec<Entry>>;

/// Subsets of `pool` with exactly `size` members.
fn subsets_of_size(pool: u64, size: u32) -> impl Iterator<Item = u64> {
    let mut sub = pool;
    let mut done = false;
    std::iter::from_fn(move || loop {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & pool;
        }
        if cur.count_ones() == size {
            return Some(cur);
        }
    })
}

pub(super) fn top_extensions(
    inst: &Instance,
    windows: &PositionWindows,
    r: usize,
) -> Vec<ScoredRanking> {
    let m = inst.m();
    let all = inst.full_mask();
    let window: Vec<u64> = (0..m).map(|i| windows.window_mask(i)).collect();
    let lo: Vec<usize> = (0..m)
        .map(|c| windows.interval(c).map_or(usize::MAX, |iv| iv.0))
        .collect();
    let hi: Vec<usize> = (0..m)
        .map(|c| windows.interval(c).map_or(0, |iv| iv.1))
        .collect();
    if (0..m).any(|c| windows.interval(c).is_none()) {
        return Vec::new();
    }
    let closed_before = |i: usize| (0..m).filter(|&c| hi[c] < i).fold(0u64, |a, c| a | 1 << c);

    let mut layers: Vec<Layer> = vec![HashMap::new(); m];
    let mut merged = Vec::new();
    for i in (0..m).rev() {
        let forced = closed_before(i);
        let Some(need) = (i as u32).checked_sub(forced.count_ones()) else {
            continue;
        };
        let eligible = bits(window[i]).filter(|&c| lo[c] < i).fold(0u64, |a, c| a | 1 << c);
        let mut layer = Layer::new();
        for c in bits(window[i]) {
            for placed in subsets_of_size(eligible & !(1 << c), need) {
                let above = forced | placed;
                if inst.preds[c] & !above != 0 {
                    continue;
                }
                let below = all & !above & !(1 << c);
                let cost = inst.costs.cost_above_mask(c, below);
                merged.clear();
                if i + 1 == m {
                    merged.push(Entry {
                        score: cost,
                        next: u8::MAX,
                        rank: 0,
                    });
                } else {
                    let above_next = above | 1 << c;
                    let key = above_next & window[i + 1];
                    for c2 in bits(window[i + 1] & !above_next) {
                        if let Some(child) = layers[i + 1].get(&(c2 as u8, key)) {
                            merged.extend(child.iter().enumerate().map(|(rank, e)| Entry {
                                score: cost + e.score,
                                next: c2 as u8,
                                rank: rank as u32,
                            }));
                        }
                    }
                    merged.sort_unstable_by_key(|e| (e.score, e.next, e.rank));
                    merged.truncate(r);
                }
                if !merged.is_empty() {
                    layer.insert((c as u8, placed), merged.clone());
                }
            }
        }
        layers[i] = layer;
    }

    let mut roots: Vec<(u64, u8, usize)> = layers[0]
        .iter()
        .flat_map(|(&(c, _), list)| list.iter().enumerate().map(move |(k, e)| (e.score, c, k)))
        .collect();
    roots.sort_unstable();
    roots.truncate(r);
    roots
        .into_iter()
        .map(|(score, c0, rank0)| {
            let mut order = Vec::with_capacity(m);
            let (mut c, mut rank, mut key, mut above) = (c0, rank0, 0u64, 0u64);
            for i in 0..m {
                order.push(c as usize);
                let e = layers[i][&(c, key)][rank];
                if i + 1 == m {
                    break;
                }
                above |= 1 << c;
                key = above & window[i + 1];
                c = e.next;
                rank = e.rank as usize;
            }
            ScoredRanking {
                ranking: Ranking::from_order_unchecked(order),
                score,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_size_subsets() {
        let mut got: Vec<u64> = subsets_of_size(0b1011, 2).collect();
        got.sort();
        assert_eq!(got, vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b101, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(0, 1).count(), 0);
    }
}
