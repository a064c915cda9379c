use crate::error::{Error, Result};

use super::NonUnanimityGraph;

/// Exact pathwidth together with a vertex ordering that attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pathwidth {
    pub width: usize,
    pub ordering: Vec<usize>,
}

/// Exact pathwidth via vertex separation: the minimum over vertex orderings of
/// the largest number of placed vertices that still have an unplaced
/// neighbour. Runs a subset DP over `2^m` states, so `m` must not exceed
/// `limit`.
pub fn pathwidth(graph: &NonUnanimityGraph, limit: usize) -> Result<Pathwidth> {
    let m = graph.m();
    if m > limit {
        return Err(Error::Resource {
            what: "exact pathwidth",
            limit,
            actual: m,
        });
    }
    let nbrs = graph.neighbor_masks()?;
    let (width, ordering) =
        min_vertex_separation(&nbrs, None).expect("every ordering is admissible");
    Ok(Pathwidth { width, ordering })
}

/// Vertex separation DP over prefix sets.
///
/// With `preds`, only orderings in which every vertex follows all of
/// `preds[v]` are considered (prefix sets must be downward closed). Returns
/// `None` when no admissible ordering exists, i.e. when `preds` is cyclic.
pub(crate) fn min_vertex_separation(
    nbrs: &[u64],
    preds: Option<&[u64]>,
) -> Option<(usize, Vec<usize>)> {
    let m = nbrs.len();
    assert!(m < 32, "subset DP over {m} vertices");
    let states = 1usize << m;
    const UNREACHED: u8 = u8::MAX;
    let mut best = vec![UNREACHED; states];
    let mut last = vec![0u8; states];
    best[0] = 0;
    for set in 1..states {
        let s = set as u64;
        let mut choice = UNREACHED;
        let mut value = UNREACHED;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = (s & !(1 << v)) as usize;
            if best[prev] == UNREACHED {
                continue;
            }
            if let Some(p) = preds {
                if p[v] & !(prev as u64) != 0 {
                    continue;
                }
            }
            if best[prev] < value {
                value = best[prev];
                choice = v as u8;
            }
        }
        if choice == UNREACHED {
            continue;
        }
        let boundary = (0..m)
            .filter(|&u| s >> u & 1 == 1 && nbrs[u] & !s != 0)
            .count() as u8;
        best[set] = value.max(boundary);
        last[set] = choice;
    }
    let full = states - 1;
    if best[full] == UNREACHED {
        return None;
    }
    let mut ordering = Vec::with_capacity(m);
    let mut set = full;
    while set != 0 {
        let v = last[set] as usize;
        ordering.push(v);
        set &= !(1 << v);
    }
    ordering.reverse();
    Some((best[full] as usize, ordering))
}

/// Vertex separation of one fixed ordering.
#[cfg(test)]
pub(crate) fn separation_of(nbrs: &[u64], ordering: &[usize]) -> usize {
    let mut placed = 0u64;
    let mut worst = 0;
    for &v in ordering {
        placed |= 1 << v;
        let boundary = ordering
            .iter()
            .filter(|&&u| placed >> u & 1 == 1 && nbrs[u] & !placed != 0)
            .count();
        worst = worst.max(boundary);
    }
    worst
}
