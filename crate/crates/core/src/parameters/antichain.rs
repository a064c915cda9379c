use super::{NonUnanimityGraph, UnanimityOrder};

/// Width of the unanimity order, which equals the clique number of the
/// non-unanimity graph.
///
/// Computed as `m` minus a maximum matching in the split bipartite graph
/// (`a` on the left joined to `b` on the right whenever `(a, b)` is unanimous);
/// the order is transitive, so that matching is a minimum chain cover.
pub fn max_antichain_size(order: &UnanimityOrder) -> usize {
    let m = order.m();
    if m == 0 {
        return 0;
    }
    let succ: Vec<Vec<usize>> = (0..m)
        .map(|a| (0..m).filter(|&b| order.prefers(a, b)).collect())
        .collect();
    let mut matched_left: Vec<Option<usize>> = vec![None; m];
    let mut matching = 0;
    for a in 0..m {
        let mut visited = vec![false; m];
        if augment(a, &succ, &mut matched_left, &mut visited) {
            matching += 1;
        }
    }
    m - matching
}

// Kuhn's augmenting path search; `owner[b]` is the left vertex matched to `b`.
fn augment(
    a: usize,
    succ: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &b in &succ[a] {
        if visited[b] {
            continue;
        }
        visited[b] = true;
        let free = match owner[b] {
            None => true,
            Some(prev) => augment(prev, succ, owner, visited),
        };
        if free {
            owner[b] = Some(a);
            return true;
        }
    }
    false
}

/// Clique number by exhaustive Bron–Kerbosch search. Exponential; kept as an
/// independent cross-check for [`max_antichain_size`]. Needs `m <= 64`.
pub fn max_clique_exhaustive(graph: &NonUnanimityGraph) -> usize {
    let m = graph.m();
    if m == 0 {
        return 0;
    }
    let nbrs = graph
        .neighbor_masks()
        .expect("exhaustive clique search needs m <= 64");
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut best = 0;
    bron_kerbosch(0, all, 0, &nbrs, &mut best);
    best
}

fn bron_kerbosch(size: usize, mut cand: u64, mut excl: u64, nbrs: &[u64], best: &mut usize) {
    if cand == 0 {
        if excl == 0 {
            *best = (*best).max(size);
        }
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        bron_kerbosch(size + 1, cand & nbrs[v], excl & nbrs[v], nbrs, best);
        cand &= !(1 << v);
        excl |= 1 << v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_has_width_one() {
        let order = UnanimityOrder::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(max_antichain_size(&order), 1);
        assert_eq!(max_clique_exhaustive(&NonUnanimityGraph::of(&order)), 1);
    }

    #[test]
    fn empty_order_is_one_antichain() {
        let order = UnanimityOrder::from_pairs(5, &[]).unwrap();
        assert_eq!(max_antichain_size(&order), 5);
        assert_eq!(max_clique_exhaustive(&NonUnanimityGraph::of(&order)), 5);
    }

    #[test]
    fn two_parallel_chains() {
        let order = UnanimityOrder::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_antichain_size(&order), 2);
        assert_eq!(max_clique_exhaustive(&NonUnanimityGraph::of(&order)), 2);
    }

    #[test]
    fn matching_graph_clique() {
        let g = NonUnanimityGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(max_clique_exhaustive(&g), 2);
    }
}
