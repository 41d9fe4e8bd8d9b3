//! Complete bipartite subgraphs `K_{l,m}` by common-neighborhood
//! intersection over `l`-subsets.

use crate::graph::{above, bit, bits};

/// First (lexicographic) `l`-set `A` inside `mask` whose common
/// neighborhood has at least `m` vertices, with that neighborhood.
pub fn find_complete_bipartite(adj: &[u64], mask: u64, l: usize, m: usize) -> Option<(Vec<usize>, u64)> {
    if l == 0 {
        return None;
    }
    let eligible = bits(mask)
        .filter(|&v| (adj[v] & mask).count_ones() as usize >= m)
        .fold(0u64, |acc, v| acc | bit(v));
    let mut chosen = Vec::with_capacity(l);
    extend(adj, mask, eligible, mask, l, m, &mut chosen)
}

fn extend(
    adj: &[u64],
    mask: u64,
    candidates: u64,
    common: u64,
    l: usize,
    m: usize,
    chosen: &mut Vec<usize>,
) -> Option<(Vec<usize>, u64)> {
    if chosen.len() == l {
        return Some((chosen.clone(), common));
    }
    let need = l - chosen.len();
    for v in bits(candidates) {
        if ((candidates & above(v)).count_ones() as usize) + 1 < need {
            break;
        }
        let next = common & adj[v] & mask;
        if (next.count_ones() as usize) < m {
            continue;
        }
        chosen.push(v);
        if let Some(hit) = extend(adj, mask, candidates & above(v), next, l, m, chosen) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

/// Whether some `K_{l,m}` contains the edge `{x, y}` (already in `adj`).
pub fn complete_bipartite_through_edge(adj: &[u64], x: usize, y: usize, l: usize, m: usize) -> bool {
    if through_oriented(adj, x, y, l, m) {
        return true;
    }
    l != m && through_oriented(adj, y, x, l, m)
}

// x on the l-side, y on the m-side
fn through_oriented(adj: &[u64], x: usize, y: usize, l: usize, m: usize) -> bool {
    if (adj[x].count_ones() as usize) < m || (adj[y].count_ones() as usize) < l {
        return false;
    }
    let pool = adj[y] & !bit(x);
    subsets_keep(adj, pool, adj[x], l - 1, m)
}

fn subsets_keep(adj: &[u64], pool: u64, common: u64, need: usize, m: usize) -> bool {
    if need == 0 {
        return common.count_ones() as usize >= m;
    }
    if (pool.count_ones() as usize) < need {
        return false;
    }
    for s in bits(pool) {
        let next = common & adj[s];
        if (next.count_ones() as usize) < m {
            continue;
        }
        if subsets_keep(adj, pool & above(s), next, need - 1, m) {
            return true;
        }
    }
    false
}

/// Whether the graph contains `K_p` through the edge `{x, y}`.
pub fn clique_through_edge(adj: &[u64], x: usize, y: usize, p: usize) -> bool {
    if p <= 2 {
        return true;
    }
    has_clique(adj, adj[x] & adj[y], p - 2)
}

/// Whether the vertices in `pool` contain a clique of order `size`.
pub fn has_clique(adj: &[u64], pool: u64, size: usize) -> bool {
    find_clique(adj, pool, size).is_some()
}

/// First clique of order `size` inside `pool`, found by extension in
/// increasing vertex order.
pub fn find_clique(adj: &[u64], pool: u64, size: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::with_capacity(size);
    grow_clique(adj, pool, size, &mut chosen).then_some(chosen)
}

fn grow_clique(adj: &[u64], pool: u64, size: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == size {
        return true;
    }
    if chosen.len() + (pool.count_ones() as usize) < size {
        return false;
    }
    for v in bits(pool) {
        chosen.push(v);
        if grow_clique(adj, pool & adj[v] & above(v), size, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
