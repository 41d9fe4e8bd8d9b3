//! Exact packing of vertex-disjoint paths on three vertices.
//!
//! Branches on the lowest vertex of positive degree in the residual set:
//! discard it, use it as a center, or use it as an end. The optimizing
//! variant memoizes on the residual bitset.

use std::collections::HashMap;

use crate::graph::{above, bit, bits};

/// Drops vertices with no neighbor inside `mask`.
#[inline]
fn trim(adj: &[u64], mut mask: u64) -> u64 {
    for v in bits(mask) {
        if adj[v] & mask == 0 {
            mask &= !bit(v);
        }
    }
    mask
}

/// Every P3 using the lowest non-isolated vertex `v` of `mask`, as
/// `[end, center, end]`.
fn paths_at(adj: &[u64], mask: u64, v: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    let nv = adj[v] & mask;
    // v as center
    for x in bits(nv) {
        for y in bits(nv & above(x)) {
            out.push([x, v, y]);
        }
    }
    // v as an end
    for c in bits(nv) {
        for w in bits(adj[c] & mask & !bit(v)) {
            out.push([v, c, w]);
        }
    }
    out
}

/// Whether the graph induced on `mask` holds `t` disjoint P3s.
pub fn p3_packing_at_least(adj: &[u64], mask: u64, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    let mask = trim(adj, mask);
    if (mask.count_ones() as usize) < 3 * t {
        return false;
    }
    let v = mask.trailing_zeros() as usize;
    for [a, b, c] in paths_at(adj, mask, v) {
        if p3_packing_at_least(adj, mask & !(bit(a) | bit(b) | bit(c)), t - 1) {
            return true;
        }
    }
    p3_packing_at_least(adj, mask & !bit(v), t)
}

struct Packer<'a> {
    adj: &'a [u64],
    memo: HashMap<u64, usize>,
}

impl Packer<'_> {
    fn best(&mut self, mask: u64) -> usize {
        let mask = trim(self.adj, mask);
        if mask.count_ones() < 3 {
            return 0;
        }
        if let Some(&b) = self.memo.get(&mask) {
            return b;
        }
        let v = mask.trailing_zeros() as usize;
        let mut best = self.best(mask & !bit(v));
        let ceiling = mask.count_ones() as usize / 3;
        if best < ceiling {
            for [a, b, c] in paths_at(self.adj, mask, v) {
                let got = 1 + self.best(mask & !(bit(a) | bit(b) | bit(c)));
                if got > best {
                    best = got;
                    if best == ceiling {
                        break;
                    }
                }
            }
        }
        self.memo.insert(mask, best);
        best
    }

    fn rebuild(&mut self, mask: u64, out: &mut Vec<[usize; 3]>) {
        let mask = trim(self.adj, mask);
        let target = self.best(mask);
        if target == 0 {
            return;
        }
        let v = mask.trailing_zeros() as usize;
        for p in paths_at(self.adj, mask, v) {
            let rest = mask & !(bit(p[0]) | bit(p[1]) | bit(p[2]));
            if 1 + self.best(rest) == target {
                out.push(p);
                self.rebuild(rest, out);
                return;
            }
        }
        self.rebuild(mask & !bit(v), out);
    }
}

/// A maximum family of disjoint P3s inside `mask`, each as
/// `[end, center, end]`.
pub fn maximum_p3_packing(adj: &[u64], mask: u64) -> Vec<[usize; 3]> {
    let mut packer = Packer {
        adj,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    packer.rebuild(mask, &mut out);
    out
}

/// Whether some packing of `t` P3s inside `mask` uses the edge `{u, v}`,
/// which must already be present in `adj`.
pub fn p3_packing_through_edge(adj: &[u64], mask: u64, u: usize, v: usize, t: usize) -> bool {
    if t == 0 {
        return true;
    }
    let uv = bit(u) | bit(v);
    let thirds = (adj[u] | adj[v]) & mask & !uv;
    for w in bits(thirds) {
        if p3_packing_at_least(adj, mask & !uv & !bit(w), t - 1) {
            return true;
        }
    }
    false
}
