//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, O(n^3)), on bitset adjacency.

use crate::graph::{bit, bits};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [u64],
    allowed: u64,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [u64], allowed: u64) -> Self {
        let n = adj.len();
        Self {
            adj,
            allowed,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from `root`; returns its free endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in bits(self.adj[v] & self.allowed) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.allowed & bit(i) != 0 && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }

    fn run(mut self) -> Vec<usize> {
        let n = self.adj.len();
        // greedy start
        for v in bits(self.allowed) {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(u) = bits(self.adj[v] & self.allowed).find(|&u| self.mate[u] == NONE) {
                self.mate[v] = u;
                self.mate[u] = v;
            }
        }
        for root in 0..n {
            if self.allowed & bit(root) == 0 || self.mate[root] != NONE {
                continue;
            }
            if let Some(mut v) = self.find_path(root) {
                while v != NONE {
                    let pv = self.parent[v];
                    let ppv = self.mate[pv];
                    self.mate[v] = pv;
                    self.mate[pv] = v;
                    v = ppv;
                }
            }
        }
        self.mate
    }
}

/// A maximum matching of the graph induced on `allowed`, as `(u, v)` pairs
/// with `u < v`, sorted.
pub fn maximum_matching(adj: &[u64], allowed: u64) -> Vec<(usize, usize)> {
    let mate = Blossom::new(adj, allowed).run();
    let mut out = Vec::new();
    for (u, &v) in mate.iter().enumerate() {
        if v != NONE && u < v {
            out.push((u, v));
        }
    }
    out
}

/// Size of a maximum matching of the graph induced on `allowed`.
pub fn matching_number(adj: &[u64], allowed: u64) -> usize {
    maximum_matching(adj, allowed).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn brute(adj: &[u64], allowed: u64) -> usize {
        let Some(u) = bits(allowed).next() else {
            return 0;
        };
        let rest = allowed & !bit(u);
        let mut best = brute(adj, rest);
        for v in bits(adj[u] & rest) {
            best = best.max(1 + brute(adj, rest & !bit(v)));
        }
        best
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // triangle 0-1-2 with pendant paths 2-3 and 0-4-5
        let g = SimpleGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (4, 5)]);
        assert_eq!(matching_number(g.adjacency(), 0b111111), 3);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut s = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..400 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let n = 1 + (s % 11) as usize;
            let mut g = SimpleGraph::empty(n);
            let mut r = s;
            for u in 0..n {
                for v in u + 1..n {
                    r = r.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (r >> 33) % 3 == 0 {
                        g.add_edge(u, v);
                    }
                }
            }
            let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let m = maximum_matching(g.adjacency(), all);
            assert_eq!(m.len(), brute(g.adjacency(), all));
            let mut used = 0u64;
            for &(u, v) in &m {
                assert!(g.has_edge(u, v));
                assert_eq!(used & (bit(u) | bit(v)), 0);
                used |= bit(u) | bit(v);
            }
        }
    }
}
