//! Small simple graphs as `u64` adjacency bitsets.

use serde::{Deserialize, Serialize};

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Vertices strictly greater than `v`.
#[inline]
pub fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !((1u64 << (v + 1)) - 1)
    }
}

/// Iterates the set bits of `mask` in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Bitset of a vertex list.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Undirected simple graph on `0..n`, `n <= 64`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64);
        Self { adj: vec![0; n] }
    }

    pub fn from_adjacency(adj: Vec<u64>) -> Self {
        assert!(adj.len() <= 64);
        Self { adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in bits(self.adj[u] & above(u)) {
                out.push((u, v));
            }
        }
        out
    }
}
