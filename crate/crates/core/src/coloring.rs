//! Edge-colored complete graphs and the primitive predicates on them.
//!
//! An [`EdgeColoring`] stores one color per unordered vertex pair in a flat
//! upper-triangular array, plus per-color adjacency bitsets (one `u64` per
//! vertex), so vertex counts are capped at [`MAX_VERTICES`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{above, bit, SimpleGraph};

/// Largest supported vertex count (single-word adjacency bitsets).
pub const MAX_VERTICES: usize = 64;

/// Dense color id in `0..k`.
pub type Color = u8;

/// Largest supported palette.
pub const MAX_COLORS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("pair ({0}, {1}) has no color")]
    MissingPair(usize, usize),
    #[error("color {color} out of range for a {k}-color palette")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("invalid vertex pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    BadOrder(usize),
    #[error("palette size {0} outside 1..={MAX_COLORS}")]
    BadPalette(usize),
    #[error("expected {expected} inner colorings, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Index of pair `(u, v)`, `u < v`, in row-major upper-triangular order.
#[inline]
pub(crate) fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// A k-edge-coloring of the complete graph on `n` vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<Color>,
    // classes[c][v]: neighbors of v in color c
    classes: Vec<Vec<u64>>,
}

impl EdgeColoring {
    /// Builds a coloring from an explicit pair map. Keys may be given in
    /// either orientation.
    pub fn new(
        n: usize,
        k: usize,
        assignments: &BTreeMap<(usize, usize), Color>,
    ) -> Result<Self, ColoringError> {
        check_dims(n, k)?;
        let mut colors = vec![Color::MAX; n * (n - 1) / 2];
        for (&(a, b), &c) in assignments {
            if a == b || a >= n || b >= n {
                return Err(ColoringError::InvalidPair(a, b));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            colors[pair_index(n, u, v)] = c;
        }
        for u in 0..n {
            for v in u + 1..n {
                if colors[pair_index(n, u, v)] == Color::MAX {
                    return Err(ColoringError::MissingPair(u, v));
                }
            }
        }
        Self::from_flat(n, k, colors)
    }

    /// Builds a coloring by evaluating `f(u, v)` for every `u < v`.
    pub fn from_fn<F>(n: usize, k: usize, mut f: F) -> Result<Self, ColoringError>
    where
        F: FnMut(usize, usize) -> Color,
    {
        check_dims(n, k)?;
        let mut colors = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                colors.push(f(u, v));
            }
        }
        Self::from_flat(n, k, colors)
    }

    /// Builds a coloring from the row-major upper-triangular color list.
    pub fn from_flat(n: usize, k: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        check_dims(n, k)?;
        if colors.len() != n * (n - 1) / 2 {
            let missing = colors.len();
            // first pair past the supplied prefix
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if idx == missing {
                        return Err(ColoringError::MissingPair(u, v));
                    }
                    idx += 1;
                }
            }
            return Err(ColoringError::InvalidPair(n, n));
        }
        let mut classes = vec![vec![0u64; n]; k];
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                let c = colors[idx] as usize;
                if c >= k {
                    return Err(ColoringError::ColorOutOfRange { color: c, k });
                }
                classes[c][u] |= bit(v);
                classes[c][v] |= bit(u);
                idx += 1;
            }
        }
        Ok(Self {
            n,
            k,
            colors,
            classes,
        })
    }

    /// A single-color complete graph.
    pub fn monochromatic(n: usize, k: usize, color: Color) -> Result<Self, ColoringError> {
        Self::from_fn(n, k, |_, _| color)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the pair `{u, v}`; panics on `u == v` or out-of-range vertices.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "no color on a loop");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, a, b)]
    }

    /// Neighbors of `v` in color `c` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize, c: Color) -> u64 {
        self.classes[c as usize][v]
    }

    /// Degree of `v` in color `c`.
    pub fn color_degree(&self, v: usize, c: Color) -> usize {
        self.classes[c as usize][v].count_ones() as usize
    }

    /// Row-major upper-triangular color list.
    pub fn flat(&self) -> &[Color] {
        &self.colors
    }

    /// Iterator over `(u, v, color)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Color)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
            .zip(self.colors.iter().copied())
            .map(|((u, v), c)| (u, v, c))
    }

    /// Sorted list of colors appearing on at least one edge.
    pub fn used_colors(&self) -> Vec<Color> {
        (0..self.k as Color)
            .filter(|&c| self.classes[c as usize].iter().any(|&m| m != 0))
            .collect()
    }

    /// True when every one of the `k` colors appears on some edge.
    pub fn palette_full(&self) -> bool {
        self.used_colors().len() == self.k
    }

    /// The simple graph of pairs colored `color`.
    pub fn color_class(&self, color: Color) -> Result<SimpleGraph, ColoringError> {
        if color as usize >= self.k {
            return Err(ColoringError::ColorOutOfRange {
                color: color as usize,
                k: self.k,
            });
        }
        Ok(SimpleGraph::from_adjacency(
            self.classes[color as usize].clone(),
        ))
    }

    /// Some triple whose three edges carry three distinct colors, if any.
    ///
    /// Returns the lexicographically first such triple.
    pub fn find_rainbow_triangle(&self) -> Option<[usize; 3]> {
        if self.k < 3 || self.n < 3 {
            return None;
        }
        let n = self.n;
        for u in 0..n {
            for v in u + 1..n {
                let c = self.color(u, v);
                // w > v with col(u,w) = a != c and col(v,w) not in {a, c}
                let later = above(v) & full_mask(n);
                let mut best: Option<usize> = None;
                for a in 0..self.k as Color {
                    if a == c {
                        continue;
                    }
                    let cand = self.neighbors(u, a)
                        & !self.neighbors(v, a)
                        & !self.neighbors(v, c)
                        & later;
                    if cand != 0 {
                        let w = cand.trailing_zeros() as usize;
                        best = Some(best.map_or(w, |b| b.min(w)));
                    }
                }
                if let Some(w) = best {
                    return Some([u, v, w]);
                }
            }
        }
        None
    }

    /// True when the coloring has no rainbow triangle.
    pub fn is_gallai(&self) -> bool {
        self.find_rainbow_triangle().is_none()
    }

    /// Coloring induced on `vertices`, relabeled `0..vertices.len()` in the
    /// given order. The palette is unchanged.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, ColoringError> {
        Self::from_fn(vertices.len(), self.k, |i, j| {
            self.color(vertices[i], vertices[j])
        })
    }

    /// Same edges with colors passed through `map` into a palette of size `k`.
    pub fn recolor(&self, k: usize, map: &[Color]) -> Result<Self, ColoringError> {
        let mut flat = Vec::with_capacity(self.colors.len());
        for &c in &self.colors {
            let m = *map.get(c as usize).ok_or(ColoringError::ColorOutOfRange {
                color: c as usize,
                k: map.len(),
            })?;
            flat.push(m);
        }
        Self::from_flat(self.n, k, flat)
    }

    /// Same edges with a widened palette.
    pub fn with_palette(&self, k: usize) -> Result<Self, ColoringError> {
        if k < self.k {
            if let Some(&c) = self.colors.iter().find(|&&c| c as usize >= k) {
                return Err(ColoringError::ColorOutOfRange { color: c as usize, k });
            }
        }
        Self::from_flat(self.n, k, self.colors.clone())
    }

    /// Blow-up: vertex `i` of `self` replaced by `inners[i]`.
    ///
    /// Edges between blobs inherit the outer pair's color; edges inside blob
    /// `i` take `relabel[i][inner_color]`. The combined palette is the
    /// smallest one containing every color used.
    pub fn substitute(
        &self,
        inners: &[EdgeColoring],
        relabel: &[Vec<Color>],
    ) -> Result<Self, ColoringError> {
        if inners.len() != self.n {
            return Err(ColoringError::ArityMismatch {
                expected: self.n,
                got: inners.len(),
            });
        }
        if relabel.len() != self.n {
            return Err(ColoringError::ArityMismatch {
                expected: self.n,
                got: relabel.len(),
            });
        }
        let total: usize = inners.iter().map(|c| c.n).sum();
        if total == 0 || total > MAX_VERTICES {
            return Err(ColoringError::BadOrder(total));
        }
        let mut owner = Vec::with_capacity(total);
        let mut local = Vec::with_capacity(total);
        for (i, inner) in inners.iter().enumerate() {
            if relabel[i].len() < inner.k {
                return Err(ColoringError::ColorOutOfRange {
                    color: inner.k - 1,
                    k: relabel[i].len(),
                });
            }
            for x in 0..inner.n {
                owner.push(i);
                local.push(x);
            }
        }
        let mut k = self.k;
        for (i, inner) in inners.iter().enumerate() {
            for &c in inner.used_colors().iter() {
                k = k.max(relabel[i][c as usize] as usize + 1);
            }
        }
        Self::from_fn(total, k, |u, v| {
            let (bu, bv) = (owner[u], owner[v]);
            if bu == bv {
                relabel[bu][inners[bu].color(local[u], local[v]) as usize]
            } else {
                self.color(bu, bv)
            }
        })
    }
}

fn check_dims(n: usize, k: usize) -> Result<(), ColoringError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(ColoringError::BadOrder(n));
    }
    if k == 0 || k > MAX_COLORS {
        return Err(ColoringError::BadPalette(k));
    }
    Ok(())
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}, k={}, [", self.n, self.k)?;
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// Shift map `c -> c + offset` for a palette of size `k`.
pub fn shifted(k: usize, offset: Color) -> Vec<Color> {
    (0..k as Color).map(|c| c + offset).collect()
}

/// The 2-coloring of K5 with a red (color 0) 5-cycle and blue pentagram.
pub fn pentagon() -> EdgeColoring {
    EdgeColoring::from_fn(5, 2, |u, v| {
        let d = v - u;
        if d == 1 || d == 4 {
            0
        } else {
            1
        }
    })
    .expect("pentagon is well formed")
}

/// A partially colored complete graph, grown edge by edge.
///
/// Used by the search engine; supports O(k) incremental rainbow checks.
#[derive(Debug, Clone)]
pub struct PartialColoring {
    n: usize,
    k: usize,
    // classes[c][v]
    classes: Vec<[u64; MAX_VERTICES]>,
    assigned: [u64; MAX_VERTICES],
}

impl PartialColoring {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_VERTICES && k <= MAX_COLORS);
        Self {
            n,
            k,
            classes: vec![[0; MAX_VERTICES]; k],
            assigned: [0; MAX_VERTICES],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn neighbors(&self, v: usize, c: Color) -> u64 {
        self.classes[c as usize][v]
    }

    #[inline]
    pub fn class(&self, c: Color) -> &[u64] {
        &self.classes[c as usize][..self.n]
    }

    #[inline]
    pub fn is_assigned(&self, u: usize, v: usize) -> bool {
        self.assigned[u] & bit(v) != 0
    }

    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        (0..self.k as Color).find(|&c| self.classes[c as usize][u] & bit(v) != 0)
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, c: Color) {
        debug_assert!(!self.is_assigned(u, v));
        self.classes[c as usize][u] |= bit(v);
        self.classes[c as usize][v] |= bit(u);
        self.assigned[u] |= bit(v);
        self.assigned[v] |= bit(u);
    }

    #[inline]
    pub fn unset(&mut self, u: usize, v: usize, c: Color) {
        self.classes[c as usize][u] &= !bit(v);
        self.classes[c as usize][v] &= !bit(u);
        self.assigned[u] &= !bit(v);
        self.assigned[v] &= !bit(u);
    }

    /// A vertex `w` such that coloring `{u, v}` with `c` would close a
    /// rainbow triangle `u v w` against already-colored pairs.
    #[inline]
    pub fn rainbow_apex(&self, u: usize, v: usize, c: Color) -> Option<usize> {
        let both = self.assigned[u] & self.assigned[v];
        if both == 0 {
            return None;
        }
        let cv = self.classes[c as usize][v];
        for a in 0..self.k {
            if a == c as usize {
                continue;
            }
            let cand = self.classes[a][u] & both & !self.classes[a][v] & !cv;
            if cand != 0 {
                return Some(cand.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Freezes a fully assigned partial coloring.
    pub fn to_coloring(&self) -> Option<EdgeColoring> {
        let mut flat = Vec::with_capacity(self.n * (self.n.saturating_sub(1)) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                flat.push(self.color(u, v)?);
            }
        }
        if self.n == 1 {
            return EdgeColoring::from_flat(1, self.k.max(1), flat).ok();
        }
        EdgeColoring::from_flat(self.n, self.k, flat).ok()
    }
}

/// Symbolic monochromatic target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetGraph {
    /// `K_{small,large}` with `small <= large`.
    CompleteBipartite { small: usize, large: usize },
    /// `t P2`: `t` disjoint edges.
    Matching(usize),
    /// `t P3`: `t` disjoint paths on three vertices.
    P3Forest(usize),
    /// `K_{1,t}`: `t` leaves.
    Star(usize),
    /// `K_p`.
    Clique(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TargetError {
    #[error("target sizes must be at least 1")]
    ZeroSize,
    #[error("complete bipartite target needs small <= large (got {0}, {1})")]
    Unordered(usize, usize),
    #[error("cannot parse target `{0}`")]
    Syntax(String),
}

impl TargetGraph {
    pub fn complete_bipartite(small: usize, large: usize) -> Result<Self, TargetError> {
        let t = TargetGraph::CompleteBipartite { small, large };
        t.validate()?;
        Ok(t)
    }

    /// `C4 = K_{2,2}`.
    pub const C4: TargetGraph = TargetGraph::CompleteBipartite { small: 2, large: 2 };

    pub fn validate(&self) -> Result<(), TargetError> {
        match *self {
            TargetGraph::CompleteBipartite { small, large } => {
                if small == 0 || large == 0 {
                    Err(TargetError::ZeroSize)
                } else if small > large {
                    Err(TargetError::Unordered(small, large))
                } else {
                    Ok(())
                }
            }
            TargetGraph::Matching(t)
            | TargetGraph::P3Forest(t)
            | TargetGraph::Star(t)
            | TargetGraph::Clique(t) => {
                if t == 0 {
                    Err(TargetError::ZeroSize)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Order of the smallest side of the bipartition; `None` for cliques.
    pub fn s_value(&self) -> Option<usize> {
        match *self {
            TargetGraph::CompleteBipartite { small, .. } => Some(small),
            TargetGraph::Matching(t) | TargetGraph::P3Forest(t) => Some(t),
            TargetGraph::Star(_) => Some(1),
            TargetGraph::Clique(_) => None,
        }
    }

    /// Number of vertices of the target.
    pub fn order(&self) -> usize {
        match *self {
            TargetGraph::CompleteBipartite { small, large } => small + large,
            TargetGraph::Matching(t) => 2 * t,
            TargetGraph::P3Forest(t) => 3 * t,
            TargetGraph::Star(t) => t + 1,
            TargetGraph::Clique(p) => p,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        match *self {
            TargetGraph::Clique(p) => p <= 2,
            _ => true,
        }
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TargetGraph::CompleteBipartite { small, large } => write!(f, "K{small},{large}"),
            TargetGraph::Matching(t) => write!(f, "{t}P2"),
            TargetGraph::P3Forest(t) => write!(f, "{t}P3"),
            TargetGraph::Star(t) => write!(f, "S{t}"),
            TargetGraph::Clique(p) => write!(f, "K{p}"),
        }
    }
}

impl std::str::FromStr for TargetGraph {
    type Err = TargetError;

    /// Accepts `K2,3`, `C4`, `2P2`, `P3`, `3P3`, `S4`, `K3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || TargetError::Syntax(s.to_string());
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let target = if t.eq_ignore_ascii_case("c4") {
            TargetGraph::C4
        } else if let Some(rest) = t.strip_prefix(['K', 'k']) {
            match rest.split_once(',') {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b)?);
                    TargetGraph::CompleteBipartite {
                        small: a.min(b),
                        large: a.max(b),
                    }
                }
                None => TargetGraph::Clique(num(rest)?),
            }
        } else if let Some(rest) = t.strip_prefix(['S', 's']) {
            TargetGraph::Star(num(rest)?)
        } else if let Some(rest) = t.strip_suffix("P2").or_else(|| t.strip_suffix("p2")) {
            TargetGraph::Matching(if rest.is_empty() { 1 } else { num(rest)? })
        } else if let Some(rest) = t.strip_suffix("P3").or_else(|| t.strip_suffix("p3")) {
            TargetGraph::P3Forest(if rest.is_empty() { 1 } else { num(rest)? })
        } else {
            return Err(bad());
        };
        target.validate()?;
        Ok(target)
    }
}
