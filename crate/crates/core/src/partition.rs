//! Gallai partitions: vertex partitions of a rainbow-triangle-free coloring
//! with one color between each pair of parts and at most two colors between
//! parts overall.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{pair_index, Color, ColoringError, EdgeColoring};
use crate::detect::{find_mono_complete_bipartite, MonoWitness};
use crate::graph::{bit, bits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("coloring has a rainbow triangle {0:?}")]
    NotGallai([usize; 3]),
    #[error("need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(Violation),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("monochromatic K{l},{m} present: {witness:?}")]
    HasMonoTarget { l: usize, m: usize, witness: Box<MonoWitness> },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// A Gallai partition of some coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPartition {
    pub parts: Vec<Vec<usize>>,
    /// Colors used between parts, sorted, at most two.
    pub reduced_colors: Vec<Color>,
    /// Upper-triangular pair colors over part indices.
    pair_colors: Vec<Color>,
}

impl GallaiPartition {
    /// Reads pair colors off `c` from one representative per part. The
    /// result is not validated.
    pub fn from_parts(c: &EdgeColoring, parts: Vec<Vec<usize>>) -> Self {
        let p = parts.len();
        let mut pair_colors = Vec::with_capacity(p * p.saturating_sub(1) / 2);
        let mut seen = BTreeSet::new();
        for i in 0..p {
            for j in i + 1..p {
                let col = match (parts[i].first(), parts[j].first()) {
                    (Some(&u), Some(&v)) if u != v && u < c.n() && v < c.n() => c.color(u, v),
                    _ => 0,
                };
                seen.insert(col);
                pair_colors.push(col);
            }
        }
        Self {
            parts,
            reduced_colors: seen.into_iter().collect(),
            pair_colors,
        }
    }

    /// All-singletons partition.
    pub fn singletons(c: &EdgeColoring) -> Self {
        Self::from_parts(c, (0..c.n()).map(|v| vec![v]).collect())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Color between parts `i` and `j`, `None` for `i == j` or out of range.
    pub fn pair_color(&self, i: usize, j: usize) -> Option<Color> {
        let p = self.parts.len();
        if i == j || i >= p || j >= p {
            return None;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Some(self.pair_colors[pair_index(p, a, b)])
    }

    pub fn largest_part(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Part index of each vertex of an `n`-vertex coloring.
    pub fn owners(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }
}

/// First reason a partition fails to be a Gallai partition of a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    TooFewParts(usize),
    EmptyPart(usize),
    VertexOutOfRange(usize),
    VertexRepeated(usize),
    VertexUncovered(usize),
    /// A pair across parts `parts` whose color differs from the recorded one.
    NonUniform {
        parts: (usize, usize),
        pair: (usize, usize),
        expected: Color,
        found: Color,
    },
    TooManyColors(Vec<Color>),
    /// Recorded reduced colors do not list a color used between parts.
    UnlistedColor(Color),
    PairTableSize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewParts(p) => write!(f, "{p} part(s), need at least 2"),
            Violation::EmptyPart(i) => write!(f, "part {i} is empty"),
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::VertexRepeated(v) => write!(f, "vertex {v} in two parts"),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} in no part"),
            Violation::NonUniform {
                parts,
                pair,
                expected,
                found,
            } => write!(
                f,
                "parts {parts:?}: pair {pair:?} has color {found}, expected {expected}"
            ),
            Violation::TooManyColors(cs) => write!(f, "colors {cs:?} between parts"),
            Violation::UnlistedColor(c) => write!(f, "color {c} missing from reduced colors"),
            Violation::PairTableSize => write!(f, "pair color table has the wrong size"),
        }
    }
}

/// Checks every Gallai partition invariant against `c`.
pub fn validate_partition(c: &EdgeColoring, p: &GallaiPartition) -> Result<(), Violation> {
    let n = c.n();
    let parts = &p.parts;
    if parts.len() < 2 {
        return Err(Violation::TooFewParts(parts.len()));
    }
    if p.pair_colors.len() != parts.len() * (parts.len() - 1) / 2 {
        return Err(Violation::PairTableSize);
    }
    let mut seen = vec![false; n];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Violation::EmptyPart(i));
        }
        for &v in part {
            if v >= n {
                return Err(Violation::VertexOutOfRange(v));
            }
            if seen[v] {
                return Err(Violation::VertexRepeated(v));
            }
            seen[v] = true;
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Violation::VertexUncovered(v));
    }
    let mut used = BTreeSet::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let expected = p.pair_color(i, j).expect("in range");
            for &u in &parts[i] {
                for &v in &parts[j] {
                    let found = c.color(u, v);
                    if found != expected {
                        return Err(Violation::NonUniform {
                            parts: (i, j),
                            pair: (u, v),
                            expected,
                            found,
                        });
                    }
                }
            }
            used.insert(expected);
        }
    }
    if used.len() > 2 {
        return Err(Violation::TooManyColors(used.into_iter().collect()));
    }
    if p.reduced_colors.len() > 2 {
        return Err(Violation::TooManyColors(p.reduced_colors.clone()));
    }
    if let Some(&c) = used.iter().find(|c| !p.reduced_colors.contains(c)) {
        return Err(Violation::UnlistedColor(c));
    }
    Ok(())
}

/// Connected components of the graph joining `u ~ v` whenever
/// `color(u, v)` is outside `allowed`. For a Gallai coloring these
/// components are always a valid partition with inter-part colors in
/// `allowed`, and the finest such one.
pub fn components_outside(c: &EdgeColoring, allowed: &[Color]) -> Vec<Vec<usize>> {
    let n = c.n();
    let mut other = vec![0u64; n];
    for color in 0..c.k() as Color {
        if allowed.contains(&color) {
            continue;
        }
        for (v, row) in other.iter_mut().enumerate() {
            *row |= c.neighbors(v, color);
        }
    }
    let mut unvisited: u64 = crate::coloring::full_mask(n);
    let mut comps = Vec::new();
    while unvisited != 0 {
        let start = unvisited.trailing_zeros() as usize;
        let mut comp = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= other[v];
            }
            frontier = next & !comp;
            comp |= next;
        }
        unvisited &= !comp;
        comps.push(bits(comp).collect());
    }
    comps
}

/// Candidate inter-part color sets: singletons, then pairs, lexicographic.
fn candidate_sets(k: usize) -> Vec<Vec<Color>> {
    let mut out: Vec<Vec<Color>> = (0..k as Color).map(|c| vec![c]).collect();
    for a in 0..k as Color {
        for b in a + 1..k as Color {
            out.push(vec![a, b]);
        }
    }
    out
}

/// A Gallai partition of `c`.
///
/// Tries each candidate color set (fewest colors first) and takes the
/// components of the graph of edges outside the set; the first candidate
/// giving at least two parts that validates is returned.
pub fn find_gallai_partition(c: &EdgeColoring) -> Result<GallaiPartition, PartitionError> {
    if c.n() < 2 {
        return Err(PartitionError::TooSmall(c.n()));
    }
    if let Some(t) = c.find_rainbow_triangle() {
        return Err(PartitionError::NotGallai(t));
    }
    for set in candidate_sets(c.k()) {
        let comps = components_outside(c, &set);
        if comps.len() < 2 {
            continue;
        }
        let p = GallaiPartition::from_parts(c, comps);
        if validate_partition(c, &p).is_ok() {
            return Ok(p);
        }
    }
    unreachable!("every Gallai coloring on at least 2 vertices has a Gallai partition")
}

/// The finest Gallai partition minimizing the largest part over all
/// candidate color sets, ties broken by candidate order.
pub fn find_finest_partition(c: &EdgeColoring) -> Result<(GallaiPartition, Vec<Color>), PartitionError> {
    if c.n() < 2 {
        return Err(PartitionError::TooSmall(c.n()));
    }
    if let Some(t) = c.find_rainbow_triangle() {
        return Err(PartitionError::NotGallai(t));
    }
    let mut best: Option<(GallaiPartition, Vec<Color>)> = None;
    // pairs first: their components refine the singleton candidates
    let mut sets = candidate_sets(c.k());
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    for set in sets {
        let comps = components_outside(c, &set);
        if comps.len() < 2 {
            continue;
        }
        let p = GallaiPartition::from_parts(c, comps);
        if validate_partition(c, &p).is_err() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => p.largest_part() < b.largest_part(),
        };
        if better {
            best = Some((p, set));
        }
    }
    let (p, mut set) = best.expect("Gallai colorings have a partition");
    if set.len() == 1 {
        // pad with a second color so callers always get a pair
        let other = (0..c.k().max(2) as Color).find(|&x| x != set[0]).unwrap_or(0);
        set.push(other);
        set.sort_unstable();
    }
    Ok((p, set))
}

/// The reduced coloring on the parts of a valid partition.
pub fn reduced_graph(c: &EdgeColoring, p: &GallaiPartition) -> Result<EdgeColoring, PartitionError> {
    validate_partition(c, p).map_err(PartitionError::InvalidPartition)?;
    let r = EdgeColoring::from_fn(p.len(), c.k(), |i, j| p.pair_color(i, j).expect("in range"))?;
    assert!(r.used_colors().len() <= 2, "reduced graph uses more than two colors");
    Ok(r)
}

/// Which side of the part-size dichotomy the largest part lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DichotomySide {
    /// Largest part has order at most `l - 1`.
    Small,
    /// Largest part has order at least `n - 2l + 2`.
    Large,
    /// Neither holds. Must never happen on inputs meeting the preconditions.
    Refutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyReport {
    pub largest: usize,
    pub small_max: usize,
    pub large_min: usize,
    pub side: DichotomySide,
}

/// For a mono-`K_{l,m}`-free Gallai coloring on `n >= 3m - 2` vertices,
/// the largest part of any Gallai partition has order at most `l - 1` or
/// at least `n - 2l + 2`.
pub fn check_part_dichotomy(
    c: &EdgeColoring,
    p: &GallaiPartition,
    l: usize,
    m: usize,
) -> Result<DichotomyReport, PartitionError> {
    let n = c.n();
    if l == 0 || l > m {
        return Err(PartitionError::PreconditionFailed(format!("need 1 <= l <= m, got l={l}, m={m}")));
    }
    if n + 2 < 3 * m {
        return Err(PartitionError::PreconditionFailed(format!("n = {n} < 3m - 2 = {}", 3 * m - 2)));
    }
    if let Some(t) = c.find_rainbow_triangle() {
        return Err(PartitionError::NotGallai(t));
    }
    for color in 0..c.k() as Color {
        if let Some(w) = find_mono_complete_bipartite(c, color, l, m).expect("color in range") {
            return Err(PartitionError::HasMonoTarget {
                l,
                m,
                witness: Box::new(w),
            });
        }
    }
    validate_partition(c, p).map_err(PartitionError::InvalidPartition)?;
    let largest = p.largest_part();
    let small_max = l - 1;
    let large_min = (n + 2).saturating_sub(2 * l);
    let side = if largest <= small_max {
        DichotomySide::Small
    } else if largest >= large_min {
        DichotomySide::Large
    } else {
        DichotomySide::Refutation
    };
    Ok(DichotomyReport {
        largest,
        small_max,
        large_min,
        side,
    })
}
