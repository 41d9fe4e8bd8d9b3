//! Generators for extremal and lower-bound colorings.
//!
//! Generators never certify their own output; callers (and the test suite)
//! run the independent detectors over every result.

use thiserror::Error;

use crate::coloring::{Color, ColoringError, EdgeColoring, TargetGraph, MAX_COLORS, MAX_VERTICES};
use crate::detect::{find_mono, MonoWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("base coloring contains the target: {0:?}")]
    BaseHasMonoH(Box<MonoWitness>),
    #[error("base coloring must be a 2-coloring: {0}")]
    BadBase(String),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("{0} is not 1 mod 4")]
    BadResidueClass(usize),
    #[error("order {0} exceeds the vertex cap")]
    TooLarge(usize),
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("target {0} is not bipartite")]
    NotBipartite(TargetGraph),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Appends `s(H) - 1` apex vertices per extra color `2..k` to a 2-colored
/// base; every edge at an apex of round `i` gets color `i`.
pub fn layered_lower_bound(
    base: &EdgeColoring,
    target: &TargetGraph,
    k: usize,
) -> Result<EdgeColoring, ConstructionError> {
    let s = target.s_value().ok_or(ConstructionError::NotBipartite(*target))?;
    if base.k() != 2 {
        return Err(ConstructionError::BadBase(format!("palette has {} colors", base.k())));
    }
    if k < 2 || k > MAX_COLORS {
        return Err(ConstructionError::BadSizes(format!("k = {k}")));
    }
    for color in 0..2 {
        if let Some(w) = find_mono(base, color, target).map_err(|e| ConstructionError::BadBase(e.to_string()))? {
            return Err(ConstructionError::BaseHasMonoH(Box::new(w)));
        }
    }
    let b = base.n();
    let n = b + (s - 1) * (k - 2);
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    // round of each apex vertex
    let round = |v: usize| -> Color { (2 + (v - b) / (s - 1).max(1)) as Color };
    Ok(EdgeColoring::from_fn(n, k, |u, v| {
        if v < b {
            base.color(u, v)
        } else {
            round(v)
        }
    })?)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Quadratic-residue 2-coloring of `K_q`: `{u, v}` gets color 0 iff
/// `u - v` is a nonzero square mod `q`.
pub fn paley_coloring(q: usize) -> Result<EdgeColoring, ConstructionError> {
    if !is_prime(q) {
        return Err(ConstructionError::NotPrime(q));
    }
    if q % 4 != 1 {
        return Err(ConstructionError::BadResidueClass(q));
    }
    if q > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(q));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(EdgeColoring::from_fn(q, 2, |u, v| if square[(v - u) % q] { 0 } else { 1 })?)
}

/// 2-coloring of `K_{s^2}` on an `s x s` grid: color 0 iff the vertices
/// share a row or column.
pub fn rook_coloring(side: usize) -> Result<EdgeColoring, ConstructionError> {
    if side < 2 {
        return Err(ConstructionError::BadSizes(format!("side {side} < 2")));
    }
    let n = side * side;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    Ok(EdgeColoring::from_fn(n, 2, |u, v| {
        if u / side == v / side || u % side == v % side {
            0
        } else {
            1
        }
    })?)
}

fn check_sizes(sizes: &[usize]) -> Result<(), ConstructionError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(ConstructionError::BadSizes(format!("{sizes:?}")));
    }
    if sizes.len() > MAX_COLORS {
        return Err(ConstructionError::BadSizes(format!("{} colors", sizes.len())));
    }
    if sizes.iter().skip(1).any(|&x| x > sizes[0]) {
        return Err(ConstructionError::BadSizes(format!("{sizes:?}: first size must be the largest")));
    }
    Ok(())
}

/// Nested blocks: block 0 of size `first_block`, then block `i` of size
/// `sizes[i] - 1`. An edge gets the color of the highest block it touches;
/// edges inside block 0 get color 0.
fn nested_blocks(first_block: usize, sizes: &[usize]) -> Result<EdgeColoring, ConstructionError> {
    let mut block_of = vec![0 as Color; first_block];
    for (i, &s) in sizes.iter().enumerate().skip(1) {
        block_of.extend(std::iter::repeat_n(i as Color, s - 1));
    }
    let n = block_of.len();
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    if n == 0 {
        return Err(ConstructionError::BadSizes(format!("{sizes:?}: empty coloring")));
    }
    Ok(EdgeColoring::from_fn(n, sizes.len(), |u, v| {
        block_of[u].max(block_of[v])
    })?)
}

/// Coloring on `n_1 + sum (n_i - 1)` vertices with no `n_i P2` in color
/// `i` and no rainbow triangle: a color-0 clique on `2 n_1 - 1` vertices
/// plus nested blocks of `n_i - 1` vertices for each later color.
pub fn matching_extremal(sizes: &[usize]) -> Result<EdgeColoring, ConstructionError> {
    check_sizes(sizes)?;
    nested_blocks(2 * sizes[0] - 1, sizes)
}

/// Coloring on `2 n_1 + sum (n_i - 1)` vertices with no `n_i P3` in color
/// `i` and no rainbow triangle: a color-0 clique on `3 n_1 - 1` vertices
/// plus `n_i - 1` apex vertices per later color.
pub fn p3_forest_lower_bound(sizes: &[usize]) -> Result<EdgeColoring, ConstructionError> {
    check_sizes(sizes)?;
    nested_blocks(3 * sizes[0] - 1, sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::pentagon;
    use crate::detect::{find_mono_complete_bipartite, find_mono_matching, find_mono_p3_forest};

    fn regular(c: &EdgeColoring, color: Color) -> Option<usize> {
        let d = c.color_degree(0, color);
        (0..c.n()).all(|v| c.color_degree(v, color) == d).then_some(d)
    }

    #[test]
    fn layered_examples() {
        let g = layered_lower_bound(&pentagon(), &TargetGraph::C4, 4).unwrap();
        assert_eq!(g.n(), 7);
        assert!(g.is_gallai() && g.palette_full());
        for color in 0..4 {
            assert!(find_mono_complete_bipartite(&g, color, 2, 2).unwrap().is_none());
        }
        let same = layered_lower_bound(&pentagon(), &TargetGraph::C4, 2).unwrap();
        assert_eq!(same, pentagon());

        let k5 = EdgeColoring::monochromatic(5, 2, 0).unwrap();
        assert!(matches!(
            layered_lower_bound(&k5, &TargetGraph::C4, 3),
            Err(ConstructionError::BaseHasMonoH(_))
        ));
        let three = EdgeColoring::monochromatic(4, 3, 0).unwrap();
        assert!(matches!(
            layered_lower_bound(&three, &TargetGraph::C4, 3),
            Err(ConstructionError::BadBase(_))
        ));
    }

    #[test]
    fn paley_examples() {
        assert_eq!(paley_coloring(5).unwrap(), pentagon());
        let p13 = paley_coloring(13).unwrap();
        assert_eq!(regular(&p13, 0), Some(6));
        assert_eq!(regular(&p13, 1), Some(6));
        assert_eq!(paley_coloring(15), Err(ConstructionError::NotPrime(15)));
        assert_eq!(paley_coloring(7), Err(ConstructionError::BadResidueClass(7)));
    }

    #[test]
    fn rook_examples() {
        let r2 = rook_coloring(2).unwrap();
        assert_eq!(regular(&r2, 0), Some(2));
        assert_eq!(r2.color_class(0).unwrap().edge_count(), 4);
        let r3 = rook_coloring(3).unwrap();
        assert_eq!(regular(&r3, 0), Some(4));
        for color in 0..2 {
            assert!(find_mono_complete_bipartite(&r3, color, 2, 3).unwrap().is_none());
        }
        assert!(matches!(rook_coloring(9), Err(ConstructionError::TooLarge(81))));
    }

    #[test]
    fn matching_examples() {
        let c = matching_extremal(&[2, 2]).unwrap();
        assert_eq!(c.n(), 4);
        let c3 = matching_extremal(&[2, 2, 2]).unwrap();
        assert_eq!(c3.n(), 5);
        assert!(c3.is_gallai());
        for (c, k) in [(&c, 2), (&c3, 3)] {
            for color in 0..k {
                assert!(find_mono_matching(c, color as Color, 2).unwrap().is_none());
            }
        }
        let mono = matching_extremal(&[4]).unwrap();
        assert_eq!(mono.n(), 7);
        assert!(find_mono_matching(&mono, 0, 4).unwrap().is_none());
        assert!(matching_extremal(&[2, 3]).is_err());
    }

    #[test]
    fn p3_forest_examples() {
        let k5 = p3_forest_lower_bound(&[2]).unwrap();
        assert_eq!(k5.n(), 5);
        assert!(find_mono_p3_forest(&k5, 0, 2).unwrap().is_none());
        let c = p3_forest_lower_bound(&[3, 2]).unwrap();
        assert_eq!(c.n(), 9);
        assert!(find_mono_p3_forest(&c, 0, 3).unwrap().is_none());
        assert!(find_mono_p3_forest(&c, 1, 2).unwrap().is_none());
    }
}
