//! Exact detection of monochromatic targets in one color class.
//!
//! Every detector returns a [`MonoWitness`]; [`MonoWitness::validate`]
//! re-checks a witness edge by edge against the coloring through
//! [`EdgeColoring::color`] only, independent of the bitset search paths.

pub mod bipartite;
pub mod matching;
pub mod p3;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{full_mask, Color, EdgeColoring, TargetGraph};
use crate::graph::{bit, bits};
use crate::partition::GallaiPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("color {color} out of range for a {k}-color palette")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("expected {expected} per-color targets, got {got}")]
    TargetCount { expected: usize, got: usize },
    #[error("unsupported target {0}")]
    UnsupportedTarget(String),
    #[error("matched parts are too small: part {part} has order {order}, need {need}")]
    PartsTooSmall { part: usize, order: usize, need: String },
    #[error("parts {0} and {1} are not joined in the requested color (or reused)")]
    NotMatchingInColor(usize, usize),
}

/// Embedded vertices of a monochromatic copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Embedding {
    /// Two sides of a complete bipartite graph.
    Bipartite { small: Vec<usize>, large: Vec<usize> },
    /// Disjoint components: edges `[u, v]` for matchings, paths
    /// `[end, center, end]` for P3 forests.
    Components(Vec<Vec<usize>>),
    Star { center: usize, leaves: Vec<usize> },
    Clique(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoWitness {
    pub color: Color,
    pub target: TargetGraph,
    pub embedding: Embedding,
}

impl MonoWitness {
    /// Checks that every required edge of the target is present in
    /// `color` and that the embedding has the target's shape.
    pub fn validate(&self, c: &EdgeColoring) -> Result<(), String> {
        let n = c.n();
        let in_range = |v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(format!("vertex {v} out of range"))
            }
        };
        let edge = |u: usize, v: usize| -> Result<(), String> {
            in_range(u)?;
            in_range(v)?;
            if u == v {
                return Err(format!("loop at {u}"));
            }
            if c.color(u, v) != self.color {
                return Err(format!(
                    "pair ({u}, {v}) has color {} not {}",
                    c.color(u, v),
                    self.color
                ));
            }
            Ok(())
        };
        let distinct = |vs: &[usize]| -> Result<(), String> {
            let mut seen = vec![false; n];
            for &v in vs {
                in_range(v)?;
                if seen[v] {
                    return Err(format!("vertex {v} used twice"));
                }
                seen[v] = true;
            }
            Ok(())
        };
        match (&self.target, &self.embedding) {
            (TargetGraph::CompleteBipartite { small: l, large: m }, Embedding::Bipartite { small, large }) => {
                if small.len() != *l || large.len() != *m {
                    return Err("side sizes do not match the target".into());
                }
                distinct(&[small.as_slice(), large.as_slice()].concat())?;
                for &a in small {
                    for &b in large {
                        edge(a, b)?;
                    }
                }
                Ok(())
            }
            (TargetGraph::Matching(t), Embedding::Components(parts)) => {
                if parts.len() != *t || parts.iter().any(|p| p.len() != 2) {
                    return Err("matching shape mismatch".into());
                }
                distinct(&parts.concat())?;
                parts.iter().try_for_each(|p| edge(p[0], p[1]))
            }
            (TargetGraph::P3Forest(t), Embedding::Components(parts)) => {
                if parts.len() != *t || parts.iter().any(|p| p.len() != 3) {
                    return Err("P3 forest shape mismatch".into());
                }
                distinct(&parts.concat())?;
                parts.iter().try_for_each(|p| {
                    edge(p[0], p[1])?;
                    edge(p[1], p[2])
                })
            }
            (TargetGraph::Star(t), Embedding::Star { center, leaves }) => {
                if leaves.len() != *t {
                    return Err("star shape mismatch".into());
                }
                distinct(&[&[*center][..], leaves].concat())?;
                leaves.iter().try_for_each(|&l| edge(*center, l))
            }
            (TargetGraph::Clique(p), Embedding::Clique(vs)) => {
                if vs.len() != *p {
                    return Err("clique shape mismatch".into());
                }
                distinct(vs)?;
                for (i, &a) in vs.iter().enumerate() {
                    for &b in &vs[i + 1..] {
                        edge(a, b)?;
                    }
                }
                Ok(())
            }
            _ => Err("embedding kind does not match the target".into()),
        }
    }
}

fn check_color(c: &EdgeColoring, color: Color) -> Result<(), DetectError> {
    if color as usize >= c.k() {
        Err(DetectError::ColorOutOfRange {
            color: color as usize,
            k: c.k(),
        })
    } else {
        Ok(())
    }
}

fn class(c: &EdgeColoring, color: Color) -> Vec<u64> {
    (0..c.n()).map(|v| c.neighbors(v, color)).collect()
}

/// Monochromatic `K_{l,m}` in `color`, as a non-induced subgraph.
pub fn find_mono_complete_bipartite(
    c: &EdgeColoring,
    color: Color,
    l: usize,
    m: usize,
) -> Result<Option<MonoWitness>, DetectError> {
    check_color(c, color)?;
    let (l, m) = (l.min(m), l.max(m));
    let adj = class(c, color);
    Ok(
        bipartite::find_complete_bipartite(&adj, full_mask(c.n()), l, m).map(|(a, common)| {
            MonoWitness {
                color,
                target: TargetGraph::CompleteBipartite { small: l, large: m },
                embedding: Embedding::Bipartite {
                    small: a,
                    large: bits(common).take(m).collect(),
                },
            }
        }),
    )
}

/// Monochromatic matching of `t` edges in `color`.
pub fn find_mono_matching(c: &EdgeColoring, color: Color, t: usize) -> Result<Option<MonoWitness>, DetectError> {
    check_color(c, color)?;
    let adj = class(c, color);
    let m = matching::maximum_matching(&adj, full_mask(c.n()));
    Ok((m.len() >= t).then(|| MonoWitness {
        color,
        target: TargetGraph::Matching(t),
        embedding: Embedding::Components(m.iter().take(t).map(|&(u, v)| vec![u, v]).collect()),
    }))
}

/// Monochromatic `t P3` in `color`.
pub fn find_mono_p3_forest(c: &EdgeColoring, color: Color, t: usize) -> Result<Option<MonoWitness>, DetectError> {
    check_color(c, color)?;
    let adj = class(c, color);
    let mask = full_mask(c.n());
    if !p3::p3_packing_at_least(&adj, mask, t) {
        return Ok(None);
    }
    let packing = p3::maximum_p3_packing(&adj, mask);
    Ok(Some(MonoWitness {
        color,
        target: TargetGraph::P3Forest(t),
        embedding: Embedding::Components(packing.iter().take(t).map(|p| p.to_vec()).collect()),
    }))
}

/// Monochromatic star with `t` leaves in `color`.
pub fn find_mono_star(c: &EdgeColoring, color: Color, t: usize) -> Result<Option<MonoWitness>, DetectError> {
    check_color(c, color)?;
    Ok((0..c.n())
        .find(|&v| c.color_degree(v, color) >= t)
        .map(|v| MonoWitness {
            color,
            target: TargetGraph::Star(t),
            embedding: Embedding::Star {
                center: v,
                leaves: bits(c.neighbors(v, color)).take(t).collect(),
            },
        }))
}

/// Monochromatic `K_p` in `color`.
pub fn find_mono_clique(c: &EdgeColoring, color: Color, p: usize) -> Result<Option<MonoWitness>, DetectError> {
    check_color(c, color)?;
    if p == 0 {
        return Err(DetectError::UnsupportedTarget("K0".into()));
    }
    let adj = class(c, color);
    Ok(
        bipartite::find_clique(&adj, full_mask(c.n()), p).map(|vs| MonoWitness {
            color,
            target: TargetGraph::Clique(p),
            embedding: Embedding::Clique(vs),
        }),
    )
}

/// Dispatches on the target kind.
pub fn find_mono(c: &EdgeColoring, color: Color, target: &TargetGraph) -> Result<Option<MonoWitness>, DetectError> {
    match *target {
        TargetGraph::CompleteBipartite { small, large } => find_mono_complete_bipartite(c, color, small, large),
        TargetGraph::Matching(t) => find_mono_matching(c, color, t),
        TargetGraph::P3Forest(t) => find_mono_p3_forest(c, color, t),
        TargetGraph::Star(t) => find_mono_star(c, color, t),
        TargetGraph::Clique(p) => find_mono_clique(c, color, p),
    }
}

/// First witness scanning colors `0..k`, where color `i` looks for
/// `per_color_targets[i]`.
pub fn find_mono_target(
    c: &EdgeColoring,
    per_color_targets: &[TargetGraph],
) -> Result<Option<MonoWitness>, DetectError> {
    if per_color_targets.len() != c.k() {
        return Err(DetectError::TargetCount {
            expected: c.k(),
            got: per_color_targets.len(),
        });
    }
    for (i, target) in per_color_targets.iter().enumerate() {
        target
            .validate()
            .map_err(|e| DetectError::UnsupportedTarget(e.to_string()))?;
        if let Some(w) = find_mono(c, i as Color, target)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Whether the graph `adj` restricted to `mask` contains `target`.
pub fn graph_contains(adj: &[u64], mask: u64, target: &TargetGraph) -> bool {
    match *target {
        TargetGraph::CompleteBipartite { small, large } => {
            bipartite::find_complete_bipartite(adj, mask, small, large).is_some()
        }
        TargetGraph::Matching(t) => matching::matching_number(adj, mask) >= t,
        TargetGraph::P3Forest(t) => p3::p3_packing_at_least(adj, mask, t),
        TargetGraph::Star(t) => bits(mask).any(|v| (adj[v] & mask).count_ones() as usize >= t),
        TargetGraph::Clique(p) => bipartite::has_clique(adj, mask, p),
    }
}

/// Whether some copy of `target` inside `mask` uses the edge `{u, v}`,
/// assuming the graph without that edge has none.
pub fn target_through_edge(adj: &[u64], mask: u64, u: usize, v: usize, target: &TargetGraph) -> bool {
    match *target {
        TargetGraph::CompleteBipartite { small, large } => {
            bipartite::complete_bipartite_through_edge(adj, u, v, small, large)
        }
        TargetGraph::Matching(t) => {
            t <= 1 || matching::matching_number(adj, mask & !bit(u) & !bit(v)) + 1 >= t
        }
        TargetGraph::P3Forest(t) => p3::p3_packing_through_edge(adj, mask, u, v, t),
        TargetGraph::Star(t) => {
            (adj[u] & mask).count_ones() as usize >= t || (adj[v] & mask).count_ones() as usize >= t
        }
        TargetGraph::Clique(p) => bipartite::clique_through_edge(adj, u, v, p),
    }
}

/// Largest monochromatic star.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub color: Color,
    pub center: usize,
    pub leaves: usize,
}

/// Maximizer of the per-vertex per-color degree (first in vertex, then
/// color order).
pub fn max_mono_star(c: &EdgeColoring) -> StarReport {
    let mut best = StarReport {
        color: 0,
        center: 0,
        leaves: 0,
    };
    for v in 0..c.n() {
        for color in 0..c.k() as Color {
            let d = c.color_degree(v, color);
            if d > best.leaves {
                best = StarReport {
                    color,
                    center: v,
                    leaves: d,
                };
            }
        }
    }
    best
}

/// Builds `n_target` disjoint monochromatic P3s from a matching of the
/// reduced graph: for each matched pair of parts `(A, B)`, centers are
/// drawn from one part and their two ends from the other.
///
/// `matching` lists part-index pairs of `p`, all joined in `color`.
pub fn p3_packing_from_matching(
    c: &EdgeColoring,
    color: Color,
    matching: &[(usize, usize)],
    p: &GallaiPartition,
    n_target: usize,
) -> Result<Vec<[usize; 3]>, DetectError> {
    check_color(c, color)?;
    let t = matching.len();
    if t == 0 || n_target == 0 {
        return Ok(Vec::new());
    }
    let mut used_parts = 0u64;
    for &(a, b) in matching {
        if a == b || a >= p.parts.len() || b >= p.parts.len() {
            return Err(DetectError::NotMatchingInColor(a, b));
        }
        if p.pair_color(a, b) != Some(color) || used_parts & (bit(a) | bit(b)) != 0 {
            return Err(DetectError::NotMatchingInColor(a, b));
        }
        used_parts |= bit(a) | bit(b);
    }
    // each matched part needs order >= 3 n_target / (2t)
    for &(a, b) in matching {
        for part in [a, b] {
            let order = p.parts[part].len();
            if 2 * t * order < 3 * n_target {
                return Err(DetectError::PartsTooSmall {
                    part,
                    order,
                    need: format!("3*{n_target}/(2*{t})"),
                });
            }
        }
    }
    // largest q with x + y = q, x + 2y <= |A|, 2x + y <= |B| for some x
    let split = |q: usize, na: usize, nb: usize| -> Option<(usize, usize)> {
        let lo = (2 * q).saturating_sub(na);
        let hi = q.min(nb.saturating_sub(q));
        if nb < q || lo > hi {
            None
        } else {
            // balance centers between sides
            let x = (q.div_ceil(2)).clamp(lo, hi);
            Some((x, q - x))
        }
    };
    let mut remaining = n_target;
    let mut out = Vec::with_capacity(n_target);
    for &(a, b) in matching {
        if remaining == 0 {
            break;
        }
        let (pa, pb) = (&p.parts[a], &p.parts[b]);
        let mut q = remaining.min((pa.len() + pb.len()) / 3);
        while q > 0 && split(q, pa.len(), pb.len()).is_none() {
            q -= 1;
        }
        let Some((xa, xb)) = split(q, pa.len(), pb.len()) else {
            continue;
        };
        let (mut ia, mut ib) = (0usize, 0usize);
        for _ in 0..xa {
            out.push([pb[ib], pa[ia], pb[ib + 1]]);
            ia += 1;
            ib += 2;
        }
        for _ in 0..xb {
            out.push([pa[ia], pb[ib], pa[ia + 1]]);
            ib += 1;
            ia += 2;
        }
        remaining -= q;
    }
    if remaining > 0 {
        let (a, _) = matching[0];
        return Err(DetectError::PartsTooSmall {
            part: a,
            order: p.parts[a].len(),
            need: format!("{remaining} more paths"),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::pentagon;
    use crate::constructions::paley_coloring;

    #[test]
    fn complete_bipartite_examples() {
        let k5 = EdgeColoring::monochromatic(5, 2, 1).unwrap();
        let w = find_mono_complete_bipartite(&k5, 1, 2, 3).unwrap().unwrap();
        w.validate(&k5).unwrap();
        assert!(find_mono_complete_bipartite(&k5, 0, 1, 1).unwrap().is_none());

        let p = pentagon();
        for color in 0..2 {
            assert!(find_mono_complete_bipartite(&p, color, 2, 2).unwrap().is_none());
        }
        assert!(matches!(
            find_mono_complete_bipartite(&p, 2, 2, 2),
            Err(DetectError::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn paley17_has_no_mono_k33() {
        let c = paley_coloring(17).unwrap();
        for color in 0..2 {
            assert!(find_mono_complete_bipartite(&c, color, 3, 3).unwrap().is_none());
        }
    }

    #[test]
    fn matching_examples() {
        let k4 = EdgeColoring::monochromatic(4, 1, 0).unwrap();
        let w = find_mono_matching(&k4, 0, 2).unwrap().unwrap();
        w.validate(&k4).unwrap();

        // star K_{1,5} in color 0 on 6 vertices
        let star = EdgeColoring::from_fn(6, 2, |u, _| if u == 0 { 0 } else { 1 }).unwrap();
        assert!(find_mono_matching(&star, 0, 2).unwrap().is_none());
        assert!(find_mono_matching(&star, 0, 1).unwrap().is_some());
    }

    #[test]
    fn p3_forest_examples() {
        let k6 = EdgeColoring::monochromatic(6, 1, 0).unwrap();
        let w = find_mono_p3_forest(&k6, 0, 2).unwrap().unwrap();
        w.validate(&k6).unwrap();

        let pm = EdgeColoring::from_fn(6, 2, |u, v| if u % 2 == 0 && v == u + 1 { 0 } else { 1 }).unwrap();
        assert!(find_mono_p3_forest(&pm, 0, 1).unwrap().is_none());
    }

    #[test]
    fn star_examples() {
        let k7 = EdgeColoring::monochromatic(7, 3, 2).unwrap();
        assert_eq!(
            max_mono_star(&k7),
            StarReport {
                color: 2,
                center: 0,
                leaves: 6
            }
        );
        assert_eq!(max_mono_star(&pentagon()).leaves, 2);
        let w = find_mono_star(&k7, 2, 6).unwrap().unwrap();
        w.validate(&k7).unwrap();
    }

    #[test]
    fn target_dispatch() {
        let c = pentagon();
        let w = find_mono_target(&c, &[TargetGraph::Matching(1), TargetGraph::Matching(1)])
            .unwrap()
            .unwrap();
        assert_eq!(w.color, 0);
        assert!(matches!(
            find_mono_target(&c, &[TargetGraph::Matching(1)]),
            Err(DetectError::TargetCount { .. })
        ));
    }

    #[test]
    fn forged_witness_is_rejected() {
        let c = pentagon();
        let forged = MonoWitness {
            color: 0,
            target: TargetGraph::C4,
            embedding: Embedding::Bipartite {
                small: vec![0, 2],
                large: vec![1, 3],
            },
        };
        assert!(forged.validate(&c).is_err());
        let reused = MonoWitness {
            color: 0,
            target: TargetGraph::Matching(2),
            embedding: Embedding::Components(vec![vec![0, 1], vec![1, 2]]),
        };
        assert!(reused.validate(&c).is_err());
    }
}
