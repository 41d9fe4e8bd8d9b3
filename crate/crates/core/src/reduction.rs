//! Reduction of a Gallai coloring to a 3-colored blow-up with small parts,
//! and exhaustive checking of that reduced family.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring, TargetGraph};
use crate::detect::{find_mono, graph_contains, Embedding, MonoWitness};
use crate::graph::{bit, bits};
use crate::partition::{find_finest_partition, GallaiPartition, PartitionError};
use crate::search::{Certificate, Outcome, SearchConfig, SearchError, SearchProblem, SearchStats, BlowUp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("rainbow triangle {0:?}")]
    NotGallai([usize; 3]),
    #[error("target {0} is not bipartite")]
    NotBipartite(TargetGraph),
    #[error("R = {0} must be at least 2")]
    BadR(usize),
    #[error("only {remainder} vertices remain outside T = {t_set:?}")]
    TooSmallRemainder { remainder: usize, t_set: Vec<usize> },
    #[error("remainder partition has a part of order {order} > {cap} and no monochromatic target was found")]
    LargePart { order: usize, cap: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// 3-coloring: the two partition colors become 0 and 1, pairs inside a
    /// part become 2.
    pub g_prime: EdgeColoring,
    /// Partition of `g_prime` with parts of order at most `max(a - 1, 1)`.
    pub partition: GallaiPartition,
    /// Original ids of the vertices of `g_prime`, in order.
    pub vertices: Vec<usize>,
    /// Extracted vertices with their color, in extraction order.
    pub t_set: Vec<(usize, Color)>,
    /// Members of `t_set` put back as singleton parts.
    pub returned: Vec<usize>,
    /// Original colors mapped to 0 and 1.
    pub pair_colors: [Color; 2],
    /// `n - (a - 1) k - 2 (a - 1)`, which `g_prime` never falls below.
    pub size_floor: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionOutcome {
    MonoWitness(MonoWitness),
    Reduced(Reduction),
}

/// Largest part order allowed in the reduced family for `s(H) = a`.
pub fn part_cap(a: usize) -> usize {
    a.saturating_sub(1).max(1)
}

const EXTEND_LIMIT: usize = 100_000;

enum Step {
    Accepted,
    Witness(MonoWitness),
}

struct Grower<'a> {
    c: &'a EdgeColoring,
    a: usize,
    b: usize,
    t: Vec<(usize, Color)>,
    in_t: u64,
    counts: Vec<usize>,
    steps: usize,
}

impl Grower<'_> {
    fn remainder(&self) -> u64 {
        crate::coloring::full_mask(self.c.n()) & !self.in_t
    }

    // Extends T by a run of vertices that ends with no open exceptions.
    // `pending` holds (vertex, last index it may take in T).
    fn extend(&mut self, pending: &[(usize, usize)], first: bool) -> Option<Step> {
        let rm = self.remainder();
        if pending.is_empty() && !first {
            let full = (0..self.counts.len()).find(|&i| self.counts[i] >= self.a);
            return match full {
                None => Some(Step::Accepted),
                Some(i) if rm.count_ones() as usize >= self.b => Some(Step::Witness(self.witness(i as Color, rm))),
                Some(_) => None,
            };
        }
        let idx = self.t.len();
        let candidates: Vec<usize> = if pending.is_empty() {
            bits(rm).collect()
        } else {
            let mut p: Vec<usize> = pending.iter().map(|&(v, _)| v).collect();
            p.sort_unstable();
            p
        };
        for x in candidates {
            self.steps += 1;
            if self.steps > EXTEND_LIMIT {
                return None;
            }
            let rest = rm & !bit(x);
            if rest == 0 {
                continue;
            }
            let color = (0..self.c.k() as Color)
                .max_by_key(|&col| ((self.c.neighbors(x, col) & rest).count_ones(), std::cmp::Reverse(col)))
                .expect("palette is nonempty");
            let exceptions = rest & !self.c.neighbors(x, color);
            if exceptions.count_ones() as usize > self.a - 1 {
                continue;
            }
            let mut next: Vec<(usize, usize)> = pending.iter().copied().filter(|&(v, _)| v != x).collect();
            for e in bits(exceptions) {
                let deadline = idx + self.a - 1;
                match next.iter_mut().find(|(v, _)| *v == e) {
                    Some(entry) => entry.1 = entry.1.min(deadline),
                    None => next.push((e, deadline)),
                }
            }
            if next.iter().any(|&(_, d)| d <= idx) {
                continue;
            }
            self.t.push((x, color));
            self.in_t |= bit(x);
            self.counts[color as usize] += 1;
            if let Some(step) = self.extend(&next, false) {
                return Some(step);
            }
            self.t.pop();
            self.in_t &= !bit(x);
            self.counts[color as usize] -= 1;
        }
        None
    }

    fn witness(&self, color: Color, rm: u64) -> MonoWitness {
        let side_a: Vec<usize> = self
            .t
            .iter()
            .filter(|&&(_, c)| c == color)
            .map(|&(v, _)| v)
            .take(self.a)
            .collect();
        let side_b: Vec<usize> = bits(rm).take(self.b).collect();
        let (small, large) = if side_a.len() <= side_b.len() {
            (side_a, side_b)
        } else {
            (side_b, side_a)
        };
        MonoWitness {
            color,
            target: TargetGraph::CompleteBipartite {
                small: small.len(),
                large: large.len(),
            },
            embedding: Embedding::Bipartite { small, large },
        }
    }
}

/// Extracts the set `T` of vertices that send all but at most `a - 1`
/// edges to the rest in one color (exceptions only towards the next `a - 1`
/// extracted vertices), then reduces the remainder through a Gallai
/// partition. A color held by `a` members of `T` yields a monochromatic
/// `K_{a,b}`, `a = s(H)`, `b = |H| - a`, which contains `H`.
pub fn extract_reduction(c: &EdgeColoring, target: &TargetGraph, r: usize) -> Result<ReductionOutcome, ReductionError> {
    if let Some(t) = c.find_rainbow_triangle() {
        return Err(ReductionError::NotGallai(t));
    }
    let a = target.s_value().ok_or(ReductionError::NotBipartite(*target))?;
    if r < 2 {
        return Err(ReductionError::BadR(r));
    }
    let b = target.order() - a;
    let mut g = Grower {
        c,
        a,
        b,
        t: Vec::new(),
        in_t: 0,
        counts: vec![0; c.k()],
        steps: 0,
    };
    loop {
        g.steps = 0;
        match g.extend(&[], true) {
            Some(Step::Witness(w)) => return Ok(ReductionOutcome::MonoWitness(w)),
            Some(Step::Accepted) => {}
            None => break,
        }
    }
    let rm: Vec<usize> = bits(g.remainder()).collect();
    let t_ids: Vec<usize> = g.t.iter().map(|&(v, _)| v).collect();
    if rm.len() < 2 {
        return Err(ReductionError::TooSmallRemainder {
            remainder: rm.len(),
            t_set: t_ids,
        });
    }
    let sub = c.induced(&rm).map_err(PartitionError::from)?;
    let (local, pair) = find_finest_partition(&sub)?;
    let cap = part_cap(a);
    let largest = local.largest_part();
    if largest > cap {
        for color in 0..c.k() as Color {
            if let Ok(Some(w)) = find_mono(c, color, target) {
                return Ok(ReductionOutcome::MonoWitness(w));
            }
        }
        return Err(ReductionError::LargePart { order: largest, cap });
    }
    let mut parts: Vec<Vec<usize>> = local
        .parts
        .iter()
        .map(|p| p.iter().map(|&i| rm[i]).collect())
        .collect();
    let pair_colors = [pair[0], pair[1]];
    let mut members = rm.iter().fold(0u64, |m, &v| m | bit(v));
    let mut returned = Vec::new();
    for &(v, _) in &g.t {
        let seen: Vec<Color> = bits(members).map(|w| c.color(v, w)).collect();
        if seen.iter().all(|&x| x == seen[0]) && pair_colors.contains(&seen[0]) {
            returned.push(v);
            parts.push(vec![v]);
            members |= bit(v);
        }
    }
    let vertices: Vec<usize> = bits(members).collect();
    let mut pos = vec![usize::MAX; c.n()];
    for (i, &v) in vertices.iter().enumerate() {
        pos[v] = i;
    }
    let mut owner = vec![usize::MAX; c.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let g_prime = EdgeColoring::from_fn(vertices.len(), 3, |i, j| {
        let (u, v) = (vertices[i], vertices[j]);
        if owner[u] == owner[v] {
            2
        } else if c.color(u, v) == pair_colors[0] {
            0
        } else {
            1
        }
    })
    .map_err(PartitionError::from)?;
    let local_parts: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut q: Vec<usize> = p.iter().map(|&v| pos[v]).collect();
            q.sort_unstable();
            q
        })
        .collect();
    let partition = GallaiPartition::from_parts(&g_prime, local_parts);
    let size_floor = c.n().saturating_sub((a - 1) * c.k() + 2 * (a - 1));
    assert!(
        g_prime.n() >= size_floor,
        "reduced order {} below the bookkeeping floor {size_floor}",
        g_prime.n()
    );
    Ok(ReductionOutcome::Reduced(Reduction {
        g_prime,
        partition,
        vertices,
        t_set: g.t,
        returned,
        pair_colors,
        size_floor,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReducedVerdict {
    /// Every member of the family contains the target.
    Pass,
    Counterexample,
    BudgetExceeded,
}

/// One part-size multiset of the reduced family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedRun {
    pub sizes: Vec<usize>,
    /// The within-part color alone already contains the target.
    pub trivial: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedCertificate {
    pub target: TargetGraph,
    pub r: usize,
    pub cap: usize,
    pub verdict: ReducedVerdict,
    /// Projected node count used for the feasibility check.
    pub estimate: f64,
    pub runs: Vec<ReducedRun>,
    pub counterexample: Option<EdgeColoring>,
    pub stats: SearchStats,
}

/// Nonincreasing integer partitions of `total` with parts at most `cap`.
pub fn bounded_partitions(total: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in (1..=max.min(left)).rev() {
            cur.push(s);
            go(left - s, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, cap.max(1), &mut Vec::new(), &mut out);
    out
}

fn class_estimate(sizes: &[usize]) -> f64 {
    let p = sizes.len();
    let mut log2 = (p * p.saturating_sub(1) / 2) as f64 - 1.0;
    let mut i = 0;
    while i < sizes.len() {
        let run = sizes[i..].iter().take_while(|&&s| s == sizes[i]).count();
        log2 -= (1..=run).map(|x| (x as f64).log2()).sum::<f64>();
        i += run;
    }
    2f64.powf(log2.max(0.0))
}

/// Checks every 3-coloring of `K_R` made of parts of order at most
/// `max(s(H) - 1, 1)`, a 2-colored reduced graph between parts and a third
/// color inside parts, for a monochromatic `H`.
pub fn verify_reduced_condition(
    target: &TargetGraph,
    r: usize,
    cfg: &SearchConfig,
) -> Result<ReducedCertificate, SearchError> {
    let a = target
        .s_value()
        .ok_or_else(|| SearchError::InvalidProblem(format!("{target} is not bipartite")))?;
    if r < 2 {
        return Err(SearchError::InvalidProblem(format!("R = {r} < 2")));
    }
    let cap = part_cap(a);
    let multisets = bounded_partitions(r, cap);
    let estimate: f64 = multisets.iter().map(|s| class_estimate(s)).sum();
    if estimate > cfg.budget as f64 {
        return Err(SearchError::Infeasible {
            estimate,
            budget: cfg.budget,
        });
    }
    let mut out = ReducedCertificate {
        target: *target,
        r,
        cap,
        verdict: ReducedVerdict::Pass,
        estimate,
        runs: Vec::new(),
        counterexample: None,
        stats: SearchStats::default(),
    };
    for sizes in multisets {
        let fixed_class: Vec<u64> = {
            let mut adj = vec![0u64; r];
            let mut start = 0;
            for &s in &sizes {
                let block = (start..start + s).fold(0u64, |m, v| m | bit(v));
                for v in start..start + s {
                    adj[v] = block & !bit(v);
                }
                start += s;
            }
            adj
        };
        if graph_contains(&fixed_class, crate::coloring::full_mask(r), target) {
            out.runs.push(ReducedRun {
                sizes,
                trivial: true,
                certificate: None,
            });
            continue;
        }
        let mut run_cfg = cfg.clone();
        run_cfg.budget = cfg.budget.saturating_sub(out.stats.nodes);
        let singletons = sizes.iter().all(|&s| s == 1);
        let problem = if singletons {
            SearchProblem::ramsey(&[*target, *target], r)
        } else {
            SearchProblem {
                blow_up: Some(BlowUp {
                    sizes: sizes.clone(),
                    fixed_color: 2,
                }),
                ..SearchProblem::ramsey(&[*target; 3], r)
            }
        };
        let cert = run_cfg.run(problem)?;
        let s = &cert.stats;
        out.stats.nodes += s.nodes;
        out.stats.rainbow_prunes += s.rainbow_prunes;
        out.stats.target_prunes += s.target_prunes;
        out.stats.symmetry_prunes += s.symmetry_prunes;
        out.stats.palette_prunes += s.palette_prunes;
        out.stats.wall_ms += s.wall_ms;
        let outcome = cert.outcome;
        if outcome == Outcome::Witness {
            let w = cert.witness.as_ref().expect("witness outcome carries a coloring");
            out.counterexample = Some(if w.k() == 3 { w.clone() } else { w.with_palette(3).expect("3 colors fit") });
        }
        out.runs.push(ReducedRun {
            sizes,
            trivial: false,
            certificate: Some(cert),
        });
        match outcome {
            Outcome::Witness => {
                out.verdict = ReducedVerdict::Counterexample;
                break;
            }
            Outcome::BudgetExceeded => {
                out.verdict = ReducedVerdict::BudgetExceeded;
                break;
            }
            Outcome::Exhausted => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::pentagon;
    use crate::constructions::{layered_lower_bound, rook_coloring};
    use crate::partition::validate_partition;

    #[test]
    fn all_red_gives_witness() {
        let k4 = EdgeColoring::monochromatic(4, 2, 0).unwrap();
        match extract_reduction(&k4, &TargetGraph::C4, 6).unwrap() {
            ReductionOutcome::MonoWitness(w) => {
                assert_eq!(w.color, 0);
                w.validate(&k4).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_coloring_without_t_is_kept() {
        let p = pentagon();
        match extract_reduction(&p, &TargetGraph::C4, 6).unwrap() {
            ReductionOutcome::Reduced(red) => {
                assert!(red.t_set.is_empty());
                assert_eq!(red.g_prime.k(), 3);
                assert_eq!(red.g_prime.flat(), p.flat());
                assert_eq!(red.partition.largest_part(), 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn layered_rook_absorbs_apexes() {
        let h = TargetGraph::CompleteBipartite { small: 2, large: 3 };
        let c = layered_lower_bound(&rook_coloring(3).unwrap(), &h, 4).unwrap();
        assert_eq!(c.n(), 11);
        match extract_reduction(&c, &h, 10).unwrap() {
            ReductionOutcome::Reduced(red) => {
                let t: Vec<usize> = red.t_set.iter().map(|&(v, _)| v).collect();
                assert_eq!(t, vec![9, 10]);
                assert!(red.g_prime.n() >= 9);
                assert!(red.g_prime.used_colors().len() <= 3);
                assert!(red.partition.largest_part() <= 1);
                validate_partition(&red.g_prime, &red.partition).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn partitions_of_small_totals() {
        assert_eq!(bounded_partitions(4, 2), vec![vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(bounded_partitions(3, 1), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn reduced_condition_small_cases() {
        let cfg = SearchConfig::default();
        let c4 = verify_reduced_condition(&TargetGraph::C4, 6, &cfg).unwrap();
        assert_eq!(c4.verdict, ReducedVerdict::Pass);
        let c4_low = verify_reduced_condition(&TargetGraph::C4, 5, &cfg).unwrap();
        assert_eq!(c4_low.verdict, ReducedVerdict::Counterexample);
        let p3 = verify_reduced_condition(&TargetGraph::P3Forest(1), 3, &cfg).unwrap();
        assert_eq!(p3.verdict, ReducedVerdict::Pass);
        let matching = verify_reduced_condition(&TargetGraph::Matching(3), 8, &cfg).unwrap();
        assert_eq!(matching.verdict, ReducedVerdict::Pass);
    }

    #[test]
    fn k33_is_infeasible() {
        let h = TargetGraph::CompleteBipartite { small: 3, large: 3 };
        assert!(matches!(
            verify_reduced_condition(&h, 18, &SearchConfig::default()),
            Err(SearchError::Infeasible { .. })
        ));
    }
}
