//! Exhaustive search for colorings avoiding per-color targets, and the
//! Ramsey and Gallai-Ramsey values built on it.
//!
//! Colorings are grown vertex by vertex (all pairs `(u, v)`, `u < v`, are
//! colored before vertex `v + 1` appears). After each vertex is complete the
//! colored prefix must be lex-min under vertex permutations and under
//! permutations of colors that share a target; any isomorphism class of
//! avoiding colorings keeps its lex-min member, so nothing is lost.

mod canon;
pub mod checkpoint;
mod engine;

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{evaluate_bounds, known_ramsey, matching_value, p3_forest_bracket};
use crate::coloring::{pentagon, Color, EdgeColoring, TargetGraph, MAX_COLORS, MAX_VERTICES};
use crate::constructions::{layered_lower_bound, matching_extremal, p3_forest_lower_bound, paley_coloring, rook_coloring};
use crate::detect::find_mono_target;

pub use checkpoint::Checkpoint;
use engine::{Layout, Shared, Stop, Worker};

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetry {
    /// Orderly generation: reject non-lex-min vertex prefixes.
    pub vertex: bool,
    /// Interchange colors with equal targets.
    pub color: bool,
    /// Step cap per lex-min test; past it the prefix is accepted.
    pub canon_limit: u64,
}

impl Default for Symmetry {
    fn default() -> Self {
        Self {
            vertex: true,
            color: true,
            canon_limit: 100_000,
        }
    }
}

impl Symmetry {
    pub fn off() -> Self {
        Self {
            vertex: false,
            color: false,
            canon_limit: 0,
        }
    }
}

/// Colorings of `K_n` made of blocks: vertex `i` of a reduced complete
/// graph stands for `sizes[i]` concrete vertices, pairs inside a block
/// carry `fixed_color`, and the search colors reduced pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUp {
    pub sizes: Vec<usize>,
    pub fixed_color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub targets: Vec<TargetGraph>,
    /// Forbid rainbow triangles.
    pub gallai: bool,
    /// Only accept colorings that use every color.
    pub require_all_colors: bool,
    pub budget: u64,
    pub symmetry: Symmetry,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blow_up: Option<BlowUp>,
}

impl SearchProblem {
    /// Two-or-more-color Ramsey problem: no Gallai constraint, unused
    /// colors allowed.
    pub fn ramsey(targets: &[TargetGraph], n: usize) -> Self {
        Self {
            n,
            k: targets.len(),
            targets: targets.to_vec(),
            gallai: false,
            require_all_colors: false,
            budget: DEFAULT_BUDGET,
            symmetry: Symmetry::default(),
            blow_up: None,
        }
    }

    /// Gallai-Ramsey problem: no rainbow triangle, every color used.
    pub fn gallai_ramsey(targets: &[TargetGraph], n: usize) -> Self {
        Self {
            gallai: true,
            require_all_colors: true,
            ..Self::ramsey(targets, n)
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidProblem(m));
        if self.n == 0 || self.n > MAX_VERTICES {
            return bad(format!("n = {} outside 1..={MAX_VERTICES}", self.n));
        }
        if self.k == 0 || self.k > MAX_COLORS {
            return bad(format!("k = {} outside 1..={MAX_COLORS}", self.k));
        }
        if self.targets.len() != self.k {
            return bad(format!("{} targets for {} colors", self.targets.len(), self.k));
        }
        for t in &self.targets {
            t.validate().map_err(|e| SearchError::InvalidProblem(e.to_string()))?;
        }
        if let Some(b) = &self.blow_up {
            if b.sizes.iter().sum::<usize>() != self.n || b.sizes.contains(&0) {
                return bad(format!("block sizes {:?} do not partition {}", b.sizes, self.n));
            }
            if b.sizes.windows(2).any(|w| w[0] < w[1]) {
                return bad(format!("block sizes {:?} must be nonincreasing", b.sizes));
            }
            if b.fixed_color as usize >= self.k || self.k < 2 {
                return bad(format!("fixed color {} needs another free color", b.fixed_color));
            }
            if self.gallai {
                return bad("block layouts are searched without the Gallai constraint".into());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    /// No avoiding coloring exists.
    Exhausted,
    Witness,
    BudgetExceeded,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub rainbow_prunes: u64,
    pub target_prunes: u64,
    pub symmetry_prunes: u64,
    pub palette_prunes: u64,
    pub wall_ms: u64,
}

impl SearchStats {
    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.rainbow_prunes += o.rainbow_prunes;
        self.target_prunes += o.target_prunes;
        self.symmetry_prunes += o.symmetry_prunes;
        self.palette_prunes += o.palette_prunes;
    }

    /// Equality ignoring wall time.
    pub fn same_counts(&self, o: &SearchStats) -> bool {
        Self { wall_ms: 0, ..self.clone() } == Self { wall_ms: 0, ..o.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub problem: SearchProblem,
    pub outcome: Outcome,
    /// Canonical coloring text when `outcome` is `WITNESS`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resumed_from: Option<String>,
    /// Name of the generator that supplied the witness without search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<String>,
}

impl Certificate {
    /// Re-checks a witness with the standalone detectors.
    pub fn validate(&self) -> Result<(), String> {
        let p = &self.problem;
        match (self.outcome, &self.witness) {
            (Outcome::Witness, Some(c)) => {
                if c.n() != p.n || c.k() != p.k {
                    return Err(format!("witness is K{} with {} colors", c.n(), c.k()));
                }
                if p.gallai {
                    if let Some(t) = c.find_rainbow_triangle() {
                        return Err(format!("rainbow triangle {t:?}"));
                    }
                }
                if p.require_all_colors && !c.palette_full() {
                    return Err("witness leaves a color unused".into());
                }
                if let Some(w) = find_mono_target(c, &p.targets).map_err(|e| e.to_string())? {
                    return Err(format!("witness contains {} in color {}", w.target, w.color));
                }
                if let Some(b) = &p.blow_up {
                    check_blocks(c, b)?;
                }
                Ok(())
            }
            (Outcome::Witness, None) => Err("WITNESS without a coloring".into()),
            (_, Some(_)) => Err("coloring attached to a non-WITNESS outcome".into()),
            (_, None) => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SearchError> {
        serde_json::from_str(text).map_err(|e| SearchError::InvalidProblem(e.to_string()))
    }
}

fn check_blocks(c: &EdgeColoring, b: &BlowUp) -> Result<(), String> {
    let mut owner = Vec::with_capacity(c.n());
    for (i, &s) in b.sizes.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, s));
    }
    let first: Vec<usize> = b.sizes.iter().scan(0, |acc, &s| {
        let start = *acc;
        *acc += s;
        Some(start)
    }).collect();
    for (u, v, color) in c.edges() {
        let (bu, bv) = (owner[u], owner[v]);
        let expect = if bu == bv {
            b.fixed_color
        } else {
            c.color(first[bu], first[bv])
        };
        if color != expect {
            return Err(format!("pair ({u}, {v}) breaks the block layout"));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("budget exceeded at n = {n} (value > {known_below:?})")]
    BudgetExceeded {
        n: usize,
        /// Largest order with a witness found before the budget ran out.
        known_below: Option<usize>,
        certificate: Box<Certificate>,
    },
    #[error("witnesses up to max_n = {max_n}, no threshold found")]
    NoThreshold { max_n: usize, certificate: Box<Certificate> },
    #[error("projected {estimate:.3e} nodes exceed the budget of {budget}")]
    Infeasible { estimate: f64, budget: u64 },
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub threads: usize,
    /// Edge depth at which work is split between threads.
    pub split_depth: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Nodes between periodic checkpoints.
    pub checkpoint_every: u64,
    pub resume: Option<Checkpoint>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            split_depth: None,
            checkpoint: None,
            checkpoint_every: 10_000_000,
            resume: None,
        }
    }
}

/// Searches for a coloring of `K_n` avoiding every color's target.
pub fn exists_avoiding_coloring(p: &SearchProblem) -> Result<Certificate, SearchError> {
    run_search(p, &RunOptions::default())
}

/// [`exists_avoiding_coloring`] with threads, checkpoints, or a resume.
pub fn run_search(p: &SearchProblem, opts: &RunOptions) -> Result<Certificate, SearchError> {
    p.validate()?;
    let layout = Layout::new(p);
    let start = Instant::now();
    let (base, replay, resumed_from) = match &opts.resume {
        Some(cp) => {
            cp.check(p)?;
            (cp.stats.clone(), cp.path.clone(), Some(cp.id.clone()))
        }
        None => (SearchStats::default(), Vec::new(), None),
    };
    let nodes = AtomicU64::new(base.nodes);
    let best = AtomicUsize::new(usize::MAX);
    let shared = Shared {
        problem: p,
        layout: &layout,
        nodes: &nodes,
        best: &best,
        start,
        base_wall_ms: base.wall_ms,
    };
    let parallel = opts.threads > 1 && opts.checkpoint.is_none() && opts.resume.is_none();
    let (outcome, witness, mut stats) = if parallel {
        run_parallel(&shared, opts)?
    } else {
        let mut w = Worker::new(&shared, 0, replay, false);
        w.stats = base.clone();
        if let Some(path) = &opts.checkpoint {
            w.checkpoint = Some((path.clone(), opts.checkpoint_every.max(1)));
        }
        let stop = w.run();
        if let Some(e) = w.error.take() {
            return Err(e);
        }
        let outcome = match stop {
            Some(Stop::Found) => Outcome::Witness,
            Some(Stop::Budget) => Outcome::BudgetExceeded,
            Some(Stop::Aborted) => unreachable!("single worker is never aborted"),
            None => Outcome::Exhausted,
        };
        (outcome, w.witness.take(), w.stats.clone())
    };
    stats.wall_ms = base.wall_ms + start.elapsed().as_millis() as u64;
    Ok(Certificate {
        problem: p.clone(),
        outcome,
        witness,
        stats,
        resumed_from,
        seed: None,
    })
}

type Merged = (Outcome, Option<EdgeColoring>, SearchStats);

fn run_parallel(shared: &Shared<'_>, opts: &RunOptions) -> Result<Merged, SearchError> {
    let edges = shared.layout.order.len();
    let depth = opts
        .split_depth
        .unwrap_or_else(|| {
            let v = shared.layout.vn.min(5);
            v * v.saturating_sub(1) / 2
        })
        .min(edges);
    let mut collector = Worker::new(shared, 0, Vec::new(), false);
    collector.collect_depth = Some(depth);
    let stop = collector.run();
    let mut stats = collector.stats.clone();
    match stop {
        Some(Stop::Budget) => return Ok((Outcome::BudgetExceeded, None, stats)),
        Some(Stop::Found) => return Ok((Outcome::Witness, collector.witness.take(), stats)),
        _ => {}
    }
    let prefixes = std::mem::take(&mut collector.prefixes);
    let next = AtomicUsize::new(0);
    let results = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..opts.threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= prefixes.len() || shared.best.load(Ordering::Relaxed) < i {
                    break;
                }
                let mut w = Worker::new(shared, i, prefixes[i].clone(), true);
                let stop = w.run();
                if matches!(stop, Some(Stop::Found)) {
                    shared.best.fetch_min(i, Ordering::Relaxed);
                }
                let budget = matches!(stop, Some(Stop::Budget));
                results
                    .lock()
                    .expect("result lock")
                    .push((i, w.witness.take(), w.stats.clone(), budget));
                if budget {
                    break;
                }
            });
        }
    });
    let mut results = results.into_inner().expect("result lock");
    results.sort_by_key(|r| r.0);
    let mut witness = None;
    let mut budget = false;
    for (_, wit, s, b) in results {
        stats.absorb(&s);
        budget |= b;
        if witness.is_none() {
            witness = wit;
        }
    }
    let outcome = if witness.is_some() {
        Outcome::Witness
    } else if budget {
        Outcome::BudgetExceeded
    } else {
        Outcome::Exhausted
    };
    Ok((outcome, witness, stats))
}

/// Settings shared by the value computations.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub budget: u64,
    pub threads: usize,
    pub symmetry: Symmetry,
    /// Largest order a value scan may try.
    pub max_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            threads: 1,
            symmetry: Symmetry::default(),
            max_n: MAX_VERTICES,
        }
    }
}

impl SearchConfig {
    /// Runs one problem under these settings.
    pub fn run(&self, mut p: SearchProblem) -> Result<Certificate, SearchError> {
        p.budget = self.budget;
        p.symmetry = self.symmetry.clone();
        run_search(
            &p,
            &RunOptions {
                threads: self.threads,
                ..RunOptions::default()
            },
        )
    }
}

/// A computed value with the certificates on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueReport {
    pub value: usize,
    /// `WITNESS` at `value - 1`; absent when no smaller order is meaningful.
    pub lower: Option<Certificate>,
    /// `EXHAUSTED` at `value`.
    pub upper: Certificate,
}

/// Walks from `start` to the threshold between witnesses and exhaustion,
/// never below `floor`.
fn scan<F>(make: F, start: usize, floor: usize, cfg: &SearchConfig) -> Result<ValueReport, SearchError>
where
    F: Fn(usize) -> SearchProblem,
{
    let mut n = start.min(cfg.max_n).max(floor).clamp(1, MAX_VERTICES);
    let budget_err = |n: usize, known_below: Option<usize>, c: Certificate| SearchError::BudgetExceeded {
        n,
        known_below,
        certificate: Box::new(c),
    };
    let first = cfg.run(make(n))?;
    match first.outcome {
        Outcome::BudgetExceeded => Err(budget_err(n, None, first)),
        Outcome::Exhausted => {
            let mut upper = first;
            while n > floor {
                let below = cfg.run(make(n - 1))?;
                match below.outcome {
                    Outcome::Exhausted => {
                        upper = below;
                        n -= 1;
                    }
                    Outcome::Witness => {
                        return Ok(ValueReport {
                            value: n,
                            lower: Some(below),
                            upper,
                        })
                    }
                    Outcome::BudgetExceeded => return Err(budget_err(n - 1, None, below)),
                }
            }
            Ok(ValueReport {
                value: n,
                lower: None,
                upper,
            })
        }
        Outcome::Witness => {
            let mut lower = first;
            loop {
                if n + 1 > cfg.max_n.min(MAX_VERTICES) {
                    return Err(SearchError::NoThreshold {
                        max_n: cfg.max_n.min(MAX_VERTICES),
                        certificate: Box::new(lower),
                    });
                }
                let above = cfg.run(make(n + 1))?;
                match above.outcome {
                    Outcome::Witness => {
                        lower = above;
                        n += 1;
                    }
                    Outcome::Exhausted => {
                        return Ok(ValueReport {
                            value: n + 1,
                            lower: Some(lower),
                            upper: above,
                        })
                    }
                    Outcome::BudgetExceeded => return Err(budget_err(n + 1, Some(n), above)),
                }
            }
        }
    }
}

/// Two-color Ramsey number `R(H_1, H_2)`.
pub fn ramsey_number(targets: [TargetGraph; 2], n_hint: usize, cfg: &SearchConfig) -> Result<ValueReport, SearchError> {
    let mut start = n_hint.max(targets[0].order()).max(targets[1].order());
    if targets[0] == targets[1] {
        if let Some(r) = known_ramsey(&targets[0]) {
            start = start.max(r as usize);
        }
    }
    scan(|n| SearchProblem::ramsey(&targets, n), start, 1, cfg)
}

/// Closed-form lower bound on the Gallai-Ramsey number, where one applies.
fn gr_lower_formula(targets: &[TargetGraph]) -> Option<usize> {
    let k = targets.len();
    if targets.iter().all(|t| *t == targets[0]) {
        if let Ok(r) = evaluate_bounds(&targets[0], k, None) {
            return r.lower.map(|b| b.value as usize);
        }
    }
    let sizes_of = |pick: fn(&TargetGraph) -> Option<usize>| targets.iter().map(pick).collect::<Option<Vec<_>>>();
    if let Some(sizes) = sizes_of(|t| match t {
        TargetGraph::Matching(s) => Some(*s),
        _ => None,
    }) {
        return matching_value(&sizes).ok().map(|v| v as usize);
    }
    if let Some(sizes) = sizes_of(|t| match t {
        TargetGraph::P3Forest(s) => Some(*s),
        _ => None,
    }) {
        return p3_forest_bracket(&sizes).ok().map(|(lo, _)| lo.value as usize);
    }
    None
}

/// `gr_k(K3 : H_1, .., H_k)` over Gallai colorings using all `k` colors.
pub fn gallai_ramsey_number(
    targets: &[TargetGraph],
    n_hint: usize,
    cfg: &SearchConfig,
) -> Result<ValueReport, SearchError> {
    let k = targets.len();
    if k < 2 {
        return Err(SearchError::InvalidProblem(format!("need k >= 2, got {k}")));
    }
    // a Gallai coloring of K_n uses at most n - 1 colors
    let floor = k + 1;
    let start = n_hint.max(gr_lower_formula(targets).unwrap_or(0));
    scan(|n| SearchProblem::gallai_ramsey(targets, n), start, floor, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    /// Already exhausted one below the claim.
    TooHigh,
    /// An avoiding coloring exists at the claim.
    TooLow,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub claimed: usize,
    pub verdict: Verdict,
    pub lower: Certificate,
    pub upper: Option<Certificate>,
}

/// Generator output on `n` vertices that avoids every target, if one of
/// the known constructions fits.
pub fn construction_seed(targets: &[TargetGraph], n: usize) -> Option<(EdgeColoring, String)> {
    let k = targets.len();
    let uniform = targets.iter().all(|t| *t == targets[0]);
    let candidate = if uniform {
        match targets[0] {
            TargetGraph::CompleteBipartite { small: 2, large: 2 } => {
                layered_lower_bound(&pentagon(), &targets[0], k).ok().map(|c| (c, "layered pentagon"))
            }
            TargetGraph::CompleteBipartite { small: 2, large: 3 } => rook_coloring(3)
                .ok()
                .and_then(|b| layered_lower_bound(&b, &targets[0], k).ok())
                .map(|c| (c, "layered rook 3x3")),
            TargetGraph::CompleteBipartite { small: 3, large: 3 } => paley_coloring(17)
                .ok()
                .and_then(|b| layered_lower_bound(&b, &targets[0], k).ok())
                .map(|c| (c, "layered Paley 17")),
            _ => None,
        }
    } else {
        None
    };
    let candidate = candidate.or_else(|| {
        let sizes: Option<Vec<usize>> = targets
            .iter()
            .map(|t| match t {
                TargetGraph::Matching(s) => Some(*s),
                _ => None,
            })
            .collect();
        if let Some(s) = sizes {
            return matching_extremal(&s).ok().map(|c| (c, "nested matching blocks"));
        }
        let sizes: Option<Vec<usize>> = targets
            .iter()
            .map(|t| match t {
                TargetGraph::P3Forest(s) => Some(*s),
                _ => None,
            })
            .collect();
        sizes.and_then(|s| p3_forest_lower_bound(&s).ok().map(|c| (c, "nested P3 blocks")))
    })?;
    let (c, name) = candidate;
    let ok = c.n() == n
        && c.k() == k
        && c.is_gallai()
        && c.palette_full()
        && matches!(find_mono_target(&c, targets), Ok(None));
    ok.then(|| (c, name.to_string()))
}

/// Confirms `claimed = gr_k(K3 : targets)`: a witness at `claimed - 1`
/// (from a construction when one fits, else by search) and exhaustion at
/// `claimed`.
pub fn verify_value(targets: &[TargetGraph], claimed: usize, cfg: &SearchConfig) -> Result<Verification, SearchError> {
    if claimed < 2 {
        return Err(SearchError::InvalidProblem(format!("claimed value {claimed} < 2")));
    }
    let below = SearchProblem::gallai_ramsey(targets, claimed - 1);
    below.validate()?;
    let lower = match construction_seed(targets, claimed - 1) {
        Some((c, name)) => Certificate {
            problem: SearchProblem {
                budget: cfg.budget,
                symmetry: cfg.symmetry.clone(),
                ..below
            },
            outcome: Outcome::Witness,
            witness: Some(c),
            stats: SearchStats::default(),
            resumed_from: None,
            seed: Some(name),
        },
        None => cfg.run(below)?,
    };
    let verdict = match lower.outcome {
        Outcome::Exhausted => Some(Verdict::TooHigh),
        Outcome::BudgetExceeded => Some(Verdict::BudgetExceeded),
        Outcome::Witness => None,
    };
    if let Some(verdict) = verdict {
        return Ok(Verification {
            claimed,
            verdict,
            lower,
            upper: None,
        });
    }
    let upper = cfg.run(SearchProblem::gallai_ramsey(targets, claimed))?;
    let verdict = match upper.outcome {
        Outcome::Exhausted => Verdict::Confirmed,
        Outcome::Witness => Verdict::TooLow,
        Outcome::BudgetExceeded => Verdict::BudgetExceeded,
    };
    Ok(Verification {
        claimed,
        verdict,
        lower,
        upper: Some(upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4s(k: usize) -> Vec<TargetGraph> {
        vec![TargetGraph::C4; k]
    }

    #[test]
    fn pentagon_order_has_witness() {
        let c = exists_avoiding_coloring(&SearchProblem::ramsey(&c4s(2), 5)).unwrap();
        assert_eq!(c.outcome, Outcome::Witness);
        c.validate().unwrap();
    }

    #[test]
    fn six_is_exhausted() {
        let c = exists_avoiding_coloring(&SearchProblem::ramsey(&c4s(2), 6)).unwrap();
        assert_eq!(c.outcome, Outcome::Exhausted);
        assert!(c.stats.target_prunes > 0);
    }

    #[test]
    fn single_vertex_is_vacuous() {
        let c = exists_avoiding_coloring(&SearchProblem::ramsey(&c4s(2), 1)).unwrap();
        assert_eq!(c.outcome, Outcome::Witness);
        assert_eq!(c.witness.unwrap().n(), 1);
    }

    #[test]
    fn budget_is_an_outcome() {
        let mut p = SearchProblem::ramsey(&c4s(2), 6);
        p.budget = 10;
        let c = exists_avoiding_coloring(&p).unwrap();
        assert_eq!(c.outcome, Outcome::BudgetExceeded);
        assert!(c.stats.nodes >= 10);
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = exists_avoiding_coloring(&SearchProblem::ramsey(&c4s(2), 5)).unwrap();
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn small_ramsey_values() {
        let cfg = SearchConfig::default();
        let r = ramsey_number([TargetGraph::C4, TargetGraph::C4], 0, &cfg).unwrap();
        assert_eq!(r.value, 6);
        let r = ramsey_number([TargetGraph::Matching(2), TargetGraph::Matching(2)], 0, &cfg).unwrap();
        assert_eq!(r.value, 5);
    }

    #[test]
    fn invalid_problems() {
        let mut p = SearchProblem::ramsey(&c4s(2), 5);
        p.k = 3;
        assert!(matches!(exists_avoiding_coloring(&p), Err(SearchError::InvalidProblem(_))));
    }
}
