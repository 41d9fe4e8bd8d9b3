//! Depth-first worker over the edge sequence.

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use super::canon::Canon;
use super::checkpoint::Checkpoint;
use super::{SearchError, SearchProblem, SearchStats};
use crate::coloring::{full_mask, Color, EdgeColoring, PartialColoring};
use crate::detect::{graph_contains, target_through_edge};
use crate::graph::bit;

/// Static shape of the search tree.
pub(crate) struct Layout {
    /// Searched (reduced) vertex count.
    pub vn: usize,
    pub order: Vec<(usize, usize)>,
    pub vertex_class: Vec<usize>,
    pub vertex_mask: Vec<u64>,
    pub color_class: Vec<usize>,
    pub free: Vec<Color>,
    /// Concrete vertices behind each searched vertex, for block layouts.
    pub blocks: Option<Vec<Vec<usize>>>,
}

impl Layout {
    pub fn new(p: &SearchProblem) -> Self {
        let (vn, vertex_class, blocks) = match &p.blow_up {
            Some(b) => {
                let mut class = Vec::with_capacity(b.sizes.len());
                let mut blocks = Vec::with_capacity(b.sizes.len());
                let mut next = 0;
                for (i, &s) in b.sizes.iter().enumerate() {
                    let c = if i > 0 && b.sizes[i - 1] == s { class[i - 1] } else { i };
                    class.push(c);
                    blocks.push((next..next + s).collect::<Vec<_>>());
                    next += s;
                }
                (b.sizes.len(), class, Some(blocks))
            }
            None => (p.n, vec![0; p.n], None),
        };
        let mut vertex_mask = vec![0u64; vn.max(1)];
        for (v, &c) in vertex_class.iter().enumerate() {
            vertex_mask[c] |= bit(v);
        }
        let mut order = Vec::with_capacity(vn * vn.saturating_sub(1) / 2);
        for v in 1..vn {
            for u in 0..v {
                order.push((u, v));
            }
        }
        let fixed = p.blow_up.as_ref().map(|b| b.fixed_color);
        let free: Vec<Color> = (0..p.k as Color).filter(|&c| Some(c) != fixed).collect();
        let color_class = (0..p.k)
            .map(|c| {
                if !p.symmetry.color || Some(c as Color) == fixed {
                    return c;
                }
                (0..=c)
                    .find(|&d| p.targets[d] == p.targets[c] && Some(d as Color) != fixed)
                    .expect("c matches itself")
            })
            .collect();
        Self {
            vn,
            order,
            vertex_class,
            vertex_mask,
            color_class,
            free,
            blocks,
        }
    }
}

pub(crate) struct Shared<'a> {
    pub problem: &'a SearchProblem,
    pub layout: &'a Layout,
    pub nodes: &'a AtomicU64,
    /// Lowest work index that has produced a witness.
    pub best: &'a AtomicUsize,
    pub start: Instant,
    pub base_wall_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Found,
    Budget,
    Aborted,
}

#[derive(Debug, Clone, Copy)]
enum Prune {
    Rainbow,
    Target,
    Symmetry,
    Palette,
}

pub(crate) struct Worker<'a, 's> {
    sh: &'s Shared<'a>,
    pc: PartialColoring,
    concrete: Option<PartialColoring>,
    path: Vec<Color>,
    uses: Vec<u32>,
    unused: usize,
    replay: Vec<Color>,
    pinned: bool,
    index: usize,
    mat: Vec<Color>,
    since_checkpoint: u64,
    pub collect_depth: Option<usize>,
    pub prefixes: Vec<Vec<Color>>,
    pub checkpoint: Option<(PathBuf, u64)>,
    pub stats: SearchStats,
    pub witness: Option<EdgeColoring>,
    pub error: Option<SearchError>,
}

impl<'a, 's> Worker<'a, 's> {
    /// `replay` is followed without counting; with `pinned` the worker
    /// stays inside the subtree below it.
    pub fn new(sh: &'s Shared<'a>, index: usize, replay: Vec<Color>, pinned: bool) -> Self {
        let p = sh.problem;
        let layout = sh.layout;
        let concrete = layout.blocks.as_ref().map(|blocks| {
            let fixed = p.blow_up.as_ref().expect("blocks come from a blow-up").fixed_color;
            let mut pc = PartialColoring::new(p.n, p.k);
            for block in blocks {
                for (i, &a) in block.iter().enumerate() {
                    for &b in &block[i + 1..] {
                        pc.set(a, b, fixed);
                    }
                }
            }
            pc
        });
        let mut uses = vec![0; p.k];
        if let Some(pc) = &concrete {
            let fixed = p.blow_up.as_ref().expect("blocks come from a blow-up").fixed_color;
            uses[fixed as usize] = (0..p.n).map(|v| pc.neighbors(v, fixed).count_ones()).sum();
        }
        let unused = uses.iter().filter(|&&u| u == 0).count();
        Self {
            sh,
            pc: PartialColoring::new(layout.vn.max(1), p.k),
            concrete,
            path: Vec::with_capacity(layout.order.len()),
            uses,
            unused,
            replay,
            pinned,
            index,
            mat: Vec::new(),
            since_checkpoint: 0,
            collect_depth: None,
            prefixes: Vec::new(),
            checkpoint: None,
            stats: SearchStats::default(),
            witness: None,
            error: None,
        }
    }

    pub fn run(&mut self) -> Option<Stop> {
        self.dfs(0, true)
    }

    fn wall_ms(&self) -> u64 {
        self.sh.base_wall_ms + self.sh.start.elapsed().as_millis() as u64
    }

    fn save_checkpoint(&mut self) {
        let Some((path, _)) = &self.checkpoint else {
            return;
        };
        let mut stats = self.stats.clone();
        stats.wall_ms = self.wall_ms();
        let cp = Checkpoint::new(self.sh.problem, self.path.clone(), stats);
        if let Err(e) = cp.save(path) {
            self.error.get_or_insert(e);
        }
    }

    fn dfs(&mut self, e: usize, on_path: bool) -> Option<Stop> {
        let on_path = on_path && e < self.replay.len();
        if !on_path {
            if self.collect_depth == Some(e) {
                self.prefixes.push(self.path.clone());
                return None;
            }
            if self.sh.best.load(Ordering::Relaxed) < self.index {
                return Some(Stop::Aborted);
            }
            if self.sh.nodes.load(Ordering::Relaxed) >= self.sh.problem.budget {
                self.save_checkpoint();
                return Some(Stop::Budget);
            }
            if let Some((_, every)) = self.checkpoint {
                if self.since_checkpoint >= every {
                    self.since_checkpoint = 0;
                    self.save_checkpoint();
                }
            }
        }
        let layout = self.sh.layout;
        if e == layout.order.len() {
            if self.sh.problem.require_all_colors && self.unused > 0 {
                if !on_path {
                    self.stats.palette_prunes += 1;
                }
                return None;
            }
            self.witness = match &self.concrete {
                Some(c) => c.to_coloring(),
                None => self.pc.to_coloring(),
            };
            return Some(Stop::Found);
        }
        let (u, v) = layout.order[e];
        for &c in &layout.free {
            let want = on_path.then(|| self.replay[e]);
            if let Some(w) = want {
                if c < w {
                    continue;
                }
                if c > w && self.pinned {
                    break;
                }
            }
            let child_on_path = want == Some(c);
            if !child_on_path {
                self.stats.nodes += 1;
                self.since_checkpoint += 1;
                self.sh.nodes.fetch_add(1, Ordering::Relaxed);
            }
            if let Err(prune) = self.assign(e, u, v, c) {
                if !child_on_path {
                    match prune {
                        Prune::Rainbow => self.stats.rainbow_prunes += 1,
                        Prune::Target => self.stats.target_prunes += 1,
                        Prune::Symmetry => self.stats.symmetry_prunes += 1,
                        Prune::Palette => self.stats.palette_prunes += 1,
                    }
                }
                continue;
            }
            let r = self.dfs(e + 1, child_on_path);
            self.unassign(u, v, c);
            if r.is_some() {
                return r;
            }
        }
        None
    }

    fn assign(&mut self, e: usize, u: usize, v: usize, c: Color) -> Result<(), Prune> {
        let p = self.sh.problem;
        let layout = self.sh.layout;
        let ci = c as usize;
        if p.symmetry.color && self.uses[ci] == 0 {
            let class = layout.color_class[ci];
            if (0..ci).any(|d| layout.color_class[d] == class && self.uses[d] == 0) {
                return Err(Prune::Symmetry);
            }
        }
        if p.gallai && self.pc.rainbow_apex(u, v, c).is_some() {
            return Err(Prune::Rainbow);
        }
        self.pc.set(u, v, c);
        self.path.push(c);
        self.uses[ci] += 1;
        if self.uses[ci] == 1 {
            self.unused -= 1;
        }
        let hit = match (&mut self.concrete, &layout.blocks) {
            (Some(conc), Some(blocks)) => {
                for &a in &blocks[u] {
                    for &b in &blocks[v] {
                        conc.set(a, b, c);
                    }
                }
                graph_contains(conc.class(c), full_mask(p.n), &p.targets[ci])
            }
            _ => target_through_edge(self.pc.class(c), full_mask(v + 1), u, v, &p.targets[ci]),
        };
        let verdict = if hit {
            Err(Prune::Target)
        } else if p.require_all_colors && self.unused > layout.order.len() - e - 1 {
            Err(Prune::Palette)
        } else if p.symmetry.vertex && u + 1 == v && v >= 2 && !self.canonical(v + 1) {
            Err(Prune::Symmetry)
        } else {
            Ok(())
        };
        if verdict.is_err() {
            self.unassign(u, v, c);
        }
        verdict
    }

    fn unassign(&mut self, u: usize, v: usize, c: Color) {
        let ci = c as usize;
        self.pc.unset(u, v, c);
        self.path.pop();
        self.uses[ci] -= 1;
        if self.uses[ci] == 0 {
            self.unused += 1;
        }
        if let (Some(conc), Some(blocks)) = (&mut self.concrete, &self.sh.layout.blocks) {
            for &a in &blocks[u] {
                for &b in &blocks[v] {
                    conc.unset(a, b, c);
                }
            }
        }
    }

    fn canonical(&mut self, size: usize) -> bool {
        self.mat.clear();
        self.mat.resize(size * size, 0);
        for a in 0..size {
            for b in a + 1..size {
                let c = self.pc.color(a, b).expect("prefix is complete");
                self.mat[a * size + b] = c;
                self.mat[b * size + a] = c;
            }
        }
        let layout = self.sh.layout;
        Canon::new(
            size,
            &self.mat,
            &layout.vertex_mask,
            &layout.vertex_class,
            &layout.color_class,
            self.sh.problem.symmetry.canon_limit,
        )
        .is_canonical()
    }
}
