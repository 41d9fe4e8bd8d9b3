//! Brute-force oracles. They read the coloring only through
//! `EdgeColoring::color`, so they share no code with the detectors.
#![allow(dead_code)]

use gallai_core::coloring::{Color, EdgeColoring, TargetGraph};
use gallai_core::corpus::{random_coloring, random_free_gallai};
use gallai_core::detect::find_mono;
use gallai_core::search::{exists_avoiding_coloring, Outcome, SearchProblem, Symmetry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn adjacent(c: &EdgeColoring, color: Color, u: usize, v: usize) -> bool {
    u != v && c.color(u, v) == color
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn complete_bipartite(c: &EdgeColoring, color: Color, a: usize, b: usize) -> bool {
    combinations(c.n(), a).iter().any(|side| {
        let common = (0..c.n())
            .filter(|&w| !side.contains(&w) && side.iter().all(|&x| adjacent(c, color, x, w)))
            .count();
        common >= b
    })
}

pub fn matching_number(c: &EdgeColoring, color: Color) -> usize {
    fn go(c: &EdgeColoring, color: Color, used: &mut Vec<bool>) -> usize {
        let Some(v) = used.iter().position(|&u| !u) else {
            return 0;
        };
        used[v] = true;
        let mut best = go(c, color, used);
        for w in v + 1..c.n() {
            if !used[w] && adjacent(c, color, v, w) {
                used[w] = true;
                best = best.max(1 + go(c, color, used));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    go(c, color, &mut vec![false; c.n()])
}

/// Largest number of vertex-disjoint P3s in one color.
pub fn p3_packing(c: &EdgeColoring, color: Color) -> usize {
    fn go(c: &EdgeColoring, color: Color, used: &mut Vec<bool>) -> usize {
        let Some(v) = used.iter().position(|&u| !u) else {
            return 0;
        };
        used[v] = true;
        let mut best = go(c, color, used);
        let free: Vec<usize> = (0..c.n()).filter(|&w| !used[w]).collect();
        for (i, &x) in free.iter().enumerate() {
            for &y in &free[i + 1..] {
                // v as center, or v as an end with center x or y
                let shapes = [
                    adjacent(c, color, v, x) && adjacent(c, color, v, y),
                    adjacent(c, color, v, x) && adjacent(c, color, x, y),
                    adjacent(c, color, v, y) && adjacent(c, color, y, x),
                ];
                if shapes.iter().any(|&s| s) {
                    used[x] = true;
                    used[y] = true;
                    best = best.max(1 + go(c, color, used));
                    used[x] = false;
                    used[y] = false;
                }
            }
        }
        used[v] = false;
        best
    }
    go(c, color, &mut vec![false; c.n()])
}

pub fn max_degree(c: &EdgeColoring, color: Color) -> usize {
    (0..c.n())
        .map(|v| (0..c.n()).filter(|&w| adjacent(c, color, v, w)).count())
        .max()
        .unwrap_or(0)
}

pub fn clique(c: &EdgeColoring, color: Color, p: usize) -> bool {
    if p <= 1 {
        return c.n() >= p;
    }
    combinations(c.n(), p)
        .iter()
        .any(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| adjacent(c, color, a, b))))
}

pub fn contains(c: &EdgeColoring, color: Color, t: &TargetGraph) -> bool {
    match *t {
        TargetGraph::CompleteBipartite { small, large } => complete_bipartite(c, color, small, large),
        TargetGraph::Matching(s) => matching_number(c, color) >= s,
        TargetGraph::P3Forest(s) => p3_packing(c, color) >= s,
        TargetGraph::Star(s) => max_degree(c, color) >= s,
        TargetGraph::Clique(p) => clique(c, color, p),
    }
}

pub fn has_rainbow_triangle(c: &EdgeColoring) -> bool {
    let n = c.n();
    (0..n).any(|u| {
        (u + 1..n).any(|v| {
            (v + 1..n).any(|w| {
                let (a, b, d) = (c.color(u, v), c.color(u, w), c.color(v, w));
                a != b && a != d && b != d
            })
        })
    })
}

/// Enumerates every coloring of `K_n`. Only for tiny problems.
pub fn exists_by_enumeration(p: &SearchProblem) -> bool {
    let n = p.n;
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let total = (p.k as u64).pow(edges.len() as u32);
    assert!(total <= 1 << 20, "too large to enumerate");
    let mut digits = vec![0 as Color; edges.len()];
    for code in 0..total {
        let mut x = code;
        for d in digits.iter_mut() {
            *d = (x % p.k as u64) as Color;
            x /= p.k as u64;
        }
        let c = EdgeColoring::from_fn(n, p.k, |u, v| {
            let i = edges.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
            digits[i]
        })
        .unwrap();
        if p.gallai && has_rainbow_triangle(&c) {
            continue;
        }
        if p.require_all_colors && (0..p.k as Color).any(|col| !digits.contains(&col)) {
            continue;
        }
        if (0..p.k).all(|i| !contains(&c, i as Color, &p.targets[i])) {
            return true;
        }
    }
    false
}

pub fn detector_targets() -> Vec<TargetGraph> {
    let mut t = Vec::new();
    for small in 1..=3 {
        for large in small..=4 {
            t.push(TargetGraph::CompleteBipartite { small, large });
        }
    }
    for s in 1..=5 {
        t.push(TargetGraph::Matching(s));
        t.push(TargetGraph::Star(s + 1));
    }
    for s in 1..=3 {
        t.push(TargetGraph::P3Forest(s));
    }
    for p in 2..=5 {
        t.push(TargetGraph::Clique(p));
    }
    t
}

/// Runs every detector against the oracles on `count` random colorings
/// with `n <= 12`. Returns (targets present, checks made).
pub fn detector_sweep(seed: u64, count: usize) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = detector_targets();
    let (mut present, mut checked) = (0, 0);
    for _ in 0..count {
        let n = rng.gen_range(2..=12);
        let k = rng.gen_range(1..=3);
        let c = random_coloring(&mut rng, n, k);
        let color = rng.gen_range(0..k) as Color;
        for t in &targets {
            let fast = find_mono(&c, color, t).map_err(|e| e.to_string())?;
            if fast.is_some() != contains(&c, color, t) {
                return Err(format!("{t} in color {color} of {c:?}"));
            }
            if let Some(w) = fast {
                w.validate(&c)?;
                present += 1;
            }
            checked += 1;
        }
    }
    Ok((present, checked))
}

pub fn small_targets() -> Vec<TargetGraph> {
    vec![
        TargetGraph::C4,
        TargetGraph::Star(2),
        TargetGraph::Matching(2),
        TargetGraph::P3Forest(1),
        TargetGraph::Clique(3),
        TargetGraph::Matching(1),
    ]
}

fn tuples(k: usize) -> Vec<Vec<TargetGraph>> {
    let base = small_targets();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                base.iter().map(move |&x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Compares searches with and without symmetry breaking on every problem
/// with `n <= 5`, `k <= 3` over the small target set. Returns the count.
pub fn symmetry_grid() -> Result<usize, String> {
    let mut runs = 0;
    for k in 1..=3 {
        for targets in tuples(k) {
            for n in 1..=5 {
                for (gallai, all) in [(false, false), (true, false), (false, true), (true, true)] {
                    let p = SearchProblem {
                        gallai,
                        require_all_colors: all,
                        ..SearchProblem::ramsey(&targets, n)
                    };
                    let on = exists_avoiding_coloring(&p).map_err(|e| e.to_string())?;
                    let off = exists_avoiding_coloring(&SearchProblem {
                        symmetry: Symmetry::off(),
                        ..p.clone()
                    })
                    .map_err(|e| e.to_string())?;
                    if on.outcome != off.outcome || on.outcome == Outcome::BudgetExceeded {
                        return Err(format!("{:?} vs {:?} on {p:?}", on.outcome, off.outcome));
                    }
                    on.validate()?;
                    off.validate()?;
                    runs += 1;
                }
            }
        }
    }
    Ok(runs)
}

/// Up to `want` mono-`K_{l,m}`-free Gallai colorings with
/// `3m - 2 <= n <= 3m + 3` and `2 <= k <= 5`.
pub fn free_family(l: usize, m: usize, seed: u64, want: usize) -> Vec<EdgeColoring> {
    let t = TargetGraph::CompleteBipartite { small: l, large: m };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < want && attempts < want * 200 {
        attempts += 1;
        let n = 3 * m - 2 + (attempts % 6);
        let k = 2 + attempts % 4;
        if let Some(c) = random_free_gallai(&mut rng, n, k, &t) {
            out.push(c);
        }
    }
    out
}
