//! Seeded generators for test corpora, and a writer that persists them.

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{pentagon, Color, EdgeColoring, TargetGraph};
use crate::constructions::{layered_lower_bound, matching_extremal, p3_forest_lower_bound, paley_coloring, rook_coloring};
use crate::detect::find_mono;
use crate::format::{serialize, write_atomic};

/// Random Gallai coloring of `K_n` with colors in `0..k`, built by
/// recursive substitution into random 2-colored outer graphs.
pub fn random_gallai<R: Rng>(rng: &mut R, n: usize, k: usize) -> EdgeColoring {
    assert!(n >= 1 && k >= 1);
    let palette: Vec<Color> = (0..k as Color).collect();
    build(rng, n, &palette)
        .with_palette(k)
        .expect("colors stay inside the palette")
}

fn build<R: Rng>(rng: &mut R, n: usize, palette: &[Color]) -> EdgeColoring {
    let k = palette.len();
    if n == 1 {
        return EdgeColoring::monochromatic(1, k, 0).expect("K1");
    }
    // few parts more often, so large parts and deep nesting both occur
    let parts = if rng.gen_bool(0.6) { 2.min(n) } else { rng.gen_range(2..=n) };
    let mut sizes = vec![1usize; parts];
    for _ in parts..n {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    let c1 = *palette.choose(rng).expect("nonempty palette");
    let c2 = *palette.choose(rng).expect("nonempty palette");
    let outer = EdgeColoring::from_fn(parts, k, |_, _| if rng.gen_bool(0.5) { c1 } else { c2 })
        .expect("outer coloring");
    let inners: Vec<EdgeColoring> = sizes.iter().map(|&s| build(rng, s, palette)).collect();
    let identity: Vec<Vec<Color>> = vec![(0..k as Color).collect(); parts];
    outer.substitute(&inners, &identity).expect("substitution fits")
}

/// Gallai coloring of `K_n` with no monochromatic `target`, grown from a
/// random 2-colored base by adding apex vertices (one color to everything)
/// and twins (a copy of an existing vertex). `None` when growth stalls.
pub fn random_free_gallai<R: Rng>(rng: &mut R, n: usize, k: usize, target: &TargetGraph) -> Option<EdgeColoring> {
    const TRIES: usize = 60;
    let free = |c: &EdgeColoring| (0..c.k() as Color).all(|col| matches!(find_mono(c, col, target), Ok(None)));
    let b = rng.gen_range(1..=n.min(target.order() + 3));
    let mut cur = (0..TRIES).find_map(|_| {
        let (c1, c2) = (rng.gen_range(0..k) as Color, rng.gen_range(0..k) as Color);
        let c = EdgeColoring::from_fn(b, k, |_, _| if rng.gen_bool(0.5) { c1 } else { c2 }).ok()?;
        free(&c).then_some(c)
    })?;
    while cur.n() < n {
        cur = (0..TRIES).find_map(|_| {
            let m = cur.n();
            let fresh = rng.gen_range(0..k) as Color;
            let next = if rng.gen_bool(0.5) {
                EdgeColoring::from_fn(m + 1, k, |u, v| if v == m { fresh } else { cur.color(u, v) })
            } else {
                let w = rng.gen_range(0..m);
                EdgeColoring::from_fn(m + 1, k, |u, v| match (u == m || v == m, u.min(v)) {
                    (false, _) => cur.color(u, v),
                    (true, x) if x == w => fresh,
                    (true, x) => cur.color(x, w),
                })
            }
            .ok()?;
            free(&next).then_some(next)
        })?;
    }
    Some(cur)
}

/// Random coloring with no structure, for oracle comparisons.
pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, k: usize) -> EdgeColoring {
    EdgeColoring::from_fn(n, k, |_, _| rng.gen_range(0..k as Color)).expect("valid dimensions")
}

/// `count` Gallai colorings with `n` in `2..=max_n` and `k` in
/// `2..=max_k`, reproducible from `seed`.
pub fn gallai_corpus(seed: u64, count: usize, max_n: usize, max_k: usize) -> Vec<EdgeColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            let k = rng.gen_range(2..=max_k);
            random_gallai(&mut rng, n, k)
        })
        .collect()
}

/// Named witnesses and extremal colorings from the constructions module.
pub fn named_constructions() -> Vec<(String, EdgeColoring)> {
    let mut out = vec![("pentagon".to_string(), pentagon())];
    for q in [5, 13, 17] {
        out.push((format!("paley-{q}"), paley_coloring(q).expect("prime 1 mod 4")));
    }
    for side in [2, 3] {
        out.push((format!("rook-{side}"), rook_coloring(side).expect("small grid")));
    }
    for k in 3..=5 {
        let c = layered_lower_bound(&pentagon(), &TargetGraph::C4, k).expect("pentagon avoids C4");
        out.push((format!("layered-pentagon-c4-k{k}"), c));
        let k33 = TargetGraph::CompleteBipartite { small: 3, large: 3 };
        let c = layered_lower_bound(&paley_coloring(17).expect("17"), &k33, k).expect("Paley 17 avoids K3,3");
        out.push((format!("layered-paley17-k33-k{k}"), c));
    }
    for sizes in [vec![2, 2], vec![3, 2], vec![2, 2, 2]] {
        let tag = sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("-");
        out.push((format!("matching-{tag}"), matching_extremal(&sizes).expect("valid sizes")));
        out.push((format!("p3-forest-{tag}"), p3_forest_lower_bound(&sizes).expect("valid sizes")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub seed: u64,
    pub files: Vec<PathBuf>,
}

/// Writes the substitution corpus and the named constructions under
/// `dir`, one canonical coloring file each, plus `manifest.json`.
pub fn write_corpus(dir: &Path, seed: u64, count: usize, force: bool) -> std::io::Result<CorpusManifest> {
    let manifest_path = dir.join("manifest.json");
    if manifest_path.exists() && !force {
        return Err(std::io::Error::new(
            std::io::ErrorKind::AlreadyExists,
            format!("{} exists (pass --force to overwrite)", manifest_path.display()),
        ));
    }
    std::fs::create_dir_all(dir.join("substitution"))?;
    std::fs::create_dir_all(dir.join("constructions"))?;
    let mut files = Vec::new();
    for (i, c) in gallai_corpus(seed, count, 24, 5).iter().enumerate() {
        let rel = PathBuf::from(format!("substitution/{i:04}.txt"));
        write_atomic(&dir.join(&rel), &serialize(c), force)?;
        files.push(rel);
    }
    for (name, c) in named_constructions() {
        let rel = PathBuf::from(format!("constructions/{name}.txt"));
        write_atomic(&dir.join(&rel), &serialize(&c), force)?;
        files.push(rel);
    }
    let manifest = CorpusManifest { seed, files };
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    write_atomic(&manifest_path, &text, force)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_gallai_is_gallai() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=20);
            let k = rng.gen_range(1..=5);
            let c = random_gallai(&mut rng, n, k);
            assert_eq!((c.n(), c.k()), (n, k));
            assert!(c.is_gallai());
        }
    }

    #[test]
    fn free_growth_avoids_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = TargetGraph::CompleteBipartite { small: 2, large: 3 };
        let mut made = 0;
        for _ in 0..100 {
            if let Some(c) = random_free_gallai(&mut rng, 9, 4, &t) {
                assert!(c.is_gallai());
                assert!((0..4).all(|col| find_mono(&c, col, &t).unwrap().is_none()));
                made += 1;
            }
        }
        assert!(made > 10, "{made}");
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(gallai_corpus(3, 20, 12, 4), gallai_corpus(3, 20, 12, 4));
    }

    #[test]
    fn named_constructions_are_gallai() {
        for (name, c) in named_constructions() {
            assert!(c.is_gallai(), "{name}");
        }
    }

    #[test]
    fn corpus_writer_refuses_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let m = write_corpus(dir.path(), 1, 5, false).unwrap();
        assert_eq!(m.files.len(), 5 + named_constructions().len());
        assert!(write_corpus(dir.path(), 1, 5, false).is_err());
        write_corpus(dir.path(), 1, 5, true).unwrap();
    }
}
