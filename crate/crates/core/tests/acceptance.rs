//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fail.

mod common;

use std::time::{Duration, Instant};

use gallai_core::bounds::{evaluate_bounds, general_upper, matching_value, p3_forest_bracket, p3_ramsey, s2_value};
use gallai_core::constructions::{layered_lower_bound, paley_coloring, rook_coloring};
use gallai_core::corpus::gallai_corpus;
use gallai_core::detect::{find_mono, max_mono_star};
use gallai_core::partition::{check_part_dichotomy, find_finest_partition, DichotomySide};
use gallai_core::reduction::{verify_reduced_condition, ReducedVerdict};
use gallai_core::search::{
    gallai_ramsey_number, ramsey_number, verify_value, Certificate, Outcome, SearchConfig, SearchError, ValueReport,
    Verdict,
};
use gallai_core::{find_gallai_partition, pentagon, Color, EdgeColoring, TargetGraph};

type Check = Result<String, String>;

const K23: TargetGraph = TargetGraph::CompleteBipartite { small: 2, large: 3 };
const K33: TargetGraph = TargetGraph::CompleteBipartite { small: 3, large: 3 };

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

/// Checks a witness with the brute-force oracles, not the detectors.
fn avoids(c: &EdgeColoring, targets: &[TargetGraph]) -> bool {
    targets
        .iter()
        .enumerate()
        .all(|(i, t)| !common::contains(c, i as Color, t))
}

fn check_value(r: &ValueReport, expect: usize, targets: &[TargetGraph], gallai: bool) -> Result<(), String> {
    ensure(r.value == expect, || format!("value {} != {expect}", r.value))?;
    let lower = r.lower.as_ref().ok_or("no lower certificate")?;
    lower.validate()?;
    r.upper.validate()?;
    let w = lower.witness.as_ref().ok_or("lower certificate has no witness")?;
    ensure(w.n() == expect - 1 && avoids(w, targets), || "witness fails the oracle".into())?;
    if gallai {
        ensure(!common::has_rainbow_triangle(w) && w.palette_full(), || "witness is not a full Gallai coloring".into())?;
    }
    ensure(r.upper.outcome == Outcome::Exhausted && r.upper.problem.n == expect, || "no exhaustion at the value".into())
}

fn nodes(c: &Certificate) -> u64 {
    c.stats.nodes
}

fn c1() -> Check {
    let t = [TargetGraph::C4; 2];
    let r = ramsey_number(t, 0, &cfg()).map_err(|e| e.to_string())?;
    check_value(&r, 6, &t, false)?;
    Ok(format!("R(C4,C4) = 6, K5 witness, K6 exhausted in {} nodes", nodes(&r.upper)))
}

fn c2() -> Check {
    let t = [TargetGraph::C4; 3];
    let r = gallai_ramsey_number(&t, 0, &cfg()).map_err(|e| e.to_string())?;
    check_value(&r, 7, &t, true)?;
    let layered = layered_lower_bound(&pentagon(), &TargetGraph::C4, 3).map_err(|e| e.to_string())?;
    ensure(
        layered.n() == 6 && layered.is_gallai() && layered.palette_full() && avoids(&layered, &t),
        || "layered pentagon is not a K6 witness".into(),
    )?;
    Ok(format!(
        "gr_3(K3:C4) = 7, layered pentagon K6 witness, K7 exhausted in {} nodes",
        nodes(&r.upper)
    ))
}

fn c3() -> Check {
    let m = TargetGraph::Matching;
    let mut parts = Vec::new();
    for (sizes, gallai) in [(vec![2, 2], false), (vec![3, 2], false), (vec![2, 2, 2], true)] {
        let targets: Vec<TargetGraph> = sizes.iter().map(|&s| m(s)).collect();
        let formula = matching_value(&sizes).map_err(|e| e.to_string())? as usize;
        let r = if gallai {
            gallai_ramsey_number(&targets, 0, &cfg())
        } else {
            ramsey_number([targets[0], targets[1]], 0, &cfg())
        }
        .map_err(|e| e.to_string())?;
        check_value(&r, formula, &targets, gallai)?;
        parts.push(format!("{sizes:?} -> {}", r.value));
    }
    ensure(parts == ["[2, 2] -> 5", "[3, 2] -> 7", "[2, 2, 2] -> 6"], || format!("{parts:?}"))?;
    Ok(format!("matchings {}", parts.join(", ")))
}

fn c4() -> Check {
    let p = TargetGraph::P3Forest;
    let mut parts = Vec::new();
    for (a, b) in [(2, 2), (2, 1)] {
        let targets = [p(a), p(b)];
        let r = ramsey_number(targets, 0, &cfg()).map_err(|e| e.to_string())?;
        check_value(&r, p3_ramsey(a, b) as usize, &targets, false)?;
        parts.push(format!("R({a}P3,{b}P3) = {}", r.value));
    }
    let (lo, up) = p3_forest_bracket(&[2, 2, 2]).map_err(|e| e.to_string())?;
    ensure(lo.value == 8 && up.map(|u| u.value) == Some(8), || "bracket for (2,2,2) is not exactly 8".into())?;
    let v = verify_value(&[p(2); 3], 8, &cfg()).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::Confirmed, || format!("verify_value gave {:?}", v.verdict))?;
    let w = v.lower.witness.as_ref().ok_or("no witness at 7")?;
    ensure(avoids(w, &[p(2); 3]) && w.is_gallai() && w.palette_full(), || "K7 witness fails the oracle".into())?;
    let upper = v.upper.as_ref().ok_or("no upper certificate")?;
    Ok(format!(
        "{}, gr_3(K3:2P3) = 8 confirmed ({} seed, {} nodes at K8)",
        parts.join(", "),
        v.lower.seed.clone().unwrap_or_else(|| "search".into()),
        nodes(upper)
    ))
}

fn c5() -> Check {
    let p17 = paley_coloring(17).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let free = (0..2).all(|c| !common::complete_bipartite(&p17, c, 3, 3));
    let sweep = start.elapsed();
    ensure(free, || "Paley 17 has a mono K3,3".into())?;
    ensure(sweep < Duration::from_secs(1), || format!("brute-force sweep took {sweep:?}"))?;
    for k in 3..=5 {
        let c = layered_lower_bound(&p17, &K33, k).map_err(|e| e.to_string())?;
        ensure(c.n() == 2 * k + 13, || format!("order {} at k={k}", c.n()))?;
        ensure(c.is_gallai() && c.palette_full(), || format!("k={k} is not a full Gallai coloring"))?;
        ensure(avoids(&c, &vec![K33; k]), || format!("k={k} has a mono K3,3"))?;
    }
    Ok(format!("Paley 17 K3,3-free (sweep {sweep:?}); layered k=3,4,5 on 19, 21, 23 vertices"))
}

fn c6() -> Check {
    let rook = rook_coloring(3).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let free = (0..2).all(|c| !common::complete_bipartite(&rook, c, 2, 3));
    let sweep = start.elapsed();
    ensure(free && rook.n() == 9, || "rook 3x3 has a mono K2,3".into())?;
    let stretch = match verify_reduced_condition(&K23, 10, &cfg()) {
        Ok(cert) => {
            ensure(cert.verdict != ReducedVerdict::Counterexample, || "reduced family at R=10 has a counterexample".into())?;
            format!("{:?} in {} nodes", cert.verdict, cert.stats.nodes)
        }
        Err(SearchError::Infeasible { estimate, .. }) => format!("BUDGET_EXCEEDED (estimate {estimate:.2e})"),
        Err(e) => return Err(e.to_string()),
    };
    Ok(format!("rook 3x3 K2,3-free on K9 (sweep {sweep:?}); reduced condition at R=10: {stretch}"))
}

fn c7() -> Check {
    for k in 3..=10usize {
        let rep = evaluate_bounds(&K33, k, Some(18)).map_err(|e| e.to_string())?;
        let want = 2 * k as u64 + 14;
        ensure(rep.exact() == Some(want), || format!("k={k}: bracket {:?}..{:?}, want {want}", rep.lower, rep.upper))?;
    }
    let mut grid = 0;
    for r in 2..=60u64 {
        for k in 2..=20u64 {
            ensure(general_upper(r, k, 2) == s2_value(r, k), || format!("identity fails at R={r}, k={k}"))?;
            for m in 2..=4 {
                let t = TargetGraph::CompleteBipartite { small: 2, large: m };
                let rep = evaluate_bounds(&t, k as usize, Some(r)).map_err(|e| e.to_string())?;
                ensure(rep.exact() == Some(s2_value(r, k)), || format!("K2,{m} at R={r}, k={k}"))?;
            }
            grid += 1;
        }
    }
    Ok(format!("K3,3 bracket closes at 2k+14 for k=3..10; l=2 upper = R+k-2 on {grid} (R,k) pairs"))
}

fn c8() -> Check {
    let corpus = gallai_corpus(409, 600, 15, 5);
    let mut violations = 0;
    for c in &corpus {
        ensure(!common::has_rainbow_triangle(c), || "corpus coloring is not Gallai".into())?;
        if 5 * max_mono_star(c).leaves < 2 * c.n() {
            violations += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("{} Gallai colorings, 0 with a largest mono star below 2n/5", corpus.len()))
}

fn c9() -> Check {
    let mut counts = Vec::new();
    for (l, m) in [(2, 2), (2, 3)] {
        let family = common::free_family(l, m, 31, 500);
        ensure(family.len() == 500, || format!("only {} free colorings for ({l},{m})", family.len()))?;
        for c in &family {
            let t = TargetGraph::CompleteBipartite { small: l, large: m };
            ensure(
                (0..c.k() as Color).all(|col| matches!(find_mono(c, col, &t), Ok(None))),
                || "family member has the target".into(),
            )?;
            let parts = [
                find_gallai_partition(c).map_err(|e| e.to_string())?,
                find_finest_partition(c).map_err(|e| e.to_string())?.0,
            ];
            for p in parts {
                let rep = check_part_dichotomy(c, &p, l, m).map_err(|e| e.to_string())?;
                ensure(rep.side != DichotomySide::Refutation, || format!("refutation on {c:?}"))?;
            }
        }
        let big = family.iter().map(|c| c.n()).max().unwrap_or(0);
        counts.push(format!("({l},{m}): {} colorings up to n={big}", family.len()));
    }
    Ok(format!("no refutation; {}", counts.join(", ")))
}

fn c10() -> Check {
    let (present, checked) = common::detector_sweep(10, 1000)?;
    let runs = common::symmetry_grid()?;
    Ok(format!(
        "detectors agree on 1000 colorings ({checked} checks, {present} present); symmetry on/off agree on {runs} problems"
    ))
}

fn c11() -> Check {
    let t = [TargetGraph::Clique(3); 2];
    let g = gallai_ramsey_number(&t, 0, &cfg()).map_err(|e| e.to_string())?;
    check_value(&g, 6, &t, true)?;
    let r = ramsey_number(t, 0, &cfg()).map_err(|e| e.to_string())?;
    ensure(r.value == 6, || format!("R(3,3) = {}", r.value))?;
    Ok("gr_2(K3:K3) = 6 = R(3,3)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        ("R(C4,C4)", c1, Duration::from_secs(10)),
        ("gr_3(K3:C4)", c2, Duration::from_secs(600)),
        ("matchings", c3, Duration::from_secs(180)),
        ("P3 forests", c4, Duration::from_secs(2100)),
        ("K3,3 lower bound", c5, Duration::from_secs(60)),
        ("K2,3 lower bound", c6, Duration::from_secs(600)),
        ("formula consistency", c7, Duration::from_secs(60)),
        ("mono star", c8, Duration::from_secs(60)),
        ("part dichotomy", c9, Duration::from_secs(300)),
        ("oracle equivalence", c10, Duration::from_secs(600)),
        ("gr_2(K3:K3)", c11, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            if took <= *limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {took:?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS {:>2}. {name}: {msg} ({:.2}s)", i + 1, took.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {msg} ({:.2}s)", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
