//! Closed-form lower and upper bounds on Gallai-Ramsey numbers of
//! bipartite targets, each tagged with the formula that produced it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::TargetGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("no Ramsey value for {0} supplied or known, and no range applies")]
    MissingR(TargetGraph),
    #[error("target {0} is not bipartite")]
    NotBipartite(TargetGraph),
    #[error("need k >= 2, got {0}")]
    BadColorCount(usize),
    #[error("bad sizes: {0}")]
    BadSizes(String),
}

/// One evaluated formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: u64,
    /// Unrounded value for formulas that are not integral.
    pub real: Option<f64>,
    pub formula: String,
}

impl Bound {
    fn int(value: u64, formula: &str) -> Self {
        Self {
            value,
            real: None,
            formula: formula.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub target: TargetGraph,
    pub k: usize,
    pub r_value: Option<u64>,
    pub r_provenance: String,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    /// Every formula evaluated, `name = value`.
    pub formula_refs: Vec<String>,
}

impl BoundsReport {
    /// The exact value when the bracket is closed.
    pub fn exact(&self) -> Option<u64> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l.value == u.value => Some(l.value),
            _ => None,
        }
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let show = |b: &Option<Bound>| match b {
            Some(b) => match b.real {
                Some(r) => format!("{} ({r:.4}) [{}]", b.value, b.formula),
                None => format!("{} [{}]", b.value, b.formula),
            },
            None => "-".to_string(),
        };
        s.push_str(&format!("{:<10} {}\n", "target", self.target));
        s.push_str(&format!("{:<10} {}\n", "k", self.k));
        s.push_str(&format!(
            "{:<10} {}\n",
            "R(H,H)",
            self.r_value
                .map(|r| format!("{r} ({})", self.r_provenance))
                .unwrap_or_else(|| format!("- ({})", self.r_provenance))
        ));
        s.push_str(&format!("{:<10} {}\n", "lower", show(&self.lower)));
        s.push_str(&format!("{:<10} {}\n", "upper", show(&self.upper)));
        if let Some(e) = self.exact() {
            s.push_str(&format!("{:<10} {}\n", "exact", e));
        }
        for f in &self.formula_refs {
            s.push_str(&format!("{:<10} {}\n", "formula", f));
        }
        s
    }
}

/// Two-color Ramsey values `R(H, H)` this crate treats as known.
pub fn known_ramsey(target: &TargetGraph) -> Option<u64> {
    match *target {
        TargetGraph::CompleteBipartite { small: 2, large: 2 } => Some(6),
        TargetGraph::CompleteBipartite { small: 2, large: 3 } => Some(10),
        TargetGraph::CompleteBipartite { small: 3, large: 3 } => Some(18),
        TargetGraph::Matching(t) => Some(3 * t as u64 - 1),
        TargetGraph::P3Forest(t) => Some(4 * t as u64 - 1),
        _ => None,
    }
}

/// One factor of `4n - 4` in the divisibility condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExooFactor {
    /// `p + 1` with `p` a prime, `p = 3 mod 4`.
    PrimePlusOne { p: u64 },
    /// `2 (q + 1)` with `q = base^exp` a prime power, `q = 1 mod 4`.
    TwicePrimePowerPlusOne { base: u64, exp: u32 },
}

impl ExooFactor {
    pub fn value(&self) -> u64 {
        match *self {
            ExooFactor::PrimePlusOne { p } => p + 1,
            ExooFactor::TwicePrimePowerPlusOne { base, exp } => 2 * (base.pow(exp) + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExooBound {
    /// Lower bound on `R(K_{2,n}, K_{2,n})`.
    pub bound: u64,
    pub two_power: u32,
    pub factors: Vec<ExooFactor>,
}

fn is_prime(x: u64) -> bool {
    x >= 2 && (2..).take_while(|d| d * d <= x).all(|d| x % d != 0)
}

/// `(base, exp)` when `x = base^exp` for a prime `base`.
fn prime_power(x: u64) -> Option<(u64, u32)> {
    if x < 2 {
        return None;
    }
    let base = (2..=x).find(|d| x % d == 0)?;
    let mut rest = x;
    let mut exp = 0;
    while rest % base == 0 {
        rest /= base;
        exp += 1;
    }
    (rest == 1).then_some((base, exp))
}

fn admissible(k: u64) -> Option<ExooFactor> {
    if k >= 4 {
        let p = k - 1;
        if p % 4 == 3 && is_prime(p) {
            return Some(ExooFactor::PrimePlusOne { p });
        }
    }
    if k % 2 == 0 && k >= 4 {
        let q = k / 2 - 1;
        if q % 4 == 1 {
            if let Some((base, exp)) = prime_power(q) {
                return Some(ExooFactor::TwicePrimePowerPlusOne { base, exp });
            }
        }
    }
    None
}

/// Writes `m` as a product of admissible factors, nondecreasing from `min`.
fn factor_into(m: u64, min: u64, acc: &mut Vec<ExooFactor>) -> bool {
    if m == 1 {
        return true;
    }
    let mut d = min.max(4);
    while d <= m {
        if m % d == 0 {
            if let Some(f) = admissible(d) {
                acc.push(f);
                if factor_into(m / d, d, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        d += 1;
    }
    false
}

/// Lower bound on `R(K_{2,n}, K_{2,n})` from the divisibility condition on
/// `4n - 4`: `4n - 3` when a factorization with a positive power of two
/// exists, `4n - 4` when only one with no power of two exists.
pub fn exoo_lower_bound(n: u64) -> Option<ExooBound> {
    if n < 2 {
        return None;
    }
    let total = 4 * n - 4;
    let v2 = total.trailing_zeros();
    for t in (1..=v2).chain(std::iter::once(0)) {
        let mut factors = Vec::new();
        if factor_into(total >> t, 4, &mut factors) {
            let bound = if t > 0 { 4 * n - 3 } else { 4 * n - 4 };
            return Some(ExooBound {
                bound,
                two_power: t,
                factors,
            });
        }
    }
    None
}

/// Gallai-Ramsey number for per-color matchings `n_i P2`:
/// `n_1 + 1 + sum (n_i - 1)`, with `n_1` the largest.
pub fn matching_value(sizes: &[usize]) -> Result<u64, BoundsError> {
    check_sizes(sizes)?;
    let n1 = *sizes.iter().max().expect("nonempty") as u64;
    Ok(n1 + 1 + sizes.iter().map(|&s| s as u64 - 1).sum::<u64>())
}

/// Two-color Ramsey number `R(n_1 P3, n_2 P3) = 3 n_1 + n_2 - 1`, `n_1 >= n_2`.
pub fn p3_ramsey(a: usize, b: usize) -> u64 {
    let (n1, n2) = (a.max(b) as u64, a.min(b) as u64);
    3 * n1 + n2 - 1
}

/// Bracket for per-color P3 forests `n_i P3`.
///
/// Lower: `2 n_1 + 1 + sum (n_i - 1)`. For `n_1 = 2` this is exact. For
/// `n_1 >= 3` the upper bound is the logarithmic one, rounded up, or the
/// quadratic one if smaller.
pub fn p3_forest_bracket(sizes: &[usize]) -> Result<(Bound, Option<Bound>), BoundsError> {
    check_sizes(sizes)?;
    let k = sizes.len() as u64;
    let n1 = *sizes.iter().max().expect("nonempty") as u64;
    let lower_value = 2 * n1 + 1 + sizes.iter().map(|&s| s as u64 - 1).sum::<u64>();
    let lower = Bound::int(lower_value, "2n1 + 1 + sum(ni - 1)");
    if k < 2 {
        return Err(BoundsError::BadColorCount(sizes.len()));
    }
    let upper = match n1 {
        1 => None,
        2 => Some(Bound::int(lower_value, "n1 = 2: 2n1 + 1 + sum(ni - 1)")),
        _ => {
            let n1f = n1 as f64;
            let extra = (n1 - 1) * (k.saturating_sub(2));
            let real = 4.0 * (n1f - 1.0)
                + (9.0 * n1f - 3.0) / 2.0 * (1.5 * n1f - 1.0).ln()
                + 1.0
                + extra as f64;
            let log = Bound {
                value: real.ceil() as u64,
                real: Some(real),
                formula: "4(n1 - 1) + (9n1 - 3)/2 ln(3n1/2 - 1) + 1 + (n1 - 1)(k - 2)".into(),
            };
            let quad = Bound::int(4 * n1 * n1 + extra - 1, "4n1^2 + (n1 - 1)(k - 2) - 1");
            Some(if quad.value < log.value { quad } else { log })
        }
    };
    Ok((lower, upper))
}

fn check_sizes(sizes: &[usize]) -> Result<(), BoundsError> {
    if sizes.is_empty() || sizes.contains(&0) {
        Err(BoundsError::BadSizes(format!("{sizes:?}")))
    } else {
        Ok(())
    }
}

/// `R + (s - 1)(k - 2)`: the layered lower bound.
pub fn layered_lower(r: u64, s: u64, k: u64) -> u64 {
    r + (s - 1) * (k - 2)
}

/// `R + (k - 2)`: the exact value for `s(H) = 2`.
pub fn s2_value(r: u64, k: u64) -> u64 {
    r + k - 2
}

/// `max(6m - 2, R) + 2(k - 2)`: upper bound for `K_{3,m}`, `k >= 3`.
pub fn k3m_upper(m: u64, r: u64, k: u64) -> u64 {
    (6 * m - 2).max(r) + 2 * (k - 2)
}

/// `(R + k - 3)(l - 1) + 1`: upper bound for `K_{l,m}`, `l >= 2`.
pub fn general_upper(r: u64, k: u64, l: u64) -> u64 {
    (r + k - 3) * (l - 1) + 1
}

/// Evaluates every applicable closed-form bound for `gr_k(K3 : H)`.
///
/// `r_value` is `R(H, H)`; when absent, a small table of known values and,
/// for `K_{3,m}`, the general range on `R(K_{3,m}, K_{3,m})` are used.
pub fn evaluate_bounds(target: &TargetGraph, k: usize, r_value: Option<u64>) -> Result<BoundsReport, BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadColorCount(k));
    }
    target
        .validate()
        .map_err(|e| BoundsError::BadSizes(e.to_string()))?;
    let kk = k as u64;
    let mut lowers: Vec<Bound> = Vec::new();
    let mut uppers: Vec<Bound> = Vec::new();
    let (r, provenance) = match (r_value, known_ramsey(target)) {
        (Some(r), _) => (Some(r), "supplied".to_string()),
        (None, Some(r)) => (Some(r), "known value".to_string()),
        (None, None) => (None, "unknown".to_string()),
    };
    match *target {
        TargetGraph::Clique(_) => return Err(BoundsError::NotBipartite(*target)),
        TargetGraph::Matching(t) => {
            let v = matching_value(&vec![t; k])?;
            lowers.push(Bound::int(v, "n1 + 1 + sum(ni - 1)"));
            uppers.push(Bound::int(v, "n1 + 1 + sum(ni - 1)"));
        }
        TargetGraph::P3Forest(t) => {
            let (lo, up) = p3_forest_bracket(&vec![t; k])?;
            lowers.push(lo);
            uppers.extend(up);
        }
        TargetGraph::Star(_) => {
            let r = r.ok_or(BoundsError::MissingR(*target))?;
            lowers.push(Bound::int(r, "R + (s - 1)(k - 2)"));
        }
        TargetGraph::CompleteBipartite { small: l, large: m } => {
            let (l64, m64) = (l as u64, m as u64);
            match r {
                Some(r) => {
                    lowers.push(Bound::int(layered_lower(r, l64, kk), "R + (s - 1)(k - 2)"));
                    if l == 2 {
                        uppers.push(Bound::int(s2_value(r, kk), "s = 2: R + (k - 2)"));
                    }
                    if l == 3 && k >= 3 {
                        uppers.push(Bound::int(k3m_upper(m64, r, kk), "max(6m - 2, R) + 2(k - 2)"));
                        if m == 3 && r == 18 {
                            uppers.push(Bound::int(2 * kk + 14, "K3,3: 2k + 14"));
                        }
                    }
                    if l >= 2 {
                        uppers.push(Bound::int(general_upper(r, kk, l64), "(R + k - 3)(l - 1) + 1"));
                    }
                }
                None if l == 3 && k >= 3 => {
                    let exponent = (3.0 * m as f64 - 1.0) / (3.0 + m as f64);
                    let r_low = 2f64.powf(exponent);
                    let low = Bound {
                        value: r_low.ceil() as u64 + 2 * (kk - 2),
                        real: Some(r_low + 2.0 * (kk - 2) as f64),
                        formula: "2^((3m - 1)/(3 + m)) + 2(k - 2)".into(),
                    };
                    lowers.push(low);
                    uppers.push(Bound::int(
                        (6 * m64 - 2).max(8 * m64 - 2) + 2 * (kk - 2),
                        "max(6m - 2, 8m - 2) + 2(k - 2)",
                    ));
                }
                None if l == 2 => match exoo_lower_bound(m64) {
                    Some(e) => lowers.push(Bound::int(e.bound + kk - 2, "exoo(m) + (k - 2)")),
                    None => return Err(BoundsError::MissingR(*target)),
                },
                None => return Err(BoundsError::MissingR(*target)),
            }
        }
    }
    let formula_refs = lowers
        .iter()
        .map(|b| format!("lower {} = {}", b.formula, b.value))
        .chain(uppers.iter().map(|b| format!("upper {} = {}", b.formula, b.value)))
        .collect();
    let lower = lowers.into_iter().max_by_key(|b| b.value);
    let upper = uppers.into_iter().min_by_key(|b| b.value);
    if let (Some(lo), Some(up)) = (&lower, &upper) {
        debug_assert!(lo.value <= up.value, "{lo:?} > {up:?}");
    }
    Ok(BoundsReport {
        target: *target,
        k,
        r_value: r,
        r_provenance: provenance,
        lower,
        upper,
        formula_refs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exoo_examples() {
        let e2 = exoo_lower_bound(2).unwrap();
        assert_eq!(e2.bound, 5);
        assert!(e2.factors.is_empty());
        assert_eq!(exoo_lower_bound(3).unwrap().bound, 9);
        assert_eq!(exoo_lower_bound(5).unwrap().bound, 17);
        for n in 2..200 {
            if let Some(e) = exoo_lower_bound(n) {
                let product: u64 = e.factors.iter().map(ExooFactor::value).product();
                assert_eq!(product << e.two_power, 4 * n - 4);
            }
        }
    }

    #[test]
    fn k33_values() {
        let r = evaluate_bounds(&TargetGraph::CompleteBipartite { small: 3, large: 3 }, 3, Some(18)).unwrap();
        assert_eq!(r.lower.as_ref().unwrap().value, 20);
        assert_eq!(r.exact(), Some(20));
    }

    #[test]
    fn k23_value() {
        let r = evaluate_bounds(&TargetGraph::CompleteBipartite { small: 2, large: 3 }, 5, Some(10)).unwrap();
        assert_eq!(r.exact(), Some(13));
    }

    #[test]
    fn matchings_and_forests() {
        assert_eq!(matching_value(&[2, 2]).unwrap(), 5);
        assert_eq!(matching_value(&[3, 2]).unwrap(), 7);
        assert_eq!(matching_value(&[2, 2, 2]).unwrap(), 6);
        assert_eq!(p3_ramsey(2, 2), 7);
        assert_eq!(p3_ramsey(2, 1), 6);
        let (lo, up) = p3_forest_bracket(&[2, 2, 2]).unwrap();
        assert_eq!(lo.value, 8);
        assert_eq!(up.unwrap().value, 8);
        let (lo, up) = p3_forest_bracket(&[3, 3, 3]).unwrap();
        let up = up.unwrap();
        assert!(lo.value <= up.value);
        assert!(up.real.unwrap() <= up.value as f64);
    }

    #[test]
    fn missing_r_and_cliques() {
        assert!(matches!(
            evaluate_bounds(&TargetGraph::CompleteBipartite { small: 4, large: 5 }, 3, None),
            Err(BoundsError::MissingR(_))
        ));
        assert!(matches!(
            evaluate_bounds(&TargetGraph::Clique(3), 3, None),
            Err(BoundsError::NotBipartite(_))
        ));
        let r = evaluate_bounds(&TargetGraph::CompleteBipartite { small: 3, large: 4 }, 3, None).unwrap();
        assert!(r.lower.unwrap().value <= r.upper.unwrap().value);
    }
}
