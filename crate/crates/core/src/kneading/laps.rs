//! Lap numbers and the length growth rate via a forward-image recursion.
//!
//! A nonempty cylinder `⟨w⟩` of length `n` is tracked only through its image `f^n⟨w⟩`;
//! cylinders sharing an image have the same extensions, so counting by image is exact.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{ln_biguint, Scalar};
use crate::error::KneadingError;
use crate::interval_map::IntervalMap;

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

struct Level<S: Scalar> {
    states: HashMap<(S::Key, S::Key), (S, S, BigUint)>,
}

/// Run the recursion for `n` steps and return `(#P^k, Σ |f^k⟨w⟩|)` for `k = 1..=n`.
fn run<S: Scalar>(
    map: &IntervalMap<S>,
    n: usize,
    budget: usize,
) -> Result<Vec<(BigUint, f64)>, KneadingError> {
    let tol = map.tolerance();
    let (a, b) = map.ambient().clone();
    let mut level: Level<S> = Level { states: HashMap::new() };
    level.states.insert((a.key(), b.key()), (a, b, BigUint::one()));
    let mut out = Vec::with_capacity(n);
    let mut seen = 0usize;
    for _ in 0..n {
        let mut next: Level<S> = Level { states: HashMap::new() };
        for (lo, hi, count) in level.states.values() {
            for br in map.branches() {
                let l = if lo.cmp_tol(&br.lo, 0.0) == Some(Ordering::Less) { &br.lo } else { lo };
                let h = if hi.cmp_tol(&br.hi, 0.0) == Some(Ordering::Greater) { &br.hi } else { hi };
                if l.cmp_tol(h, tol) != Some(Ordering::Less) {
                    continue;
                }
                let (x, y) = (br.rule.apply(l), br.rule.apply(h));
                let (x, y) = if br.orientation.sign() > 0 { (x, y) } else { (y, x) };
                let e = next
                    .states
                    .entry((x.key(), y.key()))
                    .or_insert_with(|| (x, y, BigUint::zero()));
                e.2 += count;
            }
        }
        seen += next.states.len();
        if seen > budget {
            return Err(KneadingError::BudgetExceeded(budget));
        }
        let laps: BigUint = next.states.values().map(|s| &s.2).sum();
        let var: f64 = next
            .states
            .values()
            .map(|(x, y, c)| c.to_f64().unwrap_or(f64::INFINITY) * (y.to_f64() - x.to_f64()))
            .sum();
        out.push((laps, var));
        level = next;
    }
    Ok(out)
}

/// `#P^k` (the number of nonempty cylinders of length `k`) for `k = 1..=n`.
pub fn lap_numbers<S: Scalar>(
    map: &IntervalMap<S>,
    n: usize,
    budget: usize,
) -> Result<Vec<BigUint>, KneadingError> {
    Ok(run(map, n, budget)?.into_iter().map(|(l, _)| l).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct LapEntropy {
    /// `(1/n) log #P^n` at the largest `n`.
    pub estimate: f64,
    /// `min_k (1/k) log #P^k`, an upper bound by submultiplicativity.
    pub upper_bound: f64,
    pub n: usize,
    pub estimates: Vec<f64>,
    /// Fitted geometric rate of the successive differences; informational only.
    pub empirical_rate: Option<f64>,
}

pub fn entropy_lap<S: Scalar>(map: &IntervalMap<S>, n: usize) -> Result<LapEntropy, KneadingError> {
    let laps = lap_numbers(map, n, DEFAULT_STATE_BUDGET)?;
    let estimates: Vec<f64> =
        laps.iter().enumerate().map(|(k, l)| ln_biguint(l) / (k + 1) as f64).collect();
    let upper_bound = estimates.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(LapEntropy {
        estimate: *estimates.last().unwrap_or(&0.0),
        upper_bound,
        n,
        empirical_rate: fit_rate(&estimates),
        estimates,
    })
}

/// Geometric mean ratio of the last few successive differences.
fn fit_rate(e: &[f64]) -> Option<f64> {
    let d: Vec<f64> = e.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let tail: Vec<f64> = d.iter().rev().take(6).cloned().filter(|x| *x > 0.0).collect();
    if tail.len() < 2 {
        return None;
    }
    let r = (tail[0] / tail[tail.len() - 1]).powf(1.0 / (tail.len() - 1) as f64);
    r.is_finite().then_some(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthGrowth {
    /// `(1/n) log (Var f^n / |I|)` at the largest `n`.
    pub estimate: f64,
    pub n: usize,
    pub estimates: Vec<f64>,
}

/// Exponential growth rate of the total variation of `f^n`.
pub fn length_growth<S: Scalar>(map: &IntervalMap<S>, n: usize) -> Result<LengthGrowth, KneadingError> {
    let (a, b) = map.ambient();
    let len = b.to_f64() - a.to_f64();
    let data = run(map, n, DEFAULT_STATE_BUDGET)?;
    let estimates: Vec<f64> =
        data.iter().enumerate().map(|(k, (_, v))| (v / len).ln() / (k + 1) as f64).collect();
    Ok(LengthGrowth { estimate: *estimates.last().unwrap_or(&0.0), n, estimates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_map::builtin::{beta_golden, full, tent};

    #[test]
    fn tent_and_full_counts() {
        let l = lap_numbers(&tent("2").unwrap(), 10, 1000).unwrap();
        for (k, x) in l.iter().enumerate() {
            assert_eq!(*x, BigUint::from(2u32).pow(k as u32 + 1));
        }
        let l = lap_numbers(&full(3).unwrap(), 5, 1000).unwrap();
        assert_eq!(l[4], BigUint::from(243u32));
    }

    #[test]
    fn golden_fibonacci() {
        let l = lap_numbers(&beta_golden(), 4, 1000).unwrap();
        let v: Vec<u32> = l.iter().map(|x| x.to_u32().unwrap()).collect();
        assert_eq!(v, vec![2, 3, 5, 8]);
    }

    #[test]
    fn tent_length_growth() {
        let g = length_growth(&tent("3/2").unwrap(), 20).unwrap();
        assert!((g.estimate - 1.5f64.ln()).abs() < 0.05);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            lap_numbers(&tent("3/2").unwrap(), 30, 3),
            Err(KneadingError::BudgetExceeded(3))
        ));
    }
}
