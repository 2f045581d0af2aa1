//! Piecewise monotone horseshoes of `f^T`: exact certificates for entropy lower bounds.

use serde::Serialize;

use crate::arith::Exact;
use crate::interval_map::{ExactMap, Rule};

#[derive(Clone, Debug)]
pub struct Horseshoe {
    /// Disjoint closed intervals, left to right.
    pub intervals: Vec<(Exact, Exact)>,
    pub t: usize,
    pub entropy: f64,
    pub monotone: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HorseshoeView {
    pub intervals: Vec<(String, String)>,
    pub t: usize,
    pub entropy: f64,
    pub monotone: bool,
}

impl Horseshoe {
    pub fn view(&self) -> HorseshoeView {
        HorseshoeView {
            intervals: self.intervals.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            t: self.t,
            entropy: self.entropy,
            monotone: self.monotone,
        }
    }
}

/// A monotone lap of `f^T` with `f^T(x) = slope·x + intercept` on `(lo, hi)`.
#[derive(Clone, Debug)]
struct Lap {
    lo: Exact,
    hi: Exact,
    slope: Exact,
    intercept: Exact,
}

impl Lap {
    fn apply(&self, x: &Exact) -> Exact {
        self.slope.mul(x).add(&self.intercept)
    }

    fn image(&self, lo: &Exact, hi: &Exact) -> (Exact, Exact) {
        let (a, b) = (self.apply(lo), self.apply(hi));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

fn affine(map: &ExactMap, i: usize) -> Option<(Exact, Exact)> {
    match &map.branches()[i].rule {
        Rule::Affine { slope, intercept } => Some((slope.clone(), intercept.clone())),
        Rule::Quadratic { .. } => None,
    }
}

/// All laps of `f^t`, left to right.
fn laps(map: &ExactMap, t: usize) -> Option<Vec<Lap>> {
    let (a, b) = map.ambient().clone();
    let one = Exact::rational(1, 1);
    let mut cur = vec![Lap { lo: a, hi: b, slope: one, intercept: Exact::rational(0, 1) }];
    for _ in 0..t {
        let mut next = Vec::new();
        for lap in &cur {
            let (ilo, ihi) = lap.image(&lap.lo, &lap.hi);
            let mut pieces = Vec::new();
            for (k, br) in map.branches().iter().enumerate() {
                let lo = if ilo < br.lo { br.lo.clone() } else { ilo.clone() };
                let hi = if ihi > br.hi { br.hi.clone() } else { ihi.clone() };
                if lo >= hi {
                    continue;
                }
                let inv = |y: &Exact| y.sub(&lap.intercept).div(&lap.slope).expect("nonzero slope");
                let (x, y) = (inv(&lo), inv(&hi));
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                let (s, c) = affine(map, k)?;
                pieces.push(Lap {
                    lo: x,
                    hi: y,
                    slope: s.mul(&lap.slope),
                    intercept: s.mul(&lap.intercept).add(&c),
                });
            }
            pieces.sort_by(|p, q| p.lo.cmp(&q.lo));
            next.extend(pieces);
        }
        cur = next;
    }
    Some(cur)
}

/// Best horseshoe over `T ≤ t_max`, built from laps of `f^T` shrunk by `1/grid` of their length.
pub fn find_horseshoe(map: &ExactMap, t_max: usize, grid: u32) -> Option<Horseshoe> {
    let mut best: Option<Horseshoe> = None;
    let margin = Exact::rational(1, grid.max(3) as i64);
    for t in 1..=t_max {
        let laps = laps(map, t)?;
        let shrunk: Vec<(Exact, Exact, Exact, Exact)> = laps
            .iter()
            .map(|l| {
                let d = l.hi.sub(&l.lo).mul(&margin);
                let (lo, hi) = (l.lo.add(&d), l.hi.sub(&d));
                let (ilo, ihi) = l.image(&lo, &hi);
                (lo, hi, ilo, ihi)
            })
            .collect();
        let f: Vec<[f64; 4]> = shrunk
            .iter()
            .map(|(a, b, c, d)| [a.to_f64(), b.to_f64(), c.to_f64(), d.to_f64()])
            .collect();
        let n = f.len();
        let mut top = (1usize, 0usize, 0usize);
        for a in 0..n {
            // Lap a must cover the hull on the left.
            if f[a][2] >= f[a][0] {
                continue;
            }
            let eligible: Vec<usize> = (a..n).filter(|&i| f[i][2] < f[a][0]).collect();
            for (pos, &b) in eligible.iter().enumerate() {
                if pos + 1 <= top.0 {
                    continue;
                }
                let right = f[b][1];
                if f[a][3] <= right || f[b][3] <= right {
                    continue;
                }
                let count = eligible[..=pos].iter().filter(|&&i| f[i][3] > right).count();
                if count > top.0 {
                    top = (count, a, b);
                }
            }
        }
        if top.0 < 2 {
            continue;
        }
        let (_, a, b) = top;
        let right = f[b][1];
        let chosen: Vec<(Exact, Exact)> = (a..=b)
            .filter(|&i| f[i][2] < f[a][0] && f[i][3] > right)
            .map(|i| (shrunk[i].0.clone(), shrunk[i].1.clone()))
            .collect();
        let h = Horseshoe {
            entropy: (chosen.len() as f64).ln() / t as f64,
            intervals: chosen,
            t,
            monotone: true,
        };
        if verify_horseshoe(map, &h) && best.as_ref().is_none_or(|b| h.entropy > b.entropy) {
            best = Some(h);
        }
    }
    best
}

/// Exact check: disjointness, monotonicity of `f^T` on each interval, and that each image
/// contains a strict neighbourhood of the convex hull of the union.
pub fn verify_horseshoe(map: &ExactMap, h: &Horseshoe) -> bool {
    let iv = &h.intervals;
    if iv.is_empty() || h.t == 0 {
        return false;
    }
    if iv.iter().any(|(a, b)| a >= b) || iv.windows(2).any(|w| w[0].1 >= w[1].0) {
        return false;
    }
    let (hl, hr) = (&iv[0].0, &iv[iv.len() - 1].1);
    for (lo, hi) in iv {
        let (mut x, mut y) = (lo.clone(), hi.clone());
        for _ in 0..h.t {
            let Some(k) = map.branches().iter().position(|b| b.lo <= x && y <= b.hi) else {
                return false;
            };
            let Some((s, c)) = affine(map, k) else {
                return false;
            };
            let (u, v) = (s.mul(&x).add(&c), s.mul(&y).add(&c));
            (x, y) = if u <= v { (u, v) } else { (v, u) };
        }
        if !(x < *hl && y > *hr) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_map::builtin::{full, identity, tent};

    fn q(n: i64, d: i64) -> Exact {
        Exact::rational(n, d)
    }

    #[test]
    fn full3_two_lap_certificate() {
        let h = Horseshoe {
            intervals: vec![(q(23, 50), q(27, 50)), (q(57, 100), q(13, 20))],
            t: 2,
            entropy: 2f64.ln() / 2.0,
            monotone: true,
        };
        assert!(verify_horseshoe(&full(3).unwrap(), &h));
        let mut bad = h.clone();
        bad.intervals[1] = (q(1, 2), q(13, 20));
        assert!(!verify_horseshoe(&full(3).unwrap(), &bad));
    }

    #[test]
    fn tent_search() {
        let h = find_horseshoe(&tent("2").unwrap(), 6, 64).unwrap();
        assert!(h.entropy <= 2f64.ln() + 1e-12);
        assert!(h.entropy > 2f64.ln() - 0.1);
    }

    #[test]
    fn single_branch_none() {
        assert!(find_horseshoe(&identity(), 4, 64).is_none());
    }
}
