//! Piecewise monotone maps of a compact interval, sided points, itineraries and cylinders.

pub mod builtin;
pub mod spec;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{Exact, Scalar};
use crate::error::MapError;
use crate::symbols::{Symbol, SymbolSeq, Word};

pub use spec::{AnyMap, MapSpec};

pub type ExactMap = IntervalMap<Exact>;
pub type NumericMap = IntervalMap<f64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Increasing,
    Decreasing,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Increasing => 1,
            Orientation::Decreasing => -1,
        }
    }
}

/// `x+` or `x-`: the limit from the right or from the left.
#[derive(Clone, Debug, PartialEq)]
pub struct SidedPoint<S> {
    pub x: S,
    pub side: Side,
}

impl<S: Scalar> SidedPoint<S> {
    pub fn new(x: S, side: Side) -> Self {
        SidedPoint { x, side }
    }

    pub fn key(&self) -> (S::Key, Side) {
        (self.x.key(), self.side)
    }
}

impl<S: Scalar> fmt::Display for SidedPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => "-",
            Side::Right => "+",
        };
        write!(f, "{}{}", self.x, s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Rule<S> {
    Affine { slope: S, intercept: S },
    /// `4t·x(1-x)`; numeric maps only.
    Quadratic { t: f64 },
}

impl<S: Scalar> Rule<S> {
    pub fn apply(&self, x: &S) -> S {
        match self {
            Rule::Affine { slope, intercept } => slope.mul(x).add(intercept),
            Rule::Quadratic { t } => {
                let v = x.to_f64();
                x.from_f64_like(4.0 * t * v * (1.0 - v))
            }
        }
    }

    /// Preimage of `y` on a branch with domain `(lo, hi)`.
    pub fn invert(&self, y: &S, lo: &S, hi: &S) -> S {
        match self {
            Rule::Affine { slope, intercept } => {
                y.sub(intercept).div(slope).expect("affine branch with zero slope")
            }
            Rule::Quadratic { t } => {
                let d = (1.0 - y.to_f64() / t).max(0.0).sqrt();
                let mid = 0.5 * (lo.to_f64() + hi.to_f64());
                let x = if mid < 0.5 { 0.5 * (1.0 - d) } else { 0.5 * (1.0 + d) };
                y.from_f64_like(x)
            }
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, Rule::Affine { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Branch<S> {
    pub lo: S,
    pub hi: S,
    pub rule: Rule<S>,
    pub orientation: Orientation,
}

impl<S: Scalar> Branch<S> {
    pub fn affine(lo: S, hi: S, slope: S, intercept: S) -> Self {
        let orientation = if slope.cmp_tol(&slope.ratio(0, 1), 0.0) == Some(Ordering::Less) {
            Orientation::Decreasing
        } else {
            Orientation::Increasing
        };
        Branch { lo, hi, rule: Rule::Affine { slope, intercept }, orientation }
    }

    /// Value at the domain endpoints, continuously extended.
    pub fn image(&self) -> (S, S) {
        let a = self.rule.apply(&self.lo);
        let b = self.rule.apply(&self.hi);
        match self.orientation {
            Orientation::Increasing => (a, b),
            Orientation::Decreasing => (b, a),
        }
    }
}

impl Branch<f64> {
    pub fn quadratic(lo: f64, hi: f64, t: f64) -> Self {
        let orientation = if hi <= 0.5 { Orientation::Increasing } else { Orientation::Decreasing };
        Branch { lo, hi, rule: Rule::Quadratic { t }, orientation }
    }
}

/// Endpoints `c0 < c1 < … < cN` and the orientation of each piece.
#[derive(Clone, Debug, Serialize)]
pub struct NaturalPartition {
    pub endpoints: Vec<String>,
    pub endpoints_f64: Vec<f64>,
    pub orientations: Vec<i8>,
}

#[derive(Clone, Debug)]
pub struct IntervalMap<S> {
    ambient: (S, S),
    branches: Vec<Branch<S>>,
    tolerance: f64,
    labels: Vec<String>,
    name: String,
}

impl<S: Scalar> IntervalMap<S> {
    /// Build and validate a map.
    pub fn new(ambient: (S, S), branches: Vec<Branch<S>>) -> Result<Self, MapError> {
        let n = branches.len();
        let map = IntervalMap {
            ambient,
            branches,
            tolerance: if S::EXACT { 0.0 } else { DEFAULT_TOLERANCE },
            labels: crate::symbols::default_labels(n),
            name: String::new(),
        };
        map.validate()?;
        Ok(map)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.branches.len() {
            self.labels = labels;
        }
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        if !S::EXACT {
            self.tolerance = tol;
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn ambient(&self) -> &(S, S) {
        &self.ambient
    }

    pub fn branches(&self) -> &[Branch<S>] {
        &self.branches
    }

    pub fn n_branches(&self) -> usize {
        self.branches.len()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.branches.iter().map(|b| b.orientation.sign()).collect()
    }

    pub fn is_affine(&self) -> bool {
        self.branches.iter().all(|b| b.rule.is_affine())
    }

    /// Partition endpoint `c_i`, `0 <= i <= N`.
    pub fn endpoint(&self, i: usize) -> &S {
        if i == 0 {
            &self.branches[0].lo
        } else {
            &self.branches[i - 1].hi
        }
    }

    fn cmp(&self, a: &S, b: &S) -> Option<Ordering> {
        a.cmp_tol(b, self.tolerance)
    }

    fn lt(&self, a: &S, b: &S) -> bool {
        self.cmp(a, b) == Some(Ordering::Less)
    }

    pub fn validate(&self) -> Result<NaturalPartition, MapError> {
        let bs = &self.branches;
        if bs.is_empty() {
            return Err(MapError::NoBranches);
        }
        if bs.len() > Symbol::MAX as usize {
            return Err(MapError::Spec("too many branches".into()));
        }
        for (i, b) in bs.iter().enumerate() {
            if !self.lt(&b.lo, &b.hi) {
                return Err(MapError::EmptyDomain(i));
            }
        }
        for i in 1..bs.len() {
            match bs[i].lo.cmp_tol(&bs[i - 1].hi, 0.0) {
                Some(Ordering::Less) => return Err(MapError::OverlappingDomains(i - 1, i)),
                Some(Ordering::Greater) => return Err(MapError::GapBetweenBranches(i - 1, i)),
                _ => {}
            }
        }
        if bs[0].lo.cmp_tol(&self.ambient.0, 0.0) != Some(Ordering::Equal)
            || bs[bs.len() - 1].hi.cmp_tol(&self.ambient.1, 0.0) != Some(Ordering::Equal)
        {
            return Err(MapError::UncoveredInterval);
        }
        for (i, b) in bs.iter().enumerate() {
            match &b.rule {
                Rule::Affine { slope, .. } => {
                    if slope.is_zero() {
                        return Err(MapError::NonMonotoneBranch(i));
                    }
                }
                Rule::Quadratic { .. } => {
                    if S::EXACT {
                        return Err(MapError::NotAffine);
                    }
                    self.check_sampled_monotone(i)?;
                }
            }
            let (lo, hi) = b.image();
            let below = self.cmp(&lo, &self.ambient.0) == Some(Ordering::Less);
            let above = self.cmp(&hi, &self.ambient.1) == Some(Ordering::Greater);
            if below || above {
                return Err(MapError::ImageEscapesInterval(i));
            }
        }
        Ok(NaturalPartition {
            endpoints: (0..=bs.len()).map(|i| self.endpoint(i).to_string()).collect(),
            endpoints_f64: (0..=bs.len()).map(|i| self.endpoint(i).to_f64()).collect(),
            orientations: self.signs(),
        })
    }

    fn check_sampled_monotone(&self, i: usize) -> Result<(), MapError> {
        let b = &self.branches[i];
        let (lo, hi) = (b.lo.to_f64(), b.hi.to_f64());
        let steps = 1usize << 20;
        let sign = b.orientation.sign() as f64;
        let mut prev = b.rule.apply(&b.lo).to_f64();
        for k in 1..=steps {
            let x = lo + (hi - lo) * (k as f64) / (steps as f64);
            let y = b.rule.apply(&b.lo.from_f64_like(x)).to_f64();
            if (y - prev) * sign <= 0.0 && k < steps {
                return Err(MapError::NonMonotoneBranch(i));
            }
            prev = y;
        }
        Ok(())
    }

    fn check_point(&self, p: &SidedPoint<S>) -> Result<(), MapError> {
        let (a, b) = &self.ambient;
        let bad = || MapError::InvalidSidedPoint(p.to_string());
        match (self.cmp(&p.x, a), self.cmp(&p.x, b)) {
            (Some(Ordering::Less), _) | (_, Some(Ordering::Greater)) => Err(bad()),
            (Some(Ordering::Equal), _) if p.side == Side::Left => Err(bad()),
            (_, Some(Ordering::Equal)) if p.side == Side::Right => Err(bad()),
            _ => Ok(()),
        }
    }

    /// Branch index containing the sided point.
    pub fn locate(&self, p: &SidedPoint<S>) -> Result<usize, MapError> {
        self.check_point(p)?;
        let n = self.branches.len();
        for i in 1..n {
            match self.cmp(&p.x, self.endpoint(i)) {
                None => return Err(MapError::TolExceeded(p.to_string())),
                Some(Ordering::Less) => return Ok(i - 1),
                Some(Ordering::Equal) => {
                    return Ok(if p.side == Side::Left { i - 1 } else { i });
                }
                Some(Ordering::Greater) => {}
            }
        }
        Ok(n - 1)
    }

    /// One-sided image of a sided point.
    pub fn evaluate(&self, p: &SidedPoint<S>) -> Result<SidedPoint<S>, MapError> {
        let i = self.locate(p)?;
        self.evaluate_on(i, p)
    }

    fn evaluate_on(&self, i: usize, p: &SidedPoint<S>) -> Result<SidedPoint<S>, MapError> {
        let b = &self.branches[i];
        let mut y = b.rule.apply(&p.x);
        // Keep numeric images inside I.
        if !S::EXACT {
            let v = y.to_f64();
            if v < self.ambient.0.to_f64() {
                y = self.ambient.0.clone();
            } else if v > self.ambient.1.to_f64() {
                y = self.ambient.1.clone();
            }
        }
        let side = match b.orientation {
            Orientation::Increasing => p.side,
            Orientation::Decreasing => p.side.flip(),
        };
        let q = SidedPoint::new(y, side);
        self.check_point(&q)?;
        Ok(q)
    }

    /// The sided orbit of `p` for up to `n` steps, closed on the first revisit.
    pub fn sided_orbit(&self, p: &SidedPoint<S>, n: usize) -> Result<SidedOrbit<S>, MapError> {
        let mut points: Vec<SidedPoint<S>> = Vec::new();
        let mut symbols: Word = Vec::new();
        let mut seen: HashMap<(S::Key, Side), usize> = HashMap::new();
        let mut cur = p.clone();
        for _ in 0..n {
            if S::EXACT {
                if let Some(&start) = seen.get(&cur.key()) {
                    return Ok(SidedOrbit { points, symbols, loop_start: Some(start) });
                }
                seen.insert(cur.key(), points.len());
            }
            let i = self.locate(&cur)?;
            let next = self.evaluate_on(i, &cur)?;
            symbols.push(i as Symbol);
            points.push(cur);
            cur = next;
        }
        if S::EXACT {
            if let Some(&start) = seen.get(&cur.key()) {
                return Ok(SidedOrbit { points, symbols, loop_start: Some(start) });
            }
        }
        Ok(SidedOrbit { points, symbols, loop_start: None })
    }

    pub fn itinerary(&self, p: &SidedPoint<S>, n: usize) -> Result<SymbolSeq, MapError> {
        Ok(self.sided_orbit(p, n)?.itinerary())
    }

    /// The open cylinder `⟨w0 … w(n-1)⟩`, or `None` when empty.
    pub fn cylinder(&self, word: &[Symbol]) -> Option<(S, S)> {
        let nb = self.branches.len();
        if word.is_empty() {
            return Some(self.ambient.clone());
        }
        if word.iter().any(|&s| s as usize >= nb) {
            return None;
        }
        let last = &self.branches[*word.last().unwrap() as usize];
        let mut j = (last.lo.clone(), last.hi.clone());
        for &s in word[..word.len() - 1].iter().rev() {
            let b = &self.branches[s as usize];
            let (ilo, ihi) = b.image();
            let lo = max_s(&j.0, &ilo);
            let hi = min_s(&j.1, &ihi);
            if !lt_exact(&lo, &hi) {
                return None;
            }
            let (a, c) = (b.rule.invert(&lo, &b.lo, &b.hi), b.rule.invert(&hi, &b.lo, &b.hi));
            let (mut plo, mut phi) = match b.orientation {
                Orientation::Increasing => (a, c),
                Orientation::Decreasing => (c, a),
            };
            plo = max_s(&plo, &b.lo);
            phi = min_s(&phi, &b.hi);
            if !lt_exact(&plo, &phi) {
                return None;
            }
            j = (plo, phi);
        }
        Some(j)
    }

    /// Itinerary of an interior point for `n` steps (plain, not sided).
    pub fn point_itinerary(&self, x: &S, n: usize) -> Result<Word, MapError> {
        let p = SidedPoint::new(x.clone(), Side::Right);
        let orbit = self.sided_orbit(&p, n)?;
        Ok(orbit.itinerary().known_prefix(n))
    }
}

fn lt_exact<S: Scalar>(a: &S, b: &S) -> bool {
    a.cmp_tol(b, 0.0) == Some(Ordering::Less)
}

fn max_s<S: Scalar>(a: &S, b: &S) -> S {
    if lt_exact(a, b) {
        b.clone()
    } else {
        a.clone()
    }
}

fn min_s<S: Scalar>(a: &S, b: &S) -> S {
    if lt_exact(b, a) {
        b.clone()
    } else {
        a.clone()
    }
}

/// Orbit of a sided point with the branch visited at each step.
#[derive(Clone, Debug)]
pub struct SidedOrbit<S> {
    pub points: Vec<SidedPoint<S>>,
    pub symbols: Word,
    /// Index the orbit returns to after its last point, if it closed.
    pub loop_start: Option<usize>,
}

impl<S: Scalar> SidedOrbit<S> {
    pub fn itinerary(&self) -> SymbolSeq {
        match self.loop_start {
            Some(s) => {
                SymbolSeq::periodic(self.symbols[..s].to_vec(), self.symbols[s..].to_vec())
            }
            None => SymbolSeq::truncated(self.symbols.clone()),
        }
    }
}

impl ExactMap {
    /// Exact map from rational-style triples `(lo, hi, slope, intercept)`.
    pub fn from_affine(
        ambient: (Exact, Exact),
        pieces: Vec<(Exact, Exact, Exact, Exact)>,
    ) -> Result<Self, MapError> {
        let branches =
            pieces.into_iter().map(|(lo, hi, a, b)| Branch::affine(lo, hi, a, b)).collect();
        IntervalMap::new(ambient, branches)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_map::builtin::{beta_golden, tent};

    fn q(n: i64, d: i64) -> Exact {
        Exact::rational(n, d)
    }

    #[test]
    fn tent_evaluate_examples() {
        let m = tent("2").unwrap();
        let r = m.evaluate(&SidedPoint::new(q(1, 2), Side::Left)).unwrap();
        assert_eq!(r, SidedPoint::new(q(1, 1), Side::Left));
        let r = m.evaluate(&SidedPoint::new(q(1, 2), Side::Right)).unwrap();
        assert_eq!(r, SidedPoint::new(q(1, 1), Side::Left));
        assert!(matches!(
            m.evaluate(&SidedPoint::new(q(1, 1), Side::Right)),
            Err(MapError::InvalidSidedPoint(_))
        ));
    }

    #[test]
    fn overlapping_domains_rejected() {
        let b = vec![
            Branch::affine(q(0, 1), q(1, 2), q(2, 1), q(0, 1)),
            Branch::affine(q(1, 4), q(1, 1), q(1, 1), q(0, 1)),
        ];
        assert_eq!(IntervalMap::new((q(0, 1), q(1, 1)), b).unwrap_err(), MapError::OverlappingDomains(0, 1));
    }

    #[test]
    fn tent_cylinder_lr() {
        let m = tent("2").unwrap();
        assert_eq!(m.cylinder(&[0, 1]), Some((q(1, 4), q(1, 2))));
    }

    #[test]
    fn golden_cylinder_11_empty() {
        let m = beta_golden();
        assert_eq!(m.cylinder(&[1, 1]), None);
        assert!(m.cylinder(&[1, 0]).is_some());
    }

    #[test]
    fn itinerary_closes() {
        let m = tent("2").unwrap();
        let it = m.itinerary(&SidedPoint::new(q(1, 2), Side::Left), 5).unwrap();
        assert_eq!(it, SymbolSeq::periodic(vec![0, 1], vec![0]));
        let it = m.itinerary(&SidedPoint::new(q(0, 1), Side::Right), 4).unwrap();
        assert_eq!(it, SymbolSeq::constant(0));
    }
}
