//! Periodic points of the symbolic dynamics, the Artin–Mazur zeta function and
//! equidistribution of periodic orbits.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fmt17, ln_biguint};
use crate::diagram::{build_diagram_pmm, MarkovDiagram};
use crate::error::PeriodicError;
use crate::kneading::{FollowerPair, KneadingData};
use crate::shift::{self, zeta::exp_series, ShiftGraph};
use crate::symbols::{Symbol, SymbolSeq, Verdict, Word};

pub const DEFAULT_BUDGET: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    DirectAdmissibility,
    DiagramLoops,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicCensus {
    pub method: Method,
    /// `fix[n-1] = #{A : σ^n A = A}`.
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub fix: Vec<BigUint>,
    /// Words whose periodic sequence could not be decided, per `n`; never counted in `fix`.
    pub undecidable: Vec<u64>,
}

impl PeriodicCensus {
    pub fn n(&self) -> usize {
        self.fix.len()
    }

    pub fn fix_u64(&self) -> Vec<u64> {
        self.fix.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,fix_n\n");
        for (i, f) in self.fix.iter().enumerate() {
            s.push_str(&format!("{},{}\n", i + 1, f));
        }
        s
    }
}

/// Words `w` of length `n` whose periodic sequence `w^∞` is admissible, plus the count of
/// undecidable ones.
pub fn periodic_words(kd: &KneadingData, n: usize, budget: usize) -> Result<(Vec<Word>, u64), PeriodicError> {
    let firsts: Vec<Symbol> = (0..kd.alphabet_size as Symbol).collect();
    let parts: Vec<Result<(Vec<Word>, u64, usize), PeriodicError>> = firsts
        .par_iter()
        .map(|&b| {
            let mut st = Dfs { kd, n, budget, visited: 0, words: Vec::new(), undecidable: 0 };
            let root = kd.root_pair();
            st.go(Some(root), vec![b])?;
            Ok((st.words, st.undecidable, st.visited))
        })
        .collect();
    let mut words = Vec::new();
    let mut und = 0;
    let mut visited = 0;
    for p in parts {
        let (w, u, v) = p?;
        words.extend(w);
        und += u;
        visited += v;
    }
    if visited > budget {
        return Err(PeriodicError::BudgetExceeded(budget));
    }
    words.sort();
    Ok((words, und))
}

struct Dfs<'a> {
    kd: &'a KneadingData,
    n: usize,
    budget: usize,
    visited: usize,
    words: Vec<Word>,
    undecidable: u64,
}

impl Dfs<'_> {
    /// `pair` is the follower pair of `w` minus its last letter, `None` once it is unknown.
    fn go(&mut self, pair: Option<FollowerPair>, w: Word) -> Result<(), PeriodicError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(PeriodicError::BudgetExceeded(self.budget));
        }
        let b = *w.last().unwrap();
        let next = match pair.map(|p| self.kd.step(&p, b)) {
            Some(Ok(None)) => return Ok(()),
            Some(Ok(Some(q))) => Some(q),
            _ => match self.kd.admits(&w) {
                Verdict::No => return Ok(()),
                _ => None,
            },
        };
        if w.len() == self.n {
            match self.kd.is_admissible(&SymbolSeq::periodic(Vec::new(), w.clone())) {
                Verdict::Yes => self.words.push(w),
                Verdict::No => {}
                Verdict::Undecidable => self.undecidable += 1,
            }
            return Ok(());
        }
        for c in 0..self.kd.alphabet_size as Symbol {
            let mut v = w.clone();
            v.push(c);
            self.go(next, v)?;
        }
        Ok(())
    }
}

pub fn census_direct(kd: &KneadingData, n_max: usize, budget: usize) -> Result<PeriodicCensus, PeriodicError> {
    let mut fix = Vec::new();
    let mut undecidable = Vec::new();
    for n in 1..=n_max {
        let (w, u) = periodic_words(kd, n, budget)?;
        fix.push(BigUint::from(w.len()));
        undecidable.push(u);
    }
    Ok(PeriodicCensus { method: Method::DirectAdmissibility, fix, undecidable })
}

/// `fix[n] = tr A^n` on a complete finite diagram.
pub fn census_diagram(d: &MarkovDiagram, n_max: usize) -> Result<PeriodicCensus, PeriodicError> {
    if !d.complete {
        return Err(PeriodicError::IncompleteDiagram);
    }
    Ok(PeriodicCensus {
        method: Method::DiagramLoops,
        fix: shift::zeta::traces(&d.arrows, n_max),
        undecidable: vec![0; n_max],
    })
}

/// Census by either method, building the diagram with `depth_cap` when needed.
pub fn count_periodic(
    kd: &KneadingData,
    n_max: usize,
    method: Method,
    depth_cap: usize,
    budget: usize,
) -> Result<PeriodicCensus, PeriodicError> {
    match method {
        Method::DirectAdmissibility => census_direct(kd, n_max, budget),
        Method::DiagramLoops => census_diagram(&build_diagram_pmm(kd, depth_cap)?.diagram, n_max),
    }
}

/// Letter words read along the closed paths of length `n`, with multiplicity.
pub fn closed_path_words(d: &MarkovDiagram, n: usize, budget: usize) -> Result<Vec<Word>, PeriodicError> {
    let mut out = Vec::new();
    let mut visited = 0usize;
    for s in 0..d.n_vertices() {
        let mut stack = vec![(s, vec![s])];
        while let Some((v, path)) = stack.pop() {
            visited += 1;
            if visited > budget {
                return Err(PeriodicError::BudgetExceeded(budget));
            }
            if path.len() == n {
                if d.has_arrow(v, s) {
                    out.push(path.iter().map(|&u| d.last_symbol(u)).collect());
                }
                continue;
            }
            for &t in &d.arrows[v] {
                let mut p = path.clone();
                p.push(t);
                stack.push((t, p));
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelDiscrepancy {
    pub n: usize,
    /// Admissible periodic words that no closed path reads.
    pub only_direct: Vec<Word>,
    /// Closed-path words not admissible, or read by more than one path.
    pub only_diagram: Vec<Word>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub levels: Vec<LevelDiscrepancy>,
    /// Exceptional periodic orbits, each as the least rotation of its primitive word.
    pub orbits: Vec<Word>,
}

/// Least rotation of the primitive root of `w`.
fn orbit_key(w: &[Symbol]) -> Word {
    let n = w.len();
    let p = (1..=n).find(|&p| n % p == 0 && w[p..] == w[..n - p]).unwrap_or(n);
    let r = &w[..p];
    (0..p).map(|k| [&r[k..], &r[..k]].concat()).min().unwrap_or_default()
}

/// Multiset differences between the direct and diagram censuses for `n ≤ n_max`.
pub fn discrepancy(kd: &KneadingData, d: &MarkovDiagram, n_max: usize, budget: usize) -> Result<Discrepancy, PeriodicError> {
    if !d.complete {
        return Err(PeriodicError::IncompleteDiagram);
    }
    let mut levels = Vec::new();
    let mut orbits = std::collections::BTreeSet::new();
    for n in 1..=n_max {
        let (direct, _) = periodic_words(kd, n, budget)?;
        let loops = closed_path_words(d, n, budget)?;
        let mut count: BTreeMap<Word, i64> = BTreeMap::new();
        for w in direct {
            *count.entry(w).or_default() += 1;
        }
        for w in loops {
            *count.entry(w).or_default() -= 1;
        }
        let mut only_direct = Vec::new();
        let mut only_diagram = Vec::new();
        for (w, c) in count {
            if c != 0 {
                orbits.insert(orbit_key(&w));
            }
            for _ in 0..c.max(0) {
                only_direct.push(w.clone());
            }
            for _ in 0..(-c).max(0) {
                only_diagram.push(w.clone());
            }
        }
        levels.push(LevelDiscrepancy { n, only_direct, only_diagram });
    }
    Ok(Discrepancy { levels, orbits: orbits.into_iter().collect() })
}

/// Orbits of exact period `n` by Möbius inversion; `None` if some count is not a
/// nonnegative integer.
pub fn exact_period_orbits(fix: &[BigUint]) -> Option<Vec<BigUint>> {
    let mut out = Vec::new();
    for n in 1..=fix.len() {
        let mut s = BigInt::zero();
        for d in (1..=n).filter(|d| n % d == 0) {
            match mobius(n / d) {
                1 => s += BigInt::from(fix[d - 1].clone()),
                -1 => s -= BigInt::from(fix[d - 1].clone()),
                _ => {}
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(n));
        if !r.is_zero() || q.is_negative() {
            return None;
        }
        out.push(q.to_biguint()?);
    }
    Some(out)
}

fn mobius(mut n: usize) -> i8 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaSeries {
    /// Coefficients of `exp Σ fix[n] z^n / n` up to `z^N`.
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub coeffs: Vec<BigInt>,
    /// `(c_{N-2} / c_N)^{1/2}`, or `(c_{N-1}/c_N)` when that is unavailable.
    pub radius_estimate: f64,
}

pub fn zeta(census: &PeriodicCensus) -> Result<ZetaSeries, PeriodicError> {
    let a: Vec<BigInt> = census.fix.iter().map(|x| BigInt::from(x.clone())).collect();
    let coeffs = shift::zeta::integral(&exp_series(&a))?;
    let n = coeffs.len() - 1;
    let ln = |k: usize| coeffs[k].to_biguint().filter(|x| !x.is_zero()).map(|x| ln_biguint(&x));
    let pair = |m: usize| Some((ln(n.checked_sub(m)?)?, ln(n)?));
    let radius_estimate = pair(2)
        .map(|(a, b)| ((a - b) / 2.0).exp())
        .or_else(|| pair(1).map(|(a, b)| (a - b).exp()))
        .unwrap_or(f64::INFINITY);
    Ok(ZetaSeries { coeffs, radius_estimate })
}

/// Coefficients of `z ζ'(z)/ζ(z)`, which recover `fix[n]` from a zeta series.
pub fn log_derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    // n c_n = Σ a_k c_{n-k}  ⇒  a_n = n c_n - Σ_{k<n} a_k c_{n-k}.
    let mut a: Vec<BigInt> = Vec::new();
    for n in 1..coeffs.len() {
        let mut s = BigInt::from(n) * &coeffs[n];
        for k in 1..n {
            s -= &a[k - 1] * &coeffs[n - k];
        }
        a.push(s);
    }
    a
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEntry {
    pub component: usize,
    pub entropy: f64,
    pub period: usize,
    pub vertices: usize,
    pub maximal: bool,
    /// The component touches the truncation frontier: its entropy is a lower bound.
    pub censored: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InventoryCertainty {
    Certified,
    DepthLimited,
}

#[derive(Clone, Debug, Serialize)]
pub struct Inventory {
    pub components: Vec<ComponentEntry>,
    pub max_count: usize,
    /// `4(N-1)` for an `N`-piece map.
    pub bound: usize,
    pub certainty: InventoryCertainty,
}

pub const MAX_TOLERANCE: f64 = 1e-9;

/// Recurrent components with entropy and period; those within `1e-9` of the top carry
/// maximal measures.
pub fn max_measure_inventory(g: &ShiftGraph, pieces: usize) -> Result<Inventory, PeriodicError> {
    let info = g.scc();
    let mut components = Vec::new();
    for c in info.recurrent() {
        let e = shift::eigen(g, &info, c)?;
        components.push(ComponentEntry {
            component: c,
            entropy: e.lambda.ln(),
            period: e.period,
            vertices: info.members[c].len(),
            maximal: false,
            censored: info.members[c].iter().any(|&v| g.boundary[v]),
        });
    }
    let top = components.iter().map(|c| c.entropy).fold(f64::NEG_INFINITY, f64::max);
    for c in &mut components {
        c.maximal = c.entropy >= top - MAX_TOLERANCE;
    }
    let max_count = components.iter().filter(|c| c.maximal).count();
    let certainty = if g.is_finite_complete() { InventoryCertainty::Certified } else { InventoryCertainty::DepthLimited };
    Ok(Inventory { components, max_count, bound: 4 * pieces.saturating_sub(1), certainty })
}

#[derive(Clone, Debug, Serialize)]
pub struct Equidistribution {
    pub n: usize,
    pub depth: usize,
    /// lcm of the periods of the maximal components.
    pub period: usize,
    pub max_deviation: f64,
    pub worst_cylinder: Word,
    pub cylinders: usize,
    pub fixed_points: String,
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let k = a.len();
    let mut c = vec![vec![BigUint::zero(); k]; k];
    for i in 0..k {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..k {
                if !b[l][j].is_zero() {
                    c[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    c
}

pub fn mat_pow(arrows: &[Vec<usize>], mut e: usize) -> Vec<Vec<BigUint>> {
    let k = arrows.len();
    let mut base = vec![vec![BigUint::zero(); k]; k];
    for (u, ts) in arrows.iter().enumerate() {
        for &t in ts {
            base[u][t] += 1u32;
        }
    }
    let mut acc: Vec<Vec<BigUint>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect()).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    acc
}

fn vertex_paths(arrows: &[Vec<usize>], len: usize) -> Vec<Vec<usize>> {
    let mut paths: Vec<Vec<usize>> = (0..arrows.len()).map(|v| vec![v]).collect();
    for _ in 1..len {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                arrows[last].iter().map(move |&t| {
                    let mut q = p.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    paths
}

/// Distance on depth-`d` letter cylinders between the uniform measure on period-`n` points
/// and the period-weighted mixture of the maximal measures.
pub fn equidistribution(d: &MarkovDiagram, n: usize, depth: usize) -> Result<Equidistribution, PeriodicError> {
    if !d.complete {
        return Err(PeriodicError::IncompleteDiagram);
    }
    let g = ShiftGraph::from_diagram(d);
    let inv = max_measure_inventory(&g, d.labels.len())?;
    let maxima: Vec<&ComponentEntry> = inv.components.iter().filter(|c| c.maximal).collect();
    if maxima.is_empty() {
        return Err(PeriodicError::Shift(crate::error::ShiftError::NoCycle));
    }
    let period = maxima.iter().fold(1usize, |l, c| l.lcm(&c.period));
    if n % period != 0 || n < depth {
        return Err(PeriodicError::PeriodMismatch { n, period });
    }
    let measures: Vec<(usize, shift::MaxMeasure)> = maxima
        .iter()
        .map(|c| shift::max_measure(&g, Some(c.component)).map(|m| (c.period, m)))
        .collect::<Result<_, _>>()?;
    let weight_total: f64 = measures.iter().map(|(p, _)| *p as f64).sum();
    let power = mat_pow(&d.arrows, n + 1 - depth);
    let total: BigUint = shift::zeta::traces(&d.arrows, n).pop().unwrap_or_default();
    let ln_total = ln_biguint(&total);
    let mut empirical: BTreeMap<Word, f64> = BTreeMap::new();
    let mut model: BTreeMap<Word, f64> = BTreeMap::new();
    for path in vertex_paths(&d.arrows, depth) {
        let letters: Word = path.iter().map(|&v| d.last_symbol(v)).collect();
        let cnt = &power[*path.last().unwrap()][path[0]];
        let e = if cnt.is_zero() { 0.0 } else { (ln_biguint(cnt) - ln_total).exp() };
        *empirical.entry(letters.clone()).or_default() += e;
        let m: f64 = measures.iter().map(|(p, mm)| *p as f64 * mm.cylinder_weight(&g, &path)).sum::<f64>() / weight_total;
        *model.entry(letters).or_default() += m;
    }
    let mut worst = (0.0, Vec::new());
    for (w, e) in &empirical {
        let dev = (e - model.get(w).copied().unwrap_or(0.0)).abs();
        if dev > worst.0 {
            worst = (dev, w.clone());
        }
    }
    Ok(Equidistribution {
        n,
        depth,
        period,
        max_deviation: worst.0,
        worst_cylinder: worst.1,
        cylinders: empirical.len(),
        fixed_points: total.to_string(),
    })
}

impl Equidistribution {
    pub fn summary(&self) -> String {
        format!("n={} depth={} deviation={}", self.n, self.depth, fmt17(self.max_deviation))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram_pmm;
    use crate::interval_map::builtin;
    use crate::kneading::kneading;

    #[test]
    fn beta2_and_golden_counts() {
        let kd = kneading(&builtin::beta("2").unwrap(), 64);
        let c = census_direct(&kd, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.fix_u64(), (1..=10).map(|n| 1u64 << n).collect::<Vec<_>>());
        let kd = kneading(&builtin::beta_golden(), 64);
        let c = census_direct(&kd, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.fix_u64(), vec![1, 3, 4, 7, 11, 18, 29, 47]);
        let d = build_diagram_pmm(&kd, 32).unwrap().diagram;
        assert_eq!(census_diagram(&d, 8).unwrap().fix, c.fix);
    }

    #[test]
    fn zeta_and_mobius() {
        let kd = kneading(&builtin::beta_golden(), 64);
        let c = census_direct(&kd, 10, DEFAULT_BUDGET).unwrap();
        let z = zeta(&c).unwrap();
        let fib: Vec<i64> = vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
        assert_eq!(z.coeffs.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), fib);
        assert_eq!(log_derivative(&z.coeffs).iter().map(|x| x.to_biguint().unwrap()).collect::<Vec<_>>(), c.fix);
        let orbits = exact_period_orbits(&c.fix).unwrap();
        assert_eq!(orbits[..4].iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn identity_is_bounded() {
        let kd = kneading(&builtin::identity(), 16);
        let c = census_direct(&kd, 6, DEFAULT_BUDGET).unwrap();
        assert!(c.fix_u64().iter().all(|&x| x <= 2));
        assert!(zeta(&c).unwrap().radius_estimate >= 1.0);
    }

    #[test]
    fn orbit_keys() {
        assert_eq!(orbit_key(&[1, 0, 1, 0]), vec![0, 1]);
        assert_eq!(orbit_key(&[1, 1, 0]), vec![0, 1, 1]);
    }

    #[test]
    fn mobius_values() {
        let m: Vec<i8> = (1..=10).map(mobius).collect();
        assert_eq!(m, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn cycle_equidistribution_exact() {
        let d = MarkovDiagram::new(
            vec![vec![0], vec![1], vec![2]],
            vec![vec![1], vec![2], vec![0]],
            vec![false; 3],
            4,
            crate::symbols::default_labels(3),
            "cycle",
        );
        let e = equidistribution(&d, 6, 2).unwrap();
        assert!(e.max_deviation < 1e-12);
        assert!(equidistribution(&d, 4, 2).is_err());
    }
}
