//! Kneading invariants, the modified lexicographic order and admissibility.
//!
//! Endpoint indexing: `γ_{2a} = c_a+` and `γ_{2a+1} = c_{a+1}-`, so piece `a` is bounded
//! by the sequences `K_{2a}` (lower) and `K_{2a+1}` (upper).

pub mod horseshoe;
pub mod laps;

use std::cmp::Ordering;
use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::Scalar;
use crate::error::KneadingError;
use crate::interval_map::{IntervalMap, Side, SidedPoint};
use crate::symbols::{FirstDiff, Symbol, SymbolSeq, Verdict, Word};

pub use horseshoe::{find_horseshoe, verify_horseshoe, Horseshoe};
pub use laps::{entropy_lap, lap_numbers, length_growth, LapEntropy, LengthGrowth};

pub const DEFAULT_DEPTH: usize = 256;

#[derive(Clone, Debug)]
pub struct KneadingData {
    pub sequences: Vec<SymbolSeq>,
    pub signs: Vec<i8>,
    pub alphabet_size: usize,
    pub depth: usize,
    pub labels: Vec<String>,
    /// Per-endpoint error (numeric tolerance failures).
    pub errors: Vec<Option<String>>,
    /// Interned id of `f^k(γ_j)` for each known `k`.
    point_ids: Vec<Vec<usize>>,
    loop_starts: Vec<Option<usize>>,
}

/// The sided point `f^shift(γ_seq)`, whose itinerary is `σ^shift K_seq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Endpoint {
    pub seq: usize,
    pub shift: usize,
}

/// Lower and upper ends of the image interval `f^n⟨w⟩`; determines the follower set of `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FollowerPair {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

/// Sided point at partition endpoint index `j`.
pub fn gamma<S: Scalar>(map: &IntervalMap<S>, j: usize) -> SidedPoint<S> {
    if j % 2 == 0 {
        SidedPoint::new(map.endpoint(j / 2).clone(), Side::Right)
    } else {
        SidedPoint::new(map.endpoint(j / 2 + 1).clone(), Side::Left)
    }
}

/// Sided itineraries of all partition endpoints, to `depth` symbols or closed exactly.
pub fn kneading<S: Scalar>(map: &IntervalMap<S>, depth: usize) -> KneadingData {
    let n = map.n_branches();
    let mut intern: HashMap<(S::Key, Side), usize> = HashMap::new();
    let mut sequences = Vec::with_capacity(2 * n);
    let mut errors = Vec::with_capacity(2 * n);
    let mut point_ids = Vec::with_capacity(2 * n);
    let mut loop_starts = Vec::with_capacity(2 * n);
    for j in 0..2 * n {
        let start = gamma(map, j);
        let (seq, ids, err, ls) = match map.sided_orbit(&start, depth) {
            Ok(orbit) => {
                let ids = orbit
                    .points
                    .iter()
                    .map(|p| {
                        let k = p.key();
                        let next = intern.len();
                        *intern.entry(k).or_insert(next)
                    })
                    .collect();
                (orbit.itinerary(), ids, None, orbit.loop_start)
            }
            Err(e) => {
                // Keep the prefix computed before the failure.
                let mut prefix = Vec::new();
                let mut cur = start.clone();
                while let Ok(i) = map.locate(&cur) {
                    prefix.push(i as Symbol);
                    match map.evaluate(&cur) {
                        Ok(nx) if prefix.len() < depth => cur = nx,
                        _ => break,
                    }
                }
                (SymbolSeq::truncated(prefix), Vec::new(), Some(e.to_string()), None)
            }
        };
        sequences.push(seq);
        point_ids.push(ids);
        loop_starts.push(ls);
        errors.push(err);
    }
    KneadingData {
        sequences,
        signs: map.signs(),
        alphabet_size: n,
        depth,
        labels: map.labels().to_vec(),
        errors,
        point_ids,
        loop_starts,
    }
}

impl KneadingData {
    /// Kneading data given directly by its sequences (no geometric identities).
    pub fn from_sequences(sequences: Vec<SymbolSeq>, signs: Vec<i8>) -> KneadingData {
        let n = signs.len();
        assert_eq!(sequences.len(), 2 * n, "need two sequences per piece");
        KneadingData {
            errors: vec![None; 2 * n],
            point_ids: vec![Vec::new(); 2 * n],
            loop_starts: vec![None; 2 * n],
            depth: sequences.iter().map(|s| s.description_len()).max().unwrap_or(0),
            sequences,
            signs,
            alphabet_size: n,
            labels: crate::symbols::default_labels(n),
        }
    }

    pub fn lower(&self, a: Symbol) -> &SymbolSeq {
        &self.sequences[2 * a as usize]
    }

    pub fn upper(&self, a: Symbol) -> &SymbolSeq {
        &self.sequences[2 * a as usize + 1]
    }

    pub fn is_exact(&self) -> bool {
        self.sequences.iter().all(|s| s.is_infinite())
    }

    /// Sequences other than the trivial endpoint fixed points, rendered with labels.
    pub fn render(&self) -> Vec<String> {
        self.sequences.iter().map(|s| s.render(&self.labels)).collect()
    }

    /// Orientation product of a word: +1 or -1.
    pub fn word_sign(&self, w: &[Symbol]) -> i8 {
        w.iter().fold(1i8, |acc, &s| acc * self.signs[s as usize])
    }

    fn order_at(&self, prefix_sign: i8, a: Symbol, b: Symbol) -> Ordering {
        let o = a.cmp(&b);
        if prefix_sign < 0 {
            o.reverse()
        } else {
            o
        }
    }

    /// The modified lexicographic order on infinite (or sufficiently long) sequences.
    pub fn compare(&self, a: &SymbolSeq, b: &SymbolSeq) -> Result<Ordering, KneadingError> {
        match a.first_difference(b) {
            FirstDiff::Identical => Ok(Ordering::Equal),
            FirstDiff::Unknown => Err(KneadingError::Undecidable),
            FirstDiff::At(n) => {
                let prefix = a.prefix(n).expect("known prefix");
                let x = a.get(n).unwrap();
                let y = b.get(n).unwrap();
                Ok(self.order_at(self.word_sign(&prefix), x, y))
            }
        }
    }

    /// Modified lexicographic order on the common length of two finite words.
    pub fn compare_words(&self, a: &[Symbol], b: &[Symbol]) -> Ordering {
        let mut sign = 1i8;
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return self.order_at(sign, *x, *y);
            }
            sign *= self.signs[*x as usize];
        }
        Ordering::Equal
    }

    /// `L_a ⪯ u ⪯ U_a` on the first `|u|` symbols, for the leading symbol `a` of `u`.
    fn sandwiched_word(&self, u: &[Symbol]) -> Verdict {
        let a = u[0];
        if a as usize >= self.alphabet_size {
            return Verdict::No;
        }
        let mut out = Verdict::Yes;
        for (bound, want) in [(self.lower(a), Ordering::Less), (self.upper(a), Ordering::Greater)] {
            let known = bound.known_prefix(u.len());
            let o = self.compare_words(&known, &u[..known.len()]);
            if o == want.reverse() {
                return Verdict::No;
            }
            if o == Ordering::Equal && known.len() < u.len() {
                out = out.and(Verdict::Undecidable);
            }
        }
        out
    }

    /// Admissibility of a finite word or an eventually periodic sequence.
    pub fn is_admissible(&self, a: &SymbolSeq) -> Verdict {
        if a.is_truncated() {
            return self.is_admissible_word(a.preperiod());
        }
        let mut out = Verdict::Yes;
        for n in 0..a.description_len() {
            let s = a.shift(n);
            let sym = s.get(0).unwrap();
            if sym as usize >= self.alphabet_size {
                return Verdict::No;
            }
            for (lhs, rhs) in [(self.lower(sym), &s), (&s, self.upper(sym))] {
                match self.compare(lhs, rhs) {
                    Ok(Ordering::Greater) => return Verdict::No,
                    Ok(_) => {}
                    Err(_) => out = out.and(Verdict::Undecidable),
                }
            }
        }
        out
    }

    /// Finite-word admissibility: every suffix sits between the kneading bounds of its
    /// leading symbol on the common length.
    pub fn is_admissible_word(&self, w: &[Symbol]) -> Verdict {
        let mut out = Verdict::Yes;
        for n in 0..w.len() {
            match self.sandwiched_word(&w[n..]) {
                Verdict::No => return Verdict::No,
                v => out = out.and(v),
            }
        }
        out
    }

    // ---- follower pairs ----

    /// Reduce the shift into the description range of an eventually periodic sequence.
    pub fn normalize(&self, e: Endpoint) -> Endpoint {
        let s = &self.sequences[e.seq];
        if s.is_truncated() {
            return e;
        }
        let (m, p) = (s.preperiod().len(), s.period().len());
        if e.shift < m + p {
            e
        } else {
            Endpoint { seq: e.seq, shift: m + (e.shift - m) % p }
        }
    }

    pub fn endpoint_symbol(&self, e: Endpoint) -> Option<Symbol> {
        self.sequences[e.seq].get(e.shift)
    }

    fn endpoint_id(&self, e: Endpoint) -> Option<usize> {
        let ids = &self.point_ids[e.seq];
        if e.shift < ids.len() {
            return Some(ids[e.shift]);
        }
        // Closed orbit: ids repeat with the loop.
        let start = self.loop_starts[e.seq]?;
        let per = ids.len() - start;
        Some(ids[start + (e.shift - start) % per])
    }

    /// Whether two endpoints have the same itinerary.
    pub fn endpoint_eq(&self, a: Endpoint, b: Endpoint) -> Verdict {
        let (a, b) = (self.normalize(a), self.normalize(b));
        if a == b {
            return Verdict::Yes;
        }
        if let (Some(x), Some(y)) = (self.endpoint_id(a), self.endpoint_id(b)) {
            if x == y {
                return Verdict::Yes;
            }
        }
        let (sa, sb) = (&self.sequences[a.seq], &self.sequences[b.seq]);
        let bound = if sa.is_infinite() && sb.is_infinite() {
            let ra = sa.preperiod().len().saturating_sub(a.shift);
            let rb = sb.preperiod().len().saturating_sub(b.shift);
            ra.max(rb) + sa.period().len().lcm(&sb.period().len())
        } else {
            usize::MAX
        };
        let mut i = 0;
        while i < bound {
            match (sa.get(a.shift + i), sb.get(b.shift + i)) {
                (Some(x), Some(y)) if x != y => return Verdict::No,
                (Some(_), Some(_)) => {}
                _ => return Verdict::Undecidable,
            }
            i += 1;
        }
        Verdict::Yes
    }

    pub fn pair_eq(&self, p: &FollowerPair, q: &FollowerPair) -> Verdict {
        self.endpoint_eq(p.lo, q.lo).and(self.endpoint_eq(p.hi, q.hi))
    }

    /// Pair of the empty word: the whole interval.
    pub fn root_pair(&self) -> FollowerPair {
        FollowerPair {
            lo: Endpoint { seq: 0, shift: 0 },
            hi: Endpoint { seq: 2 * self.alphabet_size - 1, shift: 0 },
        }
    }

    /// Pair of `w·b` from the pair of `w`; `Ok(None)` when `w·b` is not admissible.
    pub fn step(&self, p: &FollowerPair, b: Symbol) -> Result<Option<FollowerPair>, KneadingError> {
        let sl = self.endpoint_symbol(p.lo).ok_or(KneadingError::Undecidable)?;
        let sh = self.endpoint_symbol(p.hi).ok_or(KneadingError::Undecidable)?;
        if b < sl || b > sh {
            return Ok(None);
        }
        let bi = b as usize;
        let lo = if sl == b { p.lo } else { Endpoint { seq: 2 * bi, shift: 0 } };
        let hi = if sh == b { p.hi } else { Endpoint { seq: 2 * bi + 1, shift: 0 } };
        let up = |e: Endpoint| self.normalize(Endpoint { seq: e.seq, shift: e.shift + 1 });
        Ok(Some(if self.signs[bi] > 0 {
            FollowerPair { lo: up(lo), hi: up(hi) }
        } else {
            FollowerPair { lo: up(hi), hi: up(lo) }
        }))
    }

    /// Follower pair of a word, `Ok(None)` when the word is not admissible.
    pub fn pair_of(&self, w: &[Symbol]) -> Result<Option<FollowerPair>, KneadingError> {
        let mut p = self.root_pair();
        for &b in w {
            match self.step(&p, b)? {
                Some(q) => p = q,
                None => return Ok(None),
            }
        }
        Ok(Some(p))
    }

    /// Admissibility of a finite word via the image-interval recursion.
    pub fn admits(&self, w: &[Symbol]) -> Verdict {
        match self.pair_of(w) {
            Ok(Some(_)) => Verdict::Yes,
            Ok(None) => Verdict::No,
            Err(_) => Verdict::Undecidable,
        }
    }

    /// Itinerary of an endpoint as a sequence.
    pub fn endpoint_seq(&self, e: Endpoint) -> SymbolSeq {
        self.sequences[e.seq].shift(e.shift)
    }
}

/// First same-length word pair whose order disagrees with the order of their cylinders.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderCounterexample {
    pub left: Word,
    pub right: Word,
}

/// Check `compare_words` against the geometric order of nonempty cylinders.
pub fn order_agrees_with_geometry<S: Scalar>(
    map: &IntervalMap<S>,
    kd: &KneadingData,
    max_len: usize,
) -> Option<OrderCounterexample> {
    order_agrees_with(map, max_len, |a, b| kd.compare_words(a, b))
}

/// Same check with an arbitrary comparator.
pub fn order_agrees_with<S: Scalar>(
    map: &IntervalMap<S>,
    max_len: usize,
    cmp: impl Fn(&[Symbol], &[Symbol]) -> Ordering,
) -> Option<OrderCounterexample> {
    let nb = map.n_branches() as Symbol;
    let mut level: Vec<(Word, (S, S))> = vec![(Vec::new(), map.ambient().clone())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, _) in &level {
            for b in 0..nb {
                let mut v = w.clone();
                v.push(b);
                if let Some(c) = map.cylinder(&v) {
                    next.push((v, c));
                }
            }
        }
        // Geometric order of disjoint open intervals.
        next.sort_by(|a, b| {
            a.1 .0.cmp_tol(&b.1 .0, 0.0).unwrap_or(Ordering::Equal)
        });
        for i in 0..next.len() {
            for j in i + 1..next.len() {
                if cmp(&next[i].0, &next[j].0) != Ordering::Less {
                    return Some(OrderCounterexample { left: next[i].0.clone(), right: next[j].0.clone() });
                }
            }
        }
        level = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_map::builtin::{beta, beta_golden, tent};

    fn seq(pre: &[u8], per: &[u8]) -> SymbolSeq {
        SymbolSeq::periodic(pre.to_vec(), per.to_vec())
    }

    #[test]
    fn tent2_invariants() {
        let kd = kneading(&tent("2").unwrap(), 64);
        assert_eq!(
            kd.sequences,
            vec![seq(&[], &[0]), seq(&[0, 1], &[0]), seq(&[1, 1], &[0]), seq(&[1], &[0])]
        );
    }

    #[test]
    fn beta2_top_sequence() {
        let kd = kneading(&beta("2").unwrap(), 64);
        assert_eq!(kd.sequences[3], seq(&[], &[1]));
    }

    #[test]
    fn compare_examples() {
        let kd = kneading(&tent("2").unwrap(), 64);
        let l = seq(&[], &[0]);
        assert_eq!(kd.compare(&l, &l).unwrap(), Ordering::Equal);
        assert_eq!(kd.compare_words(&[0, 0], &[0, 1]), Ordering::Less);
        assert_eq!(kd.compare_words(&[1, 1], &[1, 0]), Ordering::Less);
        let t = SymbolSeq::truncated(vec![0, 1]);
        assert_eq!(kd.compare(&t, &t), Err(KneadingError::Undecidable));
    }

    #[test]
    fn golden_rejects_11() {
        let kd = kneading(&beta_golden(), 64);
        assert_eq!(kd.is_admissible(&seq(&[], &[1])), Verdict::No);
        assert_eq!(kd.is_admissible_word(&[1, 1]), Verdict::No);
        assert_eq!(kd.admits(&[1, 1]), Verdict::No);
        assert_eq!(kd.is_admissible(&seq(&[], &[1, 0])), Verdict::Yes);
    }

    #[test]
    fn kneading_sequences_self_admissible() {
        for m in [tent("2").unwrap(), tent("3/2").unwrap(), beta_golden(), beta("5/2").unwrap()] {
            let kd = kneading(&m, 256);
            for s in &kd.sequences {
                assert_eq!(kd.is_admissible(s), Verdict::Yes, "{s:?}");
            }
        }
    }

    #[test]
    fn tent_order_matches_geometry() {
        let m = tent("2").unwrap();
        let kd = kneading(&m, 64);
        assert_eq!(order_agrees_with_geometry(&m, &kd, 8), None);
    }

    #[test]
    fn corrupted_comparator_is_caught() {
        let m = tent("2").unwrap();
        // Plain lexicographic order ignores the decreasing branch.
        let bad = order_agrees_with(&m, 4, |a, b| a.cmp(b)).unwrap();
        assert_eq!(bad.left.len(), 2);
        assert_eq!(bad.left[0], 1);
    }
}
