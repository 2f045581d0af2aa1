//! Symbol sequences: finite words and eventually periodic one-sided sequences.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Index of a branch of the natural partition.
pub type Symbol = u8;
pub type Word = Vec<Symbol>;

/// Three-valued answer for questions that depend on truncated data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
    Undecidable,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    /// Conjunction: any `No` wins, then any `Undecidable`.
    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Undecidable,
        }
    }
}

/// `preperiod · period^∞`, or a known prefix when `truncated`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolSeq {
    preperiod: Word,
    period: Word,
    truncated: bool,
}

/// Outcome of scanning two sequences for their first disagreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstDiff {
    At(usize),
    Identical,
    Unknown,
}

impl SymbolSeq {
    /// A sequence known only up to `prefix`.
    pub fn truncated(prefix: Word) -> SymbolSeq {
        SymbolSeq { preperiod: prefix, period: Vec::new(), truncated: true }
    }

    /// `pre · per^∞`, stored in canonical form (primitive period, shortest preperiod).
    pub fn periodic(pre: Word, per: Word) -> SymbolSeq {
        assert!(!per.is_empty(), "period must be nonempty");
        let mut per = primitive_root(&per);
        let mut pre = pre;
        while let Some(&last) = pre.last() {
            if last != *per.last().unwrap() {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        SymbolSeq { preperiod: pre, period: per, truncated: false }
    }

    pub fn constant(s: Symbol) -> SymbolSeq {
        SymbolSeq::periodic(Vec::new(), vec![s])
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_infinite(&self) -> bool {
        !self.truncated
    }

    /// Number of known symbols, `None` when infinite.
    pub fn known_len(&self) -> Option<usize> {
        self.truncated.then_some(self.preperiod.len())
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        if i < self.preperiod.len() {
            return Some(self.preperiod[i]);
        }
        if self.truncated {
            return None;
        }
        let p = self.period.len();
        Some(self.period[(i - self.preperiod.len()) % p])
    }

    /// First `n` symbols, if known.
    pub fn prefix(&self, n: usize) -> Option<Word> {
        (0..n).map(|i| self.get(i)).collect()
    }

    /// Longest known prefix, capped at `n`.
    pub fn known_prefix(&self, n: usize) -> Word {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    /// σ^k applied to the sequence.
    pub fn shift(&self, k: usize) -> SymbolSeq {
        if k <= self.preperiod.len() {
            return SymbolSeq {
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
                truncated: self.truncated,
            };
        }
        if self.truncated {
            return SymbolSeq::truncated(Vec::new());
        }
        let mut per = self.period.clone();
        let r = (k - self.preperiod.len()) % per.len();
        per.rotate_left(r);
        SymbolSeq { preperiod: Vec::new(), period: per, truncated: false }
    }

    /// Index bound past which two infinite sequences that agree must be identical.
    fn agreement_bound(&self, o: &SymbolSeq) -> usize {
        self.preperiod.len().max(o.preperiod.len()) + self.period.len().lcm(&o.period.len())
    }

    pub fn first_difference(&self, o: &SymbolSeq) -> FirstDiff {
        let bound = match (self.truncated, o.truncated) {
            (false, false) => self.agreement_bound(o),
            (true, true) => self.preperiod.len().min(o.preperiod.len()),
            (true, false) => self.preperiod.len(),
            (false, true) => o.preperiod.len(),
        };
        for i in 0..bound {
            if self.get(i) != o.get(i) {
                return FirstDiff::At(i);
            }
        }
        if self.truncated || o.truncated {
            FirstDiff::Unknown
        } else {
            FirstDiff::Identical
        }
    }

    /// Length of the longest index range that describes the sequence exactly.
    pub fn description_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    pub fn render(&self, labels: &[String]) -> String {
        let lab = |s: &Symbol| labels.get(*s as usize).cloned().unwrap_or_else(|| s.to_string());
        let sep = if labels.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        let pre: Vec<String> = self.preperiod.iter().map(lab).collect();
        let mut out = pre.join(sep);
        if self.truncated {
            out.push_str("...");
        } else {
            let per: Vec<String> = self.period.iter().map(lab).collect();
            out.push('(');
            out.push_str(&per.join(sep));
            out.push_str(")^inf");
        }
        out
    }
}

fn primitive_root(w: &[Symbol]) -> Word {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

impl fmt::Debug for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Parse a word written with the given labels, either concatenated or space separated.
pub fn parse_word(s: &str, labels: &[String]) -> Option<Word> {
    let s = s.trim();
    if s.contains(' ') || s.contains(',') {
        return s
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| labels.iter().position(|l| l == t).map(|i| i as Symbol))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (i, l) = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && rest.starts_with(l.as_str()))
            .max_by_key(|(_, l)| l.len())?;
        out.push(i as Symbol);
        rest = &rest[l.len()..];
    }
    Some(out)
}

/// Parse `pre(per)` notation such as `01(10)` into a sequence; a bare word is truncated.
pub fn parse_seq(s: &str, labels: &[String]) -> Option<SymbolSeq> {
    let s = s.trim().trim_end_matches("^inf");
    match s.find('(') {
        Some(i) => {
            let pre = parse_word(&s[..i], labels)?;
            let per = parse_word(s[i + 1..].trim_end_matches(')'), labels)?;
            (!per.is_empty()).then(|| SymbolSeq::periodic(pre, per))
        }
        None => Some(SymbolSeq::truncated(parse_word(s, labels)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let a = SymbolSeq::periodic(vec![0, 1, 0], vec![1, 0]);
        let b = SymbolSeq::periodic(vec![], vec![0, 1, 0, 1]);
        assert_eq!(a, b);
        assert_eq!(a.period(), &[0, 1]);
        assert!(a.preperiod().is_empty());
    }

    #[test]
    fn shift_wraps_period() {
        let a = SymbolSeq::periodic(vec![2], vec![0, 1]);
        assert_eq!(a.shift(2), SymbolSeq::periodic(vec![], vec![1, 0]));
        assert_eq!(a.shift(5).get(0), Some(0));
    }

    #[test]
    fn first_difference_cases() {
        let a = SymbolSeq::periodic(vec![0], vec![1]);
        let b = SymbolSeq::periodic(vec![0, 1], vec![1]);
        assert_eq!(a.first_difference(&b), FirstDiff::Identical);
        let c = SymbolSeq::truncated(vec![0, 1, 1]);
        assert_eq!(a.first_difference(&c), FirstDiff::Unknown);
        let d = SymbolSeq::truncated(vec![0, 1, 0]);
        assert_eq!(a.first_difference(&d), FirstDiff::At(2));
    }

    #[test]
    fn parse_round_trip() {
        let labels = vec!["L".to_string(), "R".to_string()];
        let s = parse_seq("LR(L)", &labels).unwrap();
        assert_eq!(s, SymbolSeq::periodic(vec![0, 1], vec![0]));
        assert_eq!(s.render(&labels), "LR(L)^inf");
    }
}
