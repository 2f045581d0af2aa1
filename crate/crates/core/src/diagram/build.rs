//! Follower-set comparison, minimal forms and the generic breadth-first construction.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::oracle::SubshiftOracle;
use super::MarkovDiagram;
use crate::error::DiagramError;
use crate::symbols::{Symbol, Verdict, Word};

/// Cap on probe nodes visited per comparison.
const PROBE_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FollowerCmp {
    Equal,
    /// An extension admissible after exactly one of the two words, when one was found.
    Distinct(Option<Word>),
    Undecidable,
}

fn cat(a: &[Symbol], b: &[Symbol]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// Breadth-first search for an extension separating the two follower sets.
fn probe(o: &dyn SubshiftOracle, a: &[Symbol], b: &[Symbol], depth: usize) -> FollowerCmp {
    let n = o.alphabet_size() as Symbol;
    let mut frontier: Vec<Word> = vec![Vec::new()];
    let mut unsure = false;
    let mut visited = 0usize;
    for _ in 0..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for s in 0..n {
                visited += 1;
                if visited > PROBE_BUDGET {
                    return FollowerCmp::Undecidable;
                }
                let mut v = u.clone();
                v.push(s);
                match (o.admits(&cat(a, &v)), o.admits(&cat(b, &v))) {
                    (Verdict::Yes, Verdict::No) | (Verdict::No, Verdict::Yes) => {
                        return FollowerCmp::Distinct(Some(v))
                    }
                    (Verdict::No, Verdict::No) => {}
                    (Verdict::Yes, Verdict::Yes) => next.push(v),
                    _ => {
                        unsure = true;
                        next.push(v);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    if unsure {
        FollowerCmp::Undecidable
    } else {
        FollowerCmp::Equal
    }
}

/// Compare `fol(a)` and `fol(b)`, exactly when the oracle supports it, else by probing.
pub fn follower_equal(o: &dyn SubshiftOracle, a: &[Symbol], b: &[Symbol], probe_depth: usize) -> FollowerCmp {
    match o.exact_follower_equal(a, b) {
        Some(Verdict::Yes) => FollowerCmp::Equal,
        Some(Verdict::No) => match probe(o, a, b, probe_depth) {
            FollowerCmp::Distinct(w) => FollowerCmp::Distinct(w),
            _ => FollowerCmp::Distinct(None),
        },
        Some(Verdict::Undecidable) => match probe(o, a, b, probe_depth) {
            FollowerCmp::Distinct(w) => FollowerCmp::Distinct(w),
            _ => FollowerCmp::Undecidable,
        },
        None => probe(o, a, b, probe_depth),
    }
}

/// Strict-shrink test used by minimal forms; skips the witness search when exact.
fn differs(o: &dyn SubshiftOracle, a: &[Symbol], b: &[Symbol], probe_depth: usize) -> Verdict {
    match o.exact_follower_equal(a, b) {
        Some(Verdict::Yes) => Verdict::No,
        Some(Verdict::No) => Verdict::Yes,
        _ => match probe(o, a, b, probe_depth) {
            FollowerCmp::Equal => Verdict::No,
            FollowerCmp::Distinct(_) => Verdict::Yes,
            FollowerCmp::Undecidable => Verdict::Undecidable,
        },
    }
}

/// The shortest suffix of `w` with the same follower set as `w`.
pub fn minimal_form(o: &dyn SubshiftOracle, w: &[Symbol], probe_depth: usize) -> Result<Word, DiagramError> {
    match o.admits(w) {
        Verdict::Yes => {}
        Verdict::No => return Err(DiagramError::NotAdmissible(w.to_vec())),
        Verdict::Undecidable => return Err(DiagramError::UndecidableAtDepth(w.to_vec())),
    }
    if w.is_empty() {
        return Err(DiagramError::NotAdmissible(Vec::new()));
    }
    for k in 0..w.len() - 1 {
        match differs(o, &w[k..], &w[k + 1..], probe_depth) {
            Verdict::Yes => return Ok(w[k..].to_vec()),
            Verdict::No => {}
            Verdict::Undecidable => return Err(DiagramError::UndecidableAtDepth(w[k..].to_vec())),
        }
    }
    Ok(w[w.len() - 1..].to_vec())
}

/// Closure of the letters under `v → min(v·b)`, keeping words of length `≤ depth_cap`.
pub fn build_diagram_generic(
    o: &dyn SubshiftOracle,
    depth_cap: usize,
    probe_depth: usize,
) -> Result<MarkovDiagram, DiagramError> {
    let n = o.alphabet_size() as Symbol;
    let seeds: Vec<Word> = (0..n).filter(|&b| o.admits(&[b]).is_yes()).map(|b| vec![b]).collect();
    close(o, seeds, depth_cap, probe_depth, o.source())
}

/// Breadth-first closure from `seeds` (assumed minimal).
pub(crate) fn close(
    o: &dyn SubshiftOracle,
    seeds: Vec<Word>,
    depth_cap: usize,
    probe_depth: usize,
    source: &str,
) -> Result<MarkovDiagram, DiagramError> {
    let n = o.alphabet_size() as Symbol;
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut vertices: Vec<Word> = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if s.len() <= depth_cap && !index.contains_key(&s) {
            index.insert(s.clone(), vertices.len());
            queue.push_back(vertices.len());
            vertices.push(s);
        }
    }
    let mut arrows: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    let mut boundary = vec![false; vertices.len()];
    while let Some(v) = queue.pop_front() {
        for b in 0..n {
            let w = cat(&vertices[v], &[b]);
            match o.admits(&w) {
                Verdict::No => continue,
                Verdict::Undecidable => return Err(DiagramError::UndecidableAtDepth(w)),
                Verdict::Yes => {}
            }
            let t = minimal_form(o, &w, probe_depth)?;
            if t.len() > depth_cap {
                boundary[v] = true;
                continue;
            }
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    let id = vertices.len();
                    index.insert(t.clone(), id);
                    vertices.push(t);
                    arrows.push(Vec::new());
                    boundary.push(false);
                    queue.push_back(id);
                    id
                }
            };
            arrows[v].push(id);
        }
    }
    Ok(MarkovDiagram::new(vertices, arrows, boundary, depth_cap, o.labels(), source))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::oracle::{ForbiddenWords, SftOracle};

    #[test]
    fn full_shift_is_complete_graph() {
        let o = ForbiddenWords::finite(3, vec![]);
        let d = build_diagram_generic(&o, 8, 4).unwrap();
        assert_eq!(d.n_vertices(), 3);
        assert_eq!(d.n_arrows(), 9);
        assert!(d.complete);
        assert_eq!(minimal_form(&o, &[0, 1, 0], 4).unwrap(), vec![0]);
    }

    #[test]
    fn even_shift_followers() {
        let o = ForbiddenWords::even_shift(24);
        assert_eq!(follower_equal(&o, &[0, 1], &[1], 6), FollowerCmp::Distinct(Some(vec![0])));
        assert_eq!(minimal_form(&o, &[1, 0, 1, 1], 8).unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn even_shift_ray() {
        let o = ForbiddenWords::even_shift(40);
        let d = build_diagram_generic(&o, 10, 12).unwrap();
        assert!(!d.complete);
        for k in 0..10 {
            let mut w = vec![0];
            w.extend(std::iter::repeat_n(1, k));
            assert!(d.index_of(&w).is_some(), "{w:?}");
        }
    }

    #[test]
    fn golden_sft_is_itself() {
        let o = SftOracle::new(vec![vec![1, 1], vec![1, 0]]);
        let d = build_diagram_generic(&o, 8, 4).unwrap();
        assert_eq!(d.arrow_words(), vec![(vec![0], vec![0]), (vec![0], vec![1]), (vec![1], vec![0])]);
    }
}
