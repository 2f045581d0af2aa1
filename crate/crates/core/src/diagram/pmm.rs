//! The diagram of a piecewise monotone map read off its kneading data, with cutting times.
//!
//! For a kneading sequence `A = K_j` let `D_n` be the image interval of `A_0…A_{n-1}`.
//! One end of `D_n` is the orbit of `γ_j` itself; `n ≥ 1` is a cutting time when the other
//! end lies in a different piece than `A_n`. `S(A,0) = 0` by convention.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::build::{close, minimal_form};
use super::oracle::{KneadingOracle, SubshiftOracle};
use super::MarkovDiagram;
use crate::error::DiagramError;
use crate::kneading::{Endpoint, FollowerPair, KneadingData};
use crate::symbols::{Symbol, Verdict, Word};

#[derive(Clone, Debug, Serialize)]
pub struct CuttingData {
    /// `S(A, i)` per kneading sequence, starting with the conventional 0.
    pub times: Vec<Vec<usize>>,
    /// `Q(A, i+1) = (B, j)` with `S(A,i+1) - S(A,i) = S(B,j)`; `None` past the horizon.
    pub co_cutting: Vec<Vec<Option<(usize, usize)>>>,
    /// Whether every computed `Q` was found.
    pub recursion_holds: bool,
    /// Number of symbols examined per sequence.
    pub horizon: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PmmDiagram {
    pub diagram: MarkovDiagram,
    pub cutting: CuttingData,
    /// Some kneading sequence ran out before its vertices closed up.
    pub truncated_kneading: bool,
    /// Vertices `min(A_0…A_n)` produced directly by the kneading sequences.
    pub kneading_vertices: usize,
    /// Vertices reached only by closing under arrows (zero when the vertex description is exact).
    pub closure_extra: usize,
    /// Arrow counts by rule: continuation along a kneading sequence, cut, return to a letter.
    pub rule_counts: [usize; 3],
    /// Cut arrows compared against `min(A_{S(A,i)} … A_{S(A,i+1)-1} b)`.
    pub cut_arrows_checked: usize,
    pub cut_arrow_failures: usize,
}

fn other_end(p: &FollowerPair, own: Endpoint) -> Endpoint {
    if p.lo == own {
        p.hi
    } else {
        p.lo
    }
}

fn own_endpoint(kd: &KneadingData, j: usize, n: usize) -> Endpoint {
    kd.normalize(Endpoint { seq: j, shift: n })
}

/// Cutting times and co-cutting indices from the follower-pair recursion.
pub fn cutting_data(kd: &KneadingData, horizon: usize) -> CuttingData {
    let m = kd.sequences.len();
    let mut times = vec![vec![0usize]; m];
    let mut clip_seq: Vec<Vec<Option<Endpoint>>> = vec![Vec::new(); m];
    for j in 0..m {
        let a = &kd.sequences[j];
        let mut p = kd.root_pair();
        for n in 0..horizon {
            let Some(sym) = a.get(n) else { break };
            if n >= 1 {
                let own = own_endpoint(kd, j, n);
                match kd.endpoint_symbol(other_end(&p, own)) {
                    Some(s) if s != sym => times[j].push(n),
                    Some(_) => {}
                    None => break,
                }
            }
            let is_cut = n == 0 || times[j].last() == Some(&n);
            match kd.step(&p, sym) {
                Ok(Some(q)) => p = q,
                _ => break,
            }
            if is_cut {
                let own = own_endpoint(kd, j, n + 1);
                clip_seq[j].push(Some(other_end(&p, own)));
            }
        }
    }
    let mut co_cutting = vec![Vec::new(); m];
    let mut holds = true;
    for j in 0..m {
        for i in 0..times[j].len().saturating_sub(1) {
            let gap = times[j][i + 1] - times[j][i];
            let q = clip_seq[j].get(i).copied().flatten().and_then(|e| {
                (kd.normalize(Endpoint { seq: e.seq, shift: 1 }) == e).then_some(e.seq)
            });
            let found = q.and_then(|b| times[b].iter().position(|&t| t == gap).map(|k| (b, k)));
            if found.is_none() {
                holds = false;
            }
            co_cutting[j].push(found);
        }
    }
    CuttingData { times, co_cutting, recursion_holds: holds, horizon }
}

/// The diagram from kneading data: vertices `min(A_0…A_n)` for `A ∈ K`, closed under arrows.
pub fn build_diagram_pmm(kd: &KneadingData, depth_cap: usize) -> Result<PmmDiagram, DiagramError> {
    let oracle = KneadingOracle::new(kd.clone());
    let probe = 0;
    let mut seeds: Vec<Word> = Vec::new();
    let mut seen_seed: HashSet<Word> = HashSet::new();
    let mut continuations: HashSet<(Word, Symbol)> = HashSet::new();
    let mut walks: Vec<Vec<Word>> = Vec::new();
    let mut truncated = false;
    let mut capped = false;
    for (j, a) in kd.sequences.iter().enumerate() {
        let mut states: HashSet<(Word, usize)> = HashSet::new();
        let mut walk: Vec<Word> = Vec::new();
        let mut v: Word = Vec::new();
        let mut n = 0usize;
        loop {
            let Some(sym) = a.get(n) else {
                truncated = true;
                break;
            };
            let w = {
                let mut w = v.clone();
                w.push(sym);
                w
            };
            let next = match minimal_form(&oracle, &w, probe) {
                Ok(t) => t,
                Err(DiagramError::UndecidableAtDepth(_)) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            if !v.is_empty() {
                continuations.insert((v.clone(), sym));
            }
            if next.len() > depth_cap {
                capped = true;
                break;
            }
            let pos = own_endpoint(kd, j, n + 1).shift;
            if !states.insert((next.clone(), pos)) {
                break;
            }
            if seen_seed.insert(next.clone()) {
                seeds.push(next.clone());
            }
            walk.push(next.clone());
            v = next;
            n += 1;
        }
        walks.push(walk);
    }
    let kneading_vertices = seeds.len();
    let mut diagram = close(&oracle, seeds, depth_cap, probe, "kneading")?;
    if truncated || capped {
        // Sequences that did not close leave the diagram open at their last vertex.
        diagram.complete = false;
    }
    let closure_extra = diagram.n_vertices() - kneading_vertices;

    let mut rule_counts = [0usize; 3];
    for u in 0..diagram.n_vertices() {
        let pair = kd.pair_of(&diagram.vertices[u]).ok().flatten();
        for &t in &diagram.arrows[u] {
            let b = diagram.last_symbol(t);
            let full = pair.as_ref().is_some_and(|p| {
                matches!(
                    (kd.endpoint_symbol(p.lo), kd.endpoint_symbol(p.hi)),
                    (Some(x), Some(y)) if x < b && b < y
                )
            });
            if continuations.contains(&(diagram.vertices[u].clone(), b)) {
                rule_counts[0] += 1;
            } else if full && diagram.vertices[t].len() == 1 {
                rule_counts[2] += 1;
            } else {
                rule_counts[1] += 1;
            }
        }
    }

    let horizon = 4 * depth_cap.max(8);
    let cutting = cutting_data(kd, horizon);
    let (mut checked, mut failures) = (0, 0);
    for (j, walk) in walks.iter().enumerate() {
        let a = &kd.sequences[j];
        let ts = &cutting.times[j];
        for i in 0..ts.len().saturating_sub(1) {
            let (s0, s1) = (ts[i], ts[i + 1]);
            if s1 == 0 || s1 > walk.len() {
                break;
            }
            let v = &walk[s1 - 1];
            let Some(cont) = a.get(s1) else { break };
            let Some(block) = a.prefix(s1).map(|p| p[s0..].to_vec()) else { break };
            for b in 0..kd.alphabet_size as Symbol {
                if b == cont {
                    continue;
                }
                let mut vb = v.clone();
                vb.push(b);
                if oracle.admits(&vb) != Verdict::Yes {
                    continue;
                }
                let mut blk = block.clone();
                blk.push(b);
                checked += 1;
                let lhs = minimal_form(&oracle, &vb, probe).ok();
                let rhs = minimal_form(&oracle, &blk, probe).ok();
                if lhs.is_none() || lhs != rhs {
                    failures += 1;
                }
            }
        }
    }

    Ok(PmmDiagram {
        diagram,
        cutting,
        truncated_kneading: truncated,
        kneading_vertices,
        closure_extra,
        rule_counts,
        cut_arrows_checked: checked,
        cut_arrow_failures: failures,
    })
}

/// Shape of the diagram of a unimodal map, in the usual cutting-time indexing `S_0 = 1`.
#[derive(Clone, Debug, Serialize)]
pub struct UnimodalStructure {
    /// Cutting times `S_0 < S_1 < …` of the critical value.
    pub cutting_times: Vec<usize>,
    /// Kneading map: `S_k - S_{k-1} = S_{Q(k)}`.
    pub kneading_map: Vec<Option<usize>>,
    pub recursion_holds: bool,
    /// Back arrows `D_{S_k} → D_{S_{Q(k)}+1}` (`k ≥ 1`) found in the diagram.
    pub back_arrows: Vec<(usize, usize)>,
    /// Every predicted back arrow is present between the follower classes.
    pub shape_verified: bool,
    /// Both critical rays carry the same follower classes beyond the first symbol.
    pub twin_rays_identified: bool,
    /// The full-shift case: every time is a cutting time and all classes coincide.
    pub degenerate_full_shift: bool,
    pub complete: bool,
}

/// Structural certificate for two-branch maps with opposite orientations.
pub fn unimodal_structure(kd: &KneadingData, depth_cap: usize) -> Result<UnimodalStructure, DiagramError> {
    if kd.alphabet_size != 2 {
        return Err(DiagramError::NotUnimodal(format!("{} branches", kd.alphabet_size)));
    }
    if kd.signs[0] == kd.signs[1] {
        return Err(DiagramError::NotUnimodal("branches have the same orientation".into()));
    }
    let horizon = 4 * depth_cap.max(8);
    let cut = cutting_data(kd, horizon);
    // Critical value side: `c-` is sequence 1 (upper end of piece 0).
    let crit = 1usize;
    let s: Vec<usize> = cut.times[crit][1..].to_vec();
    let mut q = Vec::new();
    let mut holds = true;
    for k in 1..s.len() {
        let gap = s[k] - s[k - 1];
        let f = s.iter().position(|&t| t == gap);
        holds &= f.is_some();
        q.push(f);
    }
    let pmm = build_diagram_pmm(kd, depth_cap)?;
    let d = &pmm.diagram;
    let a = &kd.sequences[crit];
    // Follower class of `D_n` for the critical sequence.
    let class_at = |n: usize| -> Option<FollowerPair> { kd.pair_of(&a.prefix(n)?).ok().flatten() };
    let mut class_arrows: Vec<(FollowerPair, FollowerPair)> = Vec::new();
    let mut pair_cache: HashMap<usize, Option<FollowerPair>> = HashMap::new();
    for u in 0..d.n_vertices() {
        let pu = *pair_cache.entry(u).or_insert_with(|| kd.pair_of(&d.vertices[u]).ok().flatten());
        for &v in &d.arrows[u] {
            let pv = *pair_cache.entry(v).or_insert_with(|| kd.pair_of(&d.vertices[v]).ok().flatten());
            if let (Some(x), Some(y)) = (pu, pv) {
                class_arrows.push((x, y));
            }
        }
    }
    let has = |x: &FollowerPair, y: &FollowerPair| {
        class_arrows.iter().any(|(p, r)| kd.pair_eq(p, x).is_yes() && kd.pair_eq(r, y).is_yes())
    };
    let mut back = Vec::new();
    let mut verified = true;
    let limit = depth_cap.min(s.len());
    for k in 1..limit {
        let Some(Some(qk)) = q.get(k - 1) else { break };
        let (from, to) = (s[k], s[*qk] + 1);
        if from > depth_cap || to > depth_cap {
            break;
        }
        let (Some(x), Some(y)) = (class_at(from), class_at(to)) else { break };
        if has(&x, &y) {
            back.push((from, to));
        } else {
            verified = false;
        }
    }
    let twin = (1..depth_cap.min(32)).all(|n| {
        let (x, y) = (kd.sequences[1].prefix(n), kd.sequences[2].prefix(n));
        match (x, y) {
            (Some(x), Some(y)) => {
                let mut y2 = y.clone();
                y2[0] = x[0];
                y2 != x
                    || matches!(
                        (kd.pair_of(&x), kd.pair_of(&y)),
                        (Ok(Some(p)), Ok(Some(r))) if kd.pair_eq(&p, &r).is_yes()
                    )
            }
            _ => true,
        }
    });
    let degenerate = s.iter().take(16).enumerate().all(|(i, &t)| t == i + 1)
        && d.n_vertices() == 2
        && d.n_arrows() == 4;
    Ok(UnimodalStructure {
        cutting_times: s,
        kneading_map: q,
        recursion_holds: holds,
        back_arrows: back,
        shape_verified: verified,
        twin_rays_identified: twin,
        degenerate_full_shift: degenerate,
        complete: d.complete,
    })
}
