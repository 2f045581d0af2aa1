//! Finite directed graphs presenting (truncations of) countable Markov shifts.

use std::collections::VecDeque;

use serde::Serialize;

use crate::diagram::{scc, MarkovDiagram, SccInfo};
use crate::symbols::Symbol;

#[derive(Clone, Debug, Serialize)]
pub struct ShiftGraph {
    pub arrows: Vec<Vec<usize>>,
    /// Vertices whose out-arrows are incomplete; paths through them are censored.
    pub boundary: Vec<bool>,
    pub names: Vec<String>,
    /// Symbol read at each vertex, when the graph comes from a diagram.
    pub letters: Option<Vec<Symbol>>,
    pub origin: String,
}

impl ShiftGraph {
    pub fn new(arrows: Vec<Vec<usize>>, origin: &str) -> Self {
        let n = arrows.len();
        ShiftGraph {
            arrows,
            boundary: vec![false; n],
            names: (0..n).map(|i| i.to_string()).collect(),
            letters: None,
            origin: origin.to_string(),
        }
    }

    pub fn from_matrix(m: &[Vec<u8>]) -> Self {
        let arrows = m
            .iter()
            .map(|row| row.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, _)| j).collect())
            .collect();
        ShiftGraph::new(arrows, "matrix")
    }

    pub fn from_diagram(d: &MarkovDiagram) -> Self {
        ShiftGraph {
            arrows: d.arrows.clone(),
            boundary: d.boundary.clone(),
            names: (0..d.n_vertices()).map(|v| d.vertex_name(v)).collect(),
            letters: Some((0..d.n_vertices()).map(|v| d.last_symbol(v)).collect()),
            origin: format!("diagram:{}", d.source),
        }
    }

    pub fn complete(k: usize) -> Self {
        ShiftGraph::new((0..k).map(|_| (0..k).collect()).collect(), "complete")
    }

    pub fn cycle(k: usize) -> Self {
        ShiftGraph::new((0..k).map(|i| vec![(i + 1) % k]).collect(), "cycle")
    }

    pub fn golden() -> Self {
        ShiftGraph::new(vec![vec![0, 1], vec![0]], "golden-mean")
    }

    /// The ℕ-ladder `i ↔ i+1` truncated to `0..n`; vertex `n-1` is the boundary.
    pub fn ladder(n: usize) -> Self {
        let arrows = (0..n)
            .map(|i| {
                let mut a = Vec::new();
                if i > 0 {
                    a.push(i - 1);
                }
                if i + 1 < n {
                    a.push(i + 1);
                }
                a
            })
            .collect();
        let mut g = ShiftGraph::new(arrows, "ladder");
        g.boundary[n - 1] = true;
        g
    }

    /// Disjoint union, with the second graph renumbered after the first.
    pub fn disjoint_union(&self, o: &ShiftGraph) -> ShiftGraph {
        let k = self.n();
        let mut arrows = self.arrows.clone();
        arrows.extend(o.arrows.iter().map(|a| a.iter().map(|&t| t + k).collect()));
        let mut boundary = self.boundary.clone();
        boundary.extend(&o.boundary);
        let mut names = self.names.clone();
        names.extend(o.names.iter().map(|s| format!("{s}'")));
        let letters = match (&self.letters, &o.letters) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        ShiftGraph { arrows, boundary, names, letters, origin: "union".into() }
    }

    /// `ladder:N`, `complete:K`, `cycle:K`, `golden`, a JSON 0/1 matrix, or a path to one.
    pub fn parse(src: &str) -> Result<ShiftGraph, String> {
        let (family, param) = src.split_once(':').unwrap_or((src, ""));
        let size = || param.parse::<usize>().ok().filter(|&k| k > 0).ok_or(format!("bad size in {src:?}"));
        match family {
            "ladder" => return Ok(ShiftGraph::ladder(size()?)),
            "complete" => return Ok(ShiftGraph::complete(size()?)),
            "cycle" => return Ok(ShiftGraph::cycle(size()?)),
            "golden" => return Ok(ShiftGraph::golden()),
            _ => {}
        }
        let text = if src.trim_start().starts_with('[') {
            src.to_string()
        } else {
            std::fs::read_to_string(src).map_err(|e| format!("cannot read {src}: {e}"))?
        };
        let m: Vec<Vec<u8>> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
            return Err("matrix must be square and nonempty".into());
        }
        Ok(ShiftGraph::from_matrix(&m))
    }

    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.iter().map(Vec::len).sum()
    }

    pub fn is_finite_complete(&self) -> bool {
        !self.boundary.iter().any(|&b| b)
    }

    pub fn scc(&self) -> SccInfo {
        scc(&self.arrows)
    }

    /// Transposed adjacency.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.n()];
        for (u, ts) in self.arrows.iter().enumerate() {
            for &v in ts {
                p[v].push(u);
            }
        }
        p
    }

    /// Induced subgraph on `keep`; returns the graph and the original index of each vertex.
    pub fn induced(&self, keep: &[bool]) -> (ShiftGraph, Vec<usize>) {
        let old: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut idx = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            idx[v] = i;
        }
        let arrows =
            old.iter().map(|&v| self.arrows[v].iter().filter(|&&t| keep[t]).map(|&t| idx[t]).collect()).collect();
        let g = ShiftGraph {
            arrows,
            boundary: old.iter().map(|&v| self.boundary[v]).collect(),
            names: old.iter().map(|&v| self.names[v].clone()).collect(),
            letters: self.letters.as_ref().map(|l| old.iter().map(|&v| l[v]).collect()),
            origin: self.origin.clone(),
        };
        (g, old)
    }

    pub fn without_arrow(&self, u: usize, v: usize) -> ShiftGraph {
        let mut g = self.clone();
        g.arrows[u].retain(|&t| t != v);
        g
    }

    /// BFS distance from `v` to the nearest boundary vertex.
    pub fn distance_to_boundary(&self, v: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[v] = 0;
        let mut q = VecDeque::from([v]);
        while let Some(u) = q.pop_front() {
            if self.boundary[u] {
                return Some(dist[u]);
            }
            for &t in &self.arrows[u] {
                if dist[t] == usize::MAX {
                    dist[t] = dist[u] + 1;
                    q.push_back(t);
                }
            }
        }
        None
    }

    /// Vertex of `v`'s strongly connected component, as a mask.
    pub fn component_mask(&self, info: &SccInfo, c: usize) -> Vec<bool> {
        (0..self.n()).map(|v| info.component[v] == c).collect()
    }
}
