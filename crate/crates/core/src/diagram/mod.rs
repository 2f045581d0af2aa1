//! Markov diagrams: minimal words, follower sets and the arrow rule `v → min(v·b)`.

pub mod build;
pub mod export;
pub mod oracle;
pub mod pmm;
pub mod scc;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::DiagramError;
use crate::symbols::{Symbol, SymbolSeq, Word};

pub use build::{build_diagram_generic, follower_equal, minimal_form, FollowerCmp};
pub use oracle::{ForbiddenWords, KneadingOracle, SftOracle, SubshiftOracle};
pub use pmm::{build_diagram_pmm, unimodal_structure, CuttingData, PmmDiagram, UnimodalStructure};
pub use scc::{scc, SccInfo};

pub const DEFAULT_DEPTH_CAP: usize = 64;

pub fn default_probe_depth(depth_cap: usize) -> usize {
    2 * depth_cap
}

/// Directed graph on minimal words. Arrows are stored per source in symbol order.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovDiagram {
    pub vertices: Vec<Word>,
    pub arrows: Vec<Vec<usize>>,
    pub depth_cap: usize,
    /// True iff no vertex has an arrow whose target was cut off by `depth_cap`.
    pub complete: bool,
    /// Vertices with out-arrows dropped at the cap.
    pub boundary: Vec<bool>,
    pub labels: Vec<String>,
    /// Component id per vertex, components in topological order.
    pub scc: Vec<usize>,
    /// Period per component; 0 for a trivial component.
    pub periods: Vec<usize>,
    pub source: String,
    #[serde(skip)]
    index: HashMap<Word, usize>,
}

impl MarkovDiagram {
    pub fn new(
        vertices: Vec<Word>,
        arrows: Vec<Vec<usize>>,
        boundary: Vec<bool>,
        depth_cap: usize,
        labels: Vec<String>,
        source: &str,
    ) -> Self {
        let index = vertices.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let info = scc(&arrows);
        MarkovDiagram {
            complete: !boundary.iter().any(|&b| b),
            vertices,
            arrows,
            depth_cap,
            boundary,
            labels,
            scc: info.component,
            periods: info.periods,
            source: source.to_string(),
            index,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.iter().map(Vec::len).sum()
    }

    pub fn n_components(&self) -> usize {
        self.periods.len()
    }

    pub fn index_of(&self, w: &[Symbol]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn has_arrow(&self, u: usize, v: usize) -> bool {
        self.arrows[u].contains(&v)
    }

    pub fn last_symbol(&self, v: usize) -> Symbol {
        *self.vertices[v].last().expect("vertices are nonempty words")
    }

    /// Vertex word rendered with the alphabet labels.
    pub fn vertex_name(&self, v: usize) -> String {
        let sep = if self.labels.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        self.vertices[v]
            .iter()
            .map(|&s| self.labels.get(s as usize).cloned().unwrap_or_else(|| s.to_string()))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn scc_info(&self) -> SccInfo {
        scc(&self.arrows)
    }

    /// Vertex set of the diagram as a sorted list of words.
    pub fn word_set(&self) -> Vec<Word> {
        let mut w = self.vertices.clone();
        w.sort();
        w
    }

    /// Arrow set as sorted word pairs, for isomorphism checks across constructions.
    pub fn arrow_words(&self) -> Vec<(Word, Word)> {
        let mut out: Vec<(Word, Word)> = self
            .arrows
            .iter()
            .enumerate()
            .flat_map(|(u, ts)| ts.iter().map(move |&v| (u, v)))
            .map(|(u, v)| (self.vertices[u].clone(), self.vertices[v].clone()))
            .collect();
        out.sort();
        out
    }

    /// π̂: last letters along a path; a closed path gives a periodic sequence.
    pub fn project(&self, path: &[usize]) -> Result<SymbolSeq, DiagramError> {
        for &v in path {
            if v >= self.n_vertices() {
                return Err(DiagramError::NoSuchVertex(v));
            }
        }
        for w in path.windows(2) {
            if !self.has_arrow(w[0], w[1]) {
                return Err(DiagramError::NotAPath(w[0], w[1]));
            }
        }
        let letters: Word = path.iter().map(|&v| self.last_symbol(v)).collect();
        if path.len() > 1 && path[0] == path[path.len() - 1] {
            Ok(SymbolSeq::periodic(Vec::new(), letters[..letters.len() - 1].to_vec()))
        } else {
            Ok(SymbolSeq::truncated(letters))
        }
    }

    /// Sub-diagram induced on `keep`; arrows leaving `keep` make the source a boundary vertex.
    pub fn induced(&self, keep: &[bool]) -> MarkovDiagram {
        let map: Vec<Option<usize>> = {
            let mut next = 0;
            keep.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut boundary = Vec::new();
        for v in 0..self.n_vertices() {
            if !keep[v] {
                continue;
            }
            vertices.push(self.vertices[v].clone());
            arrows.push(self.arrows[v].iter().filter_map(|&t| map[t]).collect());
            boundary.push(self.boundary[v] || self.arrows[v].iter().any(|&t| map[t].is_none()));
        }
        MarkovDiagram::new(vertices, arrows, boundary, self.depth_cap, self.labels.clone(), &self.source)
    }

    /// Copy with one arrow removed.
    pub fn without_arrow(&self, u: usize, v: usize) -> MarkovDiagram {
        let mut arrows = self.arrows.clone();
        arrows[u].retain(|&t| t != v);
        MarkovDiagram::new(
            self.vertices.clone(),
            arrows,
            self.boundary.clone(),
            self.depth_cap,
            self.labels.clone(),
            &self.source,
        )
    }
}
