//! Markov measures on graph shifts: the measure of maximal entropy and chain entropies.

use serde::Serialize;

use super::graph::ShiftGraph;
use super::perron::{eigen, entropy, EigenData};
use crate::arith::Scalar;
use crate::diagram::MarkovDiagram;
use crate::error::ShiftError;
use crate::interval_map::{IntervalMap, Rule};

/// A stationary Markov chain on the vertices; rows are empty off the support.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovMeasure {
    pub transitions: Vec<Vec<(usize, f64)>>,
    pub pi: Vec<f64>,
}

impl MarkovMeasure {
    pub fn bernoulli(p: &[f64]) -> Self {
        let k = p.len();
        MarkovMeasure {
            transitions: (0..k).map(|_| p.iter().copied().enumerate().collect()).collect(),
            pi: p.to_vec(),
        }
    }

    /// Largest deviation of a supported row sum from 1.
    pub fn row_defect(&self) -> f64 {
        self.transitions
            .iter()
            .enumerate()
            .filter(|(u, _)| self.pi[*u] > 0.0)
            .map(|(_, row)| (row.iter().map(|x| x.1).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `‖πP - π‖∞`.
    pub fn stationarity_defect(&self) -> f64 {
        let mut next = vec![0.0; self.pi.len()];
        for (u, row) in self.transitions.iter().enumerate() {
            for &(v, p) in row {
                next[v] += self.pi[u] * p;
            }
        }
        next.iter().zip(&self.pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Probability of the path `v_1 … v_n`.
    pub fn path_weight(&self, path: &[usize]) -> f64 {
        let Some(&first) = path.first() else { return 1.0 };
        let mut w = self.pi[first];
        for e in path.windows(2) {
            w *= self.transitions[e[0]].iter().find(|x| x.0 == e[1]).map_or(0.0, |x| x.1);
        }
        w
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxMeasure {
    pub component: usize,
    pub lambda: f64,
    pub radius: f64,
    pub period: usize,
    pub measure: MarkovMeasure,
    pub eigen: EigenData,
}

impl MaxMeasure {
    /// `λ^{-(n-1)} ℓ_{v_1} r_{v_n}` for a path inside the component, `0` otherwise.
    pub fn cylinder_weight(&self, g: &ShiftGraph, path: &[usize]) -> f64 {
        let (Some(&a), Some(&b)) = (path.first(), path.last()) else { return 1.0 };
        let inside = path.iter().all(|&v| self.eigen.right[v] > 0.0);
        let connected = path.windows(2).all(|e| g.arrows[e[0]].contains(&e[1]));
        if !inside || !connected {
            return 0.0;
        }
        self.lambda.powi(-(path.len() as i32 - 1)) * self.eigen.left[a] * self.eigen.right[b]
    }
}

/// The Parry/Gurevič measure of a component: `p(u→v) = r_v / (λ r_u)`, `π = ℓ r`.
pub fn max_measure(g: &ShiftGraph, component: Option<usize>) -> Result<MaxMeasure, ShiftError> {
    let info = g.scc();
    let c = match component {
        Some(c) => c,
        None => entropy(g, None)?.component,
    };
    if c >= info.members.len() {
        return Err(ShiftError::NoSuchVertex(c));
    }
    if info.members[c].iter().any(|&v| g.boundary[v]) {
        return Err(ShiftError::NotPositiveRecurrent);
    }
    let e = eigen(g, &info, c)?;
    let mask = g.component_mask(&info, c);
    let transitions = (0..g.n())
        .map(|u| {
            if !mask[u] {
                return Vec::new();
            }
            g.arrows[u]
                .iter()
                .filter(|&&v| mask[v])
                .map(|&v| (v, e.right[v] / (e.lambda * e.right[u])))
                .collect()
        })
        .collect();
    let pi = (0..g.n()).map(|v| if mask[v] { e.left[v] * e.right[v] } else { 0.0 }).collect();
    Ok(MaxMeasure {
        component: c,
        lambda: e.lambda,
        radius: e.radius,
        period: e.period,
        measure: MarkovMeasure { transitions, pi },
        eigen: e,
    })
}

/// `-Σ_u π_u Σ_v p(u→v) log p(u→v)`.
pub fn markov_entropy(m: &MarkovMeasure) -> f64 {
    let mut h = 0.0;
    for (u, row) in m.transitions.iter().enumerate() {
        for &(_, p) in row {
            if p > 0.0 {
                h -= m.pi[u] * p * p.ln();
            }
        }
    }
    h
}

/// `Σ_v π_v log|f'|` on the piece read at `v`, for piecewise-affine maps.
pub fn rokhlin_entropy<S: Scalar>(map: &IntervalMap<S>, g: &ShiftGraph, m: &MarkovMeasure) -> Result<f64, ShiftError> {
    let letters = g.letters.as_ref().ok_or(ShiftError::NotAffine)?;
    let mut h = 0.0;
    for (v, &pi) in m.pi.iter().enumerate() {
        if pi == 0.0 {
            continue;
        }
        let b = &map.branches()[letters[v] as usize];
        match &b.rule {
            Rule::Affine { slope, .. } => h += pi * slope.to_f64().abs().ln(),
            Rule::Quadratic { .. } => return Err(ShiftError::NotAffine),
        }
    }
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyAtInfinity {
    /// `h(G ∖ F_k)` per exhaustion step; `0` when the residual has no cycle.
    pub residual: Vec<f64>,
    /// Whether each residual graph is acyclic (or empty).
    pub acyclic: Vec<bool>,
    pub infimum: f64,
    pub h: f64,
    /// `infimum < h - margin`: the entropy is not carried to infinity.
    pub spr_plausible: bool,
}

pub const SPR_MARGIN: f64 = 1e-3;

/// Entropy of the residual graphs `G ∖ F_k` along an exhaustion.
pub fn entropy_at_infinity(g: &ShiftGraph, exhaustion: &[Vec<usize>]) -> Result<EntropyAtInfinity, ShiftError> {
    let h = super::perron::entropy_or_zero(g);
    let mut residual = Vec::new();
    let mut acyclic = Vec::new();
    for f in exhaustion {
        let mut keep = vec![true; g.n()];
        for &v in f {
            if v >= g.n() {
                return Err(ShiftError::NoSuchVertex(v));
            }
            keep[v] = false;
        }
        let (sub, _) = g.induced(&keep);
        match entropy(&sub, None) {
            Ok(r) => {
                residual.push(r.h.max(0.0));
                acyclic.push(false);
            }
            Err(ShiftError::NoCycle) => {
                residual.push(0.0);
                acyclic.push(true);
            }
            Err(e) => return Err(e),
        }
    }
    let infimum = residual.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(EntropyAtInfinity { spr_plausible: infimum < h - SPR_MARGIN, residual, acyclic, infimum, h })
}

/// `F_k` = vertices of depth `≤ k`, for `k = 1..=n`.
pub fn depth_exhaustion(d: &MarkovDiagram, n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|k| (0..d.n_vertices()).filter(|&v| d.depth(v) <= k).collect()).collect()
}

/// `F_k = {0, …, k}`.
pub fn prefix_exhaustion(g: &ShiftGraph, n: usize) -> Vec<Vec<usize>> {
    (0..n.min(g.n())).map(|k| (0..=k).collect()).collect()
}
