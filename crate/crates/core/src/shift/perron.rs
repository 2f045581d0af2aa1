//! Perron data of strongly connected components by power iteration.

use serde::Serialize;

use super::graph::ShiftGraph;
use crate::diagram::SccInfo;
use crate::error::ShiftError;

pub const MAX_ITERATIONS: usize = 100_000;
const TARGET: f64 = 1e-14;

#[derive(Clone, Debug, Serialize)]
pub struct EigenData {
    pub component: usize,
    /// Perron eigenvalue `λ = e^h`.
    pub lambda: f64,
    /// `R = 1/λ`.
    pub radius: f64,
    /// Left and right eigenvectors over all vertices, zero off the component.
    /// Normalized by `Σ r = 1` and `Σ ℓ r = 1`.
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    /// Max of the relative residuals of `A r = λ r` and `ℓ A = λ ℓ`.
    pub residual: f64,
    pub period: usize,
    pub iterations: usize,
}

/// Power iteration of `A + I` on one component; returns `(λ, vector, iterations)`.
fn power(adj: &[Vec<usize>], members: &[usize], in_comp: &[bool]) -> Result<(f64, Vec<f64>, usize), ShiftError> {
    let n = adj.len();
    let mut x = vec![0.0; n];
    for &v in members {
        x[v] = 1.0 / members.len() as f64;
    }
    let mut y = vec![0.0; n];
    for it in 1..=MAX_ITERATIONS {
        for &v in members {
            let s: f64 = adj[v].iter().filter(|&&t| in_comp[t]).map(|&t| x[t]).sum();
            y[v] = s + x[v];
        }
        // Collatz–Wielandt bracket for λ + 1.
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for &v in members {
            let q = y[v] / x[v];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        let norm: f64 = members.iter().map(|&v| y[v]).sum();
        for &v in members {
            x[v] = y[v] / norm;
        }
        if hi - lo <= TARGET * hi {
            return Ok((0.5 * (lo + hi) - 1.0, x, it));
        }
    }
    Err(ShiftError::NonConvergence(MAX_ITERATIONS))
}

fn residual(adj: &[Vec<usize>], members: &[usize], in_comp: &[bool], v: &[f64], lambda: f64) -> f64 {
    let mut worst = 0.0f64;
    let scale = members.iter().map(|&i| v[i].abs()).fold(0.0, f64::max);
    for &i in members {
        let s: f64 = adj[i].iter().filter(|&&t| in_comp[t]).map(|&t| v[t]).sum();
        worst = worst.max((s - lambda * v[i]).abs());
    }
    worst / scale
}

pub fn eigen(g: &ShiftGraph, info: &SccInfo, component: usize) -> Result<EigenData, ShiftError> {
    if component >= info.periods.len() || info.is_trivial(component) {
        return Err(ShiftError::TrivialComponent(component));
    }
    let members = &info.members[component];
    let in_comp = g.component_mask(info, component);
    let pred = g.predecessors();
    let (lr, mut r, it1) = power(&g.arrows, members, &in_comp)?;
    let (ll, mut l, it2) = power(&pred, members, &in_comp)?;
    let lambda = 0.5 * (lr + ll);
    let sr: f64 = r.iter().sum();
    r.iter_mut().for_each(|x| *x /= sr);
    let dot: f64 = members.iter().map(|&v| l[v] * r[v]).sum();
    l.iter_mut().for_each(|x| *x /= dot);
    let res = residual(&g.arrows, members, &in_comp, &r, lambda)
        .max(residual(&pred, members, &in_comp, &l, lambda));
    Ok(EigenData {
        component,
        lambda,
        radius: 1.0 / lambda,
        left: l,
        right: r,
        residual: res,
        period: info.periods[component],
        iterations: it1.max(it2),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyReport {
    pub h: f64,
    pub lambda: f64,
    pub component: usize,
    pub per_component: Vec<Option<f64>>,
    pub residual: f64,
    /// The graph has boundary vertices: `h` is the entropy of the truncation, a lower bound.
    pub censored: bool,
}

/// Gurevič entropy: log of the largest Perron eigenvalue over components, or of the component
/// containing `base` when given.
pub fn entropy(g: &ShiftGraph, base: Option<usize>) -> Result<EntropyReport, ShiftError> {
    let info = g.scc();
    let mut per = vec![None; info.periods.len()];
    let mut best: Option<EigenData> = None;
    let wanted = match base {
        Some(v) if v >= g.n() => return Err(ShiftError::NoSuchVertex(v)),
        Some(v) => Some(info.component[v]),
        None => None,
    };
    for c in info.recurrent() {
        if wanted.is_some_and(|w| w != c) {
            continue;
        }
        let e = eigen(g, &info, c)?;
        per[c] = Some(e.lambda.ln());
        if best.as_ref().is_none_or(|b| e.lambda > b.lambda) {
            best = Some(e);
        }
    }
    let e = best.ok_or(ShiftError::NoCycle)?;
    Ok(EntropyReport {
        h: e.lambda.ln(),
        lambda: e.lambda,
        component: e.component,
        per_component: per,
        residual: e.residual,
        censored: !g.is_finite_complete(),
    })
}

/// Entropy with `0` for graphs without cycles.
pub fn entropy_or_zero(g: &ShiftGraph) -> f64 {
    match entropy(g, None) {
        Ok(r) => r.h.max(0.0),
        Err(_) => 0.0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SprFit {
    pub i: usize,
    pub j: usize,
    /// Residue of `n` mod the period along which `A^n_{ij}` is nonzero.
    pub residue: usize,
    /// `(n, |A^n_{ij} λ^{-n} - d·r_i ℓ_j|)` along the residue class.
    pub errors: Vec<(usize, f64)>,
    /// Least-squares slope of `log error` against `n`; `-inf` when the error vanishes.
    pub rate: f64,
}

/// Convergence of `A^n_{ij} λ^{-n}` to `d·r_i ℓ_j` for `i, j` in the component of `e`.
pub fn spr_convergence(g: &ShiftGraph, e: &EigenData, i: usize, j: usize, nmax: usize) -> SprFit {
    let n = g.n();
    let d = e.period.max(1);
    let target = d as f64 * e.right[i] * e.left[j];
    // Column j of (A/λ)^n.
    let mut col = vec![0.0; n];
    col[j] = 1.0;
    let mut vals = Vec::with_capacity(nmax);
    for _ in 0..nmax {
        let next: Vec<f64> =
            g.arrows.iter().map(|ts| ts.iter().map(|&t| col[t]).sum::<f64>() / e.lambda).collect();
        col = next;
        vals.push(col[i]);
    }
    let residue = (1..=nmax).rev().find(|&k| vals[k - 1] != 0.0).map_or(0, |k| k % d);
    let errors: Vec<(usize, f64)> =
        (1..=nmax).filter(|k| k % d == residue).map(|k| (k, (vals[k - 1] - target).abs())).collect();
    // Fit above the rounding floor only.
    let pts: Vec<(f64, f64)> =
        errors.iter().filter(|(_, x)| *x > 1e-13).map(|&(k, x)| (k as f64, x.ln())).collect();
    let rate = if pts.len() < 2 {
        f64::NEG_INFINITY
    } else {
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    SprFit { i, j, residue, errors, rate }
}
