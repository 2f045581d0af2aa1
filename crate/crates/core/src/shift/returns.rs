//! First-return and return counts at a vertex, and the Vere-Jones classification.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::graph::ShiftGraph;
use crate::arith::linalg::{det_poly, remove_vertices};
use crate::arith::{rat, Poly};
use crate::error::ShiftError;

/// Largest component handled by the exact generating function.
pub const EXACT_GF_LIMIT: usize = 400;

/// `f(z) = num/den` and `ℓ(z) = 1/(1 - f(z))` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, Serialize)]
pub struct ExactGf {
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub f_num: Vec<BigInt>,
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub f_den: Vec<BigInt>,
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub l_num: Vec<BigInt>,
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub l_den: Vec<BigInt>,
}

impl ExactGf {
    fn polys(&self) -> (Poly, Poly) {
        (Poly::from_bigints(&self.l_num), Poly::from_bigints(&self.l_den))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReturnSeries {
    pub base: usize,
    /// `f[n]` first returns of length `n`; `f[0] = 0`.
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub f: Vec<BigUint>,
    /// `l[n]` returns of length `n`; `l[0] = 1`.
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub l: Vec<BigUint>,
    /// Index from which counts can involve the truncation frontier and are only lower bounds.
    pub censored_from: Option<usize>,
    pub exact_gf: Option<ExactGf>,
}

impl ReturnSeries {
    pub fn depth(&self) -> usize {
        self.f.len() - 1
    }

    /// `ℓ_n = Σ_{k=1..n} f_k ℓ_{n-k}` for every computed `n`.
    pub fn renewal_holds(&self) -> bool {
        (1..self.l.len()).all(|n| {
            let s: BigUint = (1..=n).map(|k| &self.f[k] * &self.l[n - k]).sum();
            s == self.l[n]
        })
    }

    /// Number of leading terms that are exact for the infinite graph.
    pub fn exact_terms(&self) -> usize {
        self.censored_from.map_or(self.f.len(), |c| c.min(self.f.len()))
    }
}

pub fn return_series(g: &ShiftGraph, v: usize, n: usize) -> Result<ReturnSeries, ShiftError> {
    if v >= g.n() {
        return Err(ShiftError::NoSuchVertex(v));
    }
    let k = g.n();
    // Walks from v avoiding v after the start, and unrestricted walks.
    let mut avoid = vec![BigUint::zero(); k];
    let mut walk = vec![BigUint::zero(); k];
    avoid[v] = BigUint::one();
    walk[v] = BigUint::one();
    let mut f = vec![BigUint::zero()];
    let mut l = vec![BigUint::one()];
    for _ in 0..n {
        let mut na = vec![BigUint::zero(); k];
        let mut nw = vec![BigUint::zero(); k];
        for u in 0..k {
            for &t in &g.arrows[u] {
                if !avoid[u].is_zero() {
                    na[t] += &avoid[u];
                }
                if !walk[u].is_zero() {
                    nw[t] += &walk[u];
                }
            }
        }
        f.push(std::mem::take(&mut na[v]));
        l.push(nw[v].clone());
        avoid = na;
        walk = nw;
    }
    let censored_from = g.distance_to_boundary(v).map(|d| d + 2);
    let exact_gf = exact_gf(g, v)?;
    let s = ReturnSeries { base: v, f, l, censored_from, exact_gf };
    if !s.renewal_holds() {
        return Err(ShiftError::InconsistentSeries("renewal identity fails".into()));
    }
    Ok(s)
}

/// `ℓ(z) = det(I - zA_{C∖v}) / det(I - zA_C)` on the component `C` of `v`, unless `C`
/// touches the boundary.
fn exact_gf(g: &ShiftGraph, v: usize) -> Result<Option<ExactGf>, ShiftError> {
    let info = g.scc();
    let c = info.component[v];
    let members = &info.members[c];
    if members.iter().any(|&u| g.boundary[u]) {
        return Ok(None);
    }
    if members.len() > EXACT_GF_LIMIT {
        return Err(ShiftError::TooLarge(members.len()));
    }
    let keep = g.component_mask(&info, c);
    let (sub, old) = g.induced(&keep);
    let local = old.iter().position(|&u| u == v).expect("vertex in its component");
    let d = det_poly(&sub.arrows);
    let mut drop = vec![false; sub.n()];
    drop[local] = true;
    let q = det_poly(&remove_vertices(&sub.arrows, &drop));
    let gcd = d.gcd(&q);
    let (dr, qr) = (d.divrem(&gcd).0, q.divrem(&gcd).0);
    // Normalize so the constant terms are 1.
    let (dr, qr) = (dr.scale(&dr.coeff(0).recip()), qr.scale(&qr.coeff(0).recip()));
    let f_num = qr.sub(&dr);
    let ints = |p: &Poly| p.to_bigints().ok_or_else(|| ShiftError::InconsistentSeries("non-integral gf".into()));
    Ok(Some(ExactGf { f_num: ints(&f_num)?, f_den: ints(&qr)?, l_num: ints(&qr)?, l_den: ints(&dr)? }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VjClass {
    Transient,
    NullRecurrent,
    PositiveRecurrent,
    #[serde(rename = "SPR")]
    Spr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certainty {
    Certified,
    DepthLimited,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: VjClass,
    pub certainty: Certainty,
    /// Radius `R = e^{-h}` the series is evaluated at.
    pub radius: f64,
    /// `f(R)`: exactly 1 when certified recurrent, a partial sum otherwise.
    pub f_at_radius: f64,
    /// Estimated remainder beyond the last exact term.
    pub tail: f64,
    /// Empirical `limsup f_n^{1/n} · R`; below 1 indicates SPR.
    pub root_test: f64,
    /// Smallest positive pole of `ℓ(z)` with its isolating interval, when certified.
    pub pole: Option<(f64, f64)>,
    /// Smallest positive singularity of `f(z)`, when it has one.
    pub f_radius: Option<f64>,
    pub terms: usize,
}

/// Exact partial sums `Σ_{k≤n} f_k R^k` for `n = 0..terms`.
pub fn partial_sums_exact(s: &ReturnSeries, r: &BigRational, terms: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(terms);
    let mut acc = BigRational::zero();
    let mut pow = BigRational::one();
    for k in 0..terms.min(s.f.len()) {
        if k > 0 {
            pow = &pow * r;
        }
        acc += BigRational::from_integer(BigInt::from(s.f[k].clone())) * &pow;
        out.push(acc.clone());
    }
    out
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Classify the base vertex at radius `r` (the component's `e^{-h}`).
///
/// With an exact generating function the verdict is certified: `f(ρ) = 1` at the smallest
/// positive pole `ρ` of `ℓ`, and SPR holds when `f` has no singularity in `(0, ρ]`.
/// Otherwise exact rational partial sums up to the censoring index decide a depth-limited
/// verdict; `exact_r` replaces `r` when the radius is known exactly.
pub fn classify(s: &ReturnSeries, r: f64, exact_r: Option<&BigRational>) -> Result<Classification, ShiftError> {
    if let Some(gf) = &s.exact_gf {
        return certified(s, gf, r);
    }
    let terms = s.exact_terms();
    let rq = match exact_r {
        Some(q) => q.clone(),
        None => BigRational::from_f64(r).ok_or_else(|| ShiftError::InconsistentSeries("bad radius".into()))?,
    };
    let sums = partial_sums_exact(s, &rq, terms);
    let total = sums.last().map(to_f64).unwrap_or(0.0);
    let rf = to_f64(&rq);
    // Nonzero terms t_k = f_k R^k and their spacing.
    let t: Vec<(usize, f64)> = (1..terms)
        .filter(|&k| !s.f[k].is_zero())
        .map(|k| (k, (crate::arith::ln_biguint(&s.f[k]) + k as f64 * rf.ln()).exp()))
        .collect();
    let (tail, ratio) = match t.as_slice() {
        [.., (k0, a), (k1, b)] => {
            let q = b / a;
            let per = (k1 - k0) as f64;
            if q < 1.0 {
                (b * q / (1.0 - q), q.powf(1.0 / per))
            } else {
                (f64::INFINITY, q.powf(1.0 / per))
            }
        }
        _ => (0.0, 0.0),
    };
    let root_test = (1..terms)
        .rev()
        .take(8)
        .filter(|&k| !s.f[k].is_zero())
        .map(|k| (crate::arith::ln_biguint(&s.f[k]) / k as f64).exp() * rf)
        .fold(0.0, f64::max);
    let class = if total + tail < 1.0 - 1e-12 {
        VjClass::Transient
    } else if ratio < 0.95 {
        VjClass::Spr
    } else {
        let moment: f64 = t.iter().map(|(k, x)| *k as f64 * x).sum();
        if moment > 1e6 {
            VjClass::NullRecurrent
        } else {
            VjClass::PositiveRecurrent
        }
    };
    Ok(Classification {
        class,
        certainty: Certainty::DepthLimited,
        radius: rf,
        f_at_radius: total,
        tail,
        root_test,
        pole: None,
        f_radius: None,
        terms,
    })
}

fn certified(s: &ReturnSeries, gf: &ExactGf, r: f64) -> Result<Classification, ShiftError> {
    let (q, d) = gf.polys();
    let zero = BigRational::zero();
    let root_test = 0.0;
    if d.degree().unwrap_or(0) == 0 {
        // ℓ is a polynomial: no cycle through the vertex.
        return Ok(Classification {
            class: VjClass::Transient,
            certainty: Certainty::Certified,
            radius: r,
            f_at_radius: 0.0,
            tail: 0.0,
            root_test,
            pole: None,
            f_radius: None,
            terms: s.f.len(),
        });
    }
    let bound = d.root_bound();
    let width = rat(1, 1 << 40);
    let (mut lo, mut hi) = d
        .smallest_root_in(&zero, &bound, &width)
        .ok_or_else(|| ShiftError::InconsistentSeries("ℓ(z) has no positive pole".into()))?;
    let pole = 0.5 * (to_f64(&lo) + to_f64(&hi));
    if (pole - r).abs() > 1e-9 * r.max(1.0) {
        return Err(ShiftError::InconsistentSeries(format!("pole {pole} differs from radius {r}")));
    }
    // Shrink the isolating interval until q has no root in it; q(ρ) ≠ 0 since gcd(q, d) = 1.
    let mut rounds = 0;
    while q.count_roots(&lo, &hi) > 0 {
        let mid = (&lo + &hi) / rat(2, 1);
        if d.count_roots(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
        rounds += 1;
        if rounds > 400 {
            return Err(ShiftError::InconsistentSeries("cannot separate f's poles from ρ".into()));
        }
    }
    let spr = q.count_roots(&zero, &hi) == 0;
    let f_radius = q.smallest_root_in(&zero, &q.root_bound(), &width).map(|(a, b)| 0.5 * (to_f64(&a) + to_f64(&b)));
    // f = 1 - d/q at the pole, evaluated for the record.
    let fv = 1.0 - d.eval_f64(pole) / q.eval_f64(pole);
    let class = if spr { VjClass::Spr } else { VjClass::PositiveRecurrent };
    Ok(Classification {
        class,
        certainty: Certainty::Certified,
        radius: r,
        f_at_radius: if fv.is_finite() { fv } else { 1.0 },
        tail: 0.0,
        root_test: f_radius.map_or(0.0, |fr| pole / fr),
        pole: Some((to_f64(&lo), to_f64(&hi))),
        f_radius,
        terms: s.f.len(),
    })
}

/// `f(z)` and `ℓ(z)` as exact rational series coefficients, for checking the counts.
pub fn gf_coefficients(gf: &ExactGf, n: usize) -> (Vec<BigRational>, Vec<BigRational>) {
    let f = Poly::series_div(&Poly::from_bigints(&gf.f_num), &Poly::from_bigints(&gf.f_den), n + 1);
    let l = Poly::series_div(&Poly::from_bigints(&gf.l_num), &Poly::from_bigints(&gf.l_den), n + 1);
    (f, l)
}

/// Whether the generating function reproduces the computed counts.
pub fn gf_matches(s: &ReturnSeries) -> Option<bool> {
    let gf = s.exact_gf.as_ref()?;
    let (f, l) = gf_coefficients(gf, s.depth());
    let same = |a: &[BigRational], b: &[BigUint]| {
        a.iter().zip(b).all(|(x, y)| x.is_integer() && !x.is_negative() && x.to_integer() == BigInt::from(y.clone()))
    };
    Some(same(&f[1..], &s.f[1..]) && same(&l, &s.l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: &[BigUint]) -> Vec<u64> {
        v.iter().map(|x| x.to_u64().unwrap()).collect()
    }

    #[test]
    fn self_loop() {
        let g = ShiftGraph::new(vec![vec![0]], "loop");
        let s = return_series(&g, 0, 5).unwrap();
        assert_eq!(nums(&s.f), vec![0, 1, 0, 0, 0, 0]);
        assert_eq!(nums(&s.l), vec![1; 6]);
        let c = classify(&s, 1.0, None).unwrap();
        assert_eq!((c.class, c.certainty), (VjClass::Spr, Certainty::Certified));
    }

    #[test]
    fn golden_series() {
        let g = ShiftGraph::golden();
        let s = return_series(&g, 0, 8).unwrap();
        assert_eq!(nums(&s.f), vec![0, 1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(nums(&s.l), vec![1, 1, 2, 3, 5, 8, 13, 21, 34]);
        assert_eq!(gf_matches(&s), Some(true));
        let gf = s.exact_gf.as_ref().unwrap();
        assert_eq!(gf.l_den, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c = classify(&s, 1.0 / phi, None).unwrap();
        assert_eq!(c.class, VjClass::Spr);
        assert!((c.f_at_radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_catalan() {
        let g = ShiftGraph::ladder(40);
        let s = return_series(&g, 0, 16).unwrap();
        let cat = [1u64, 1, 2, 5, 14, 42, 132, 429];
        for n in 1..=8 {
            assert_eq!(s.f[2 * n].to_u64().unwrap(), cat[n - 1]);
            assert!(s.f[2 * n - 1].is_zero());
        }
        assert!(s.exact_gf.is_none());
        let c = classify(&s, 0.5, Some(&rat(1, 2))).unwrap();
        assert_eq!((c.class, c.certainty), (VjClass::Transient, Certainty::DepthLimited));
    }
}
