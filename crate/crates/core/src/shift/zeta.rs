//! Local and semi-local zeta functions of graph shifts.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::graph::ShiftGraph;
use super::returns::return_series;
use crate::arith::linalg::{det_poly, remove_vertices};
use crate::arith::roots::complex_roots;
use crate::arith::{rat, Poly};
use crate::error::ShiftError;

/// Terms of the periodic-point identity check.
pub const CHECK_TERMS: usize = 12;

/// `tr A^n` for `n = 1..=n_max`, by counting closed walks from each vertex.
pub fn traces(arrows: &[Vec<usize>], n_max: usize) -> Vec<BigUint> {
    let k = arrows.len();
    let mut tr = vec![BigUint::zero(); n_max];
    for s in 0..k {
        let mut x = vec![BigUint::zero(); k];
        x[s] = BigUint::one();
        for t in tr.iter_mut() {
            let mut y = vec![BigUint::zero(); k];
            for u in 0..k {
                if x[u].is_zero() {
                    continue;
                }
                for &w in &arrows[u] {
                    y[w] += &x[u];
                }
            }
            *t += &y[s];
            x = y;
        }
    }
    tr
}

/// `exp Σ_{n≥1} a_n z^n / n` to order `a.len()`, via `n c_n = Σ_k a_k c_{n-k}`.
pub fn exp_series(a: &[BigInt]) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for n in 1..=a.len() {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc += BigRational::from_integer(a[k - 1].clone()) * &c[n - k];
        }
        c.push(acc / BigRational::from_integer(BigInt::from(n)));
    }
    c
}

/// Integer coefficients of a series expected to be integral.
pub fn integral(c: &[BigRational]) -> Result<Vec<BigInt>, ShiftError> {
    c.iter()
        .map(|x| {
            x.is_integer()
                .then(|| x.to_integer())
                .ok_or_else(|| ShiftError::InconsistentSeries("non-integral zeta coefficient".into()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalFunction {
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub num: Vec<BigInt>,
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub den: Vec<BigInt>,
}

impl RationalFunction {
    fn from_polys(num: &Poly, den: &Poly) -> Option<Self> {
        let g = num.gcd(den);
        let (n, d) = (num.divrem(&g).0, den.divrem(&g).0);
        let c = d.coeff(0).recip();
        Some(RationalFunction { num: n.scale(&c).to_bigints()?, den: d.scale(&c).to_bigints()? })
    }

    pub fn series(&self, n: usize) -> Vec<BigRational> {
        Poly::series_div(&Poly::from_bigints(&self.num), &Poly::from_bigints(&self.den), n + 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalZeta {
    pub vertex: usize,
    /// Coefficients of `ζ_v(z) = 1/(1 - f_v(z))` up to `z^N`.
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub coeffs: Vec<BigUint>,
    pub exact: Option<RationalFunction>,
    /// Smallest positive pole of the rational form.
    pub pole: Option<f64>,
    /// Smallest modulus of a zero of the rational form, `inf` when it has none.
    pub min_zero_modulus: Option<f64>,
    /// `ζ_v = exp Σ p_n(v) z^n / n` with `p_n(v)` the period-`n` points visiting `v`, checked
    /// for `n ≤ 12`.
    pub periodic_identity: bool,
    pub censored_from: Option<usize>,
}

/// `p_n(v) = tr A^n - tr A_{v̂}^n` for `n = 1..=n_max`.
pub fn periodic_through(g: &ShiftGraph, f: &[usize], n_max: usize) -> Vec<BigInt> {
    let mut drop = vec![false; g.n()];
    for &v in f {
        drop[v] = true;
    }
    let all = traces(&g.arrows, n_max);
    let rest = traces(&remove_vertices(&g.arrows, &drop), n_max);
    all.into_iter().zip(rest).map(|(a, b)| BigInt::from(a) - BigInt::from(b)).collect()
}

fn smallest_positive_root(p: &Poly) -> Option<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let (a, b) = p.smallest_root_in(&BigRational::zero(), &p.root_bound(), &rat(1, 1 << 50))?;
    Some(0.5 * (a.to_f64()? + b.to_f64()?))
}

fn min_modulus(p: &Poly) -> Option<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Some(f64::INFINITY);
    }
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    Some(complex_roots(&c)?.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min))
}

pub fn local_zeta(g: &ShiftGraph, v: usize, n: usize) -> Result<LocalZeta, ShiftError> {
    let s = return_series(g, v, n)?;
    let exact = match &s.exact_gf {
        Some(gf) => RationalFunction::from_polys(&Poly::from_bigints(&gf.l_num), &Poly::from_bigints(&gf.l_den)),
        None => None,
    };
    let (pole, min_zero_modulus) = match &exact {
        Some(r) => (smallest_positive_root(&Poly::from_bigints(&r.den)), min_modulus(&Poly::from_bigints(&r.num))),
        None => (None, None),
    };
    let m = n.min(CHECK_TERMS);
    let direct = integral(&exp_series(&periodic_through(g, &[v], m)))?;
    let periodic_identity = direct.iter().zip(&s.l).all(|(a, b)| *a == BigInt::from(b.clone()));
    Ok(LocalZeta {
        vertex: v,
        coeffs: s.l,
        exact,
        pole,
        min_zero_modulus,
        periodic_identity,
        censored_from: s.censored_from,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiLocalZeta {
    pub set: Vec<usize>,
    #[serde(serialize_with = "crate::arith::ser::decimals")]
    pub coeffs: Vec<BigInt>,
    /// `det(I - zA_{F̂}) / det(I - zA)` when the graph has no boundary.
    pub exact: Option<RationalFunction>,
}

/// `exp Σ z^n/n · #{period-n sequences meeting F}`.
pub fn semi_local_zeta(g: &ShiftGraph, f: &[usize], n: usize) -> Result<SemiLocalZeta, ShiftError> {
    if let Some(&v) = f.iter().find(|&&v| v >= g.n()) {
        return Err(ShiftError::NoSuchVertex(v));
    }
    let coeffs = integral(&exp_series(&periodic_through(g, f, n)))?;
    let exact = if g.is_finite_complete() {
        let mut drop = vec![false; g.n()];
        for &v in f {
            drop[v] = true;
        }
        RationalFunction::from_polys(&det_poly(&remove_vertices(&g.arrows, &drop)), &det_poly(&g.arrows))
    } else {
        None
    };
    Ok(SemiLocalZeta { set: f.to_vec(), coeffs, exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn golden_local() {
        let g = ShiftGraph::golden();
        let z = local_zeta(&g, 0, 10).unwrap();
        assert!(z.periodic_identity);
        let e = z.exact.as_ref().unwrap();
        assert_eq!(ints(&e.num), vec![1]);
        assert_eq!(ints(&e.den), vec![1, -1, -1]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((z.pole.unwrap() - 1.0 / phi).abs() < 1e-12);
        assert_eq!(ints(&periodic_through(&g, &[0], 5)), vec![1, 3, 4, 7, 11]);
    }

    #[test]
    fn complete_two_pole() {
        let g = ShiftGraph::complete(2);
        let z = local_zeta(&g, 0, 8).unwrap();
        assert!((z.pole.unwrap() - 0.5).abs() < 1e-14);
        assert!(z.min_zero_modulus.unwrap() > 0.5);
        let all = semi_local_zeta(&g, &[0, 1], 10).unwrap();
        let pow: Vec<i64> = (0..=10).map(|k| 1i64 << k).collect();
        assert_eq!(ints(&all.coeffs), pow);
    }

    #[test]
    fn trivial_cases() {
        let g = ShiftGraph::new(vec![vec![0]], "loop");
        let z = local_zeta(&g, 0, 5).unwrap();
        assert!(z.coeffs.iter().all(|c| c.is_one()));
        let h = ShiftGraph::new(vec![vec![1], vec![1]], "tail");
        let s = semi_local_zeta(&h, &[0], 6).unwrap();
        assert_eq!(ints(&s.coeffs), vec![1, 0, 0, 0, 0, 0, 0]);
        let one = semi_local_zeta(&g, &[0], 6).unwrap();
        assert_eq!(ints(&one.coeffs), vec![1; 7]);
    }
}
