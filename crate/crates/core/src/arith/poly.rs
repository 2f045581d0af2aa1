//! Dense univariate polynomials over Q, low degree first.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Poly::new(c.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly { coeffs: c }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] / &lead;
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &f * c;
                r[i - dd + j] -= t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading().recip();
        self.scale(&l)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.leading().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Truncate to terms of degree < n.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// First `n` coefficients of the power series num/den. Requires den(0) != 0.
    pub fn series_div(num: &Poly, den: &Poly, n: usize) -> Vec<BigRational> {
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "series denominator vanishes at 0");
        let inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.coeffs.len().saturating_sub(1)) {
                acc -= den.coeff(j) * &out[k - j];
            }
            out.push(acc * &inv);
        }
        out
    }

    /// Sturm chain p, p', -rem(p, p'), ...
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let sq = self.squarefree();
        let chain = sq.sturm_chain();
        let va = sign_changes(&chain, a);
        let vb = sign_changes(&chain, b);
        va.saturating_sub(vb)
    }

    /// self / gcd(self, self').
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.divrem(&g).0
        }
    }

    /// Smallest root in (a, b], isolated to an interval of width below `width`.
    pub fn smallest_root_in(
        &self,
        a: &BigRational,
        b: &BigRational,
        width: &BigRational,
    ) -> Option<(BigRational, BigRational)> {
        let p = self.squarefree();
        if p.count_roots(a, b) == 0 {
            return None;
        }
        let (mut lo, mut hi) = (a.clone(), b.clone());
        let two = rat(2, 1);
        // Shrink hi until exactly one root remains in (lo, hi].
        while p.count_roots(&lo, &hi) > 1 || &hi - &lo > *width {
            let mid = (&lo + &hi) / &two;
            if p.count_roots(&lo, &mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some((lo, hi))
    }

    /// Bound on absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> BigRational {
        let l = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| c.abs() / &l)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

fn sign_changes(chain: &[Poly], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = Poly::from_ints(&[3, 0, -2, 5, 1]);
        let b = Poly::from_ints(&[1, 1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = Poly::from_ints(&[-1, 1]); // z - 1
        let a = f.mul(&Poly::from_ints(&[2, 0, 1]));
        let b = f.mul(&Poly::from_ints(&[3, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = Poly::from_ints(&[-1, -1, 1]);
        let b = Poly::from_ints(&[0, 3, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn sturm_counts_golden_roots() {
        // 1 - z - z^2 has roots 0.618.. and -1.618..
        let p = Poly::from_ints(&[1, -1, -1]);
        assert_eq!(p.count_roots(&rat(0, 1), &rat(1, 1)), 1);
        assert_eq!(p.count_roots(&rat(-2, 1), &rat(1, 1)), 2);
        let (lo, hi) = p.smallest_root_in(&rat(0, 1), &rat(1, 1), &rat(1, 1 << 40)).unwrap();
        let r = (5f64.sqrt() - 1.0) / 2.0;
        assert!(lo.to_f64().unwrap() <= r + 1e-12 && hi.to_f64().unwrap() >= r - 1e-12);
    }

    #[test]
    fn series_division_fibonacci() {
        let c = Poly::series_div(&Poly::one(), &Poly::from_ints(&[1, -1, -1]), 10);
        let fib: Vec<i64> = vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (a, b) in c.iter().zip(fib) {
            assert_eq!(*a, rat(b, 1));
        }
    }
}
