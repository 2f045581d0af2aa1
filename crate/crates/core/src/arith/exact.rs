//! Exact arithmetic in Q(α) for a real algebraic α.
//!
//! Elements are polynomials in α reduced modulo the minimal polynomial. The sign of an
//! element is decided by evaluating it over a rational isolating interval of α, refining
//! the interval until the enclosure excludes zero. A nonzero element of the field can
//! never evaluate to zero at α, so refinement always terminates.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{rat, Poly};
use crate::error::ArithError;

#[derive(Debug)]
pub struct NumberField {
    name: String,
    symbol: String,
    minpoly: Poly,
    /// Isolating interval (lo, hi] for α, shrunk in place when a sign query needs it.
    interval: RwLock<(BigRational, BigRational)>,
}

impl NumberField {
    /// The rationals, presented as Q(0).
    pub fn rationals() -> Arc<NumberField> {
        static Q: OnceLock<Arc<NumberField>> = OnceLock::new();
        Q.get_or_init(|| {
            Arc::new(NumberField {
                name: "Q".into(),
                symbol: "0".into(),
                minpoly: Poly::x(),
                interval: RwLock::new((rat(-1, 1), rat(1, 1))),
            })
        })
        .clone()
    }

    /// Q(α) where α is the unique root of `minpoly` in (lo, hi].
    pub fn new(
        name: &str,
        minpoly: Poly,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Arc<NumberField>, ArithError> {
        let minpoly = minpoly.monic();
        let deg = minpoly.degree().unwrap_or(0);
        if deg == 0 {
            return Err(ArithError::BadField("constant minimal polynomial".into()));
        }
        if minpoly.count_roots(&lo, &hi) != 1 {
            return Err(ArithError::BadField(format!(
                "minimal polynomial {minpoly} does not have exactly one root in ({lo}, {hi}]"
            )));
        }
        if deg > 1 && has_rational_root(&minpoly) {
            return Err(ArithError::BadField(format!("{minpoly} has a rational root")));
        }
        if deg > 1 && minpoly.squarefree() != minpoly {
            return Err(ArithError::BadField(format!("{minpoly} is not squarefree")));
        }
        let symbol = match name.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            Some(sym) => sym.to_string(),
            None => "a".to_string(),
        };
        let f = NumberField { name: name.into(), symbol, minpoly, interval: RwLock::new((lo, hi)) };
        f.refine_to(&rat(1, 1 << 40));
        Ok(Arc::new(f))
    }

    /// Q(√k) for a positive non-square integer k.
    pub fn sqrt(k: i64) -> Result<Arc<NumberField>, ArithError> {
        static CACHE: OnceLock<Mutex<HashMap<i64, Arc<NumberField>>>> = OnceLock::new();
        if k <= 1 {
            return Err(ArithError::BadField(format!("sqrt({k}) needs k >= 2")));
        }
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().expect("field cache").get(&k) {
            return Ok(f.clone());
        }
        let f = NumberField::new(
            &format!("Q(sqrt({k}))"),
            Poly::from_ints(&[-k, 0, 1]),
            rat(1, 1),
            rat(k, 1),
        )?;
        cache.lock().expect("field cache").insert(k, f.clone());
        Ok(f)
    }

    /// Q(φ) with φ the golden mean.
    pub fn golden() -> Arc<NumberField> {
        static GOLDEN: OnceLock<Arc<NumberField>> = OnceLock::new();
        GOLDEN
            .get_or_init(|| {
                NumberField::new("Q(phi)", Poly::from_ints(&[-1, -1, 1]), rat(1, 1), rat(2, 1))
                    .expect("golden field")
            })
            .clone()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    fn interval(&self) -> (BigRational, BigRational) {
        self.interval.read().expect("field lock").clone()
    }

    fn refine_to(&self, width: &BigRational) {
        let mut g = self.interval.write().expect("field lock");
        let two = rat(2, 1);
        while &g.1 - &g.0 > *width {
            let mid = (&g.0 + &g.1) / &two;
            if self.minpoly.count_roots(&g.0, &mid) == 1 {
                g.1 = mid;
            } else {
                g.0 = mid;
            }
        }
    }

    fn halve(&self) {
        let (lo, hi) = self.interval();
        self.refine_to(&((hi - lo) / rat(2, 1)));
    }

    /// The generator α as an element.
    pub fn generator(self: &Arc<Self>) -> Exact {
        if self.is_rational() {
            // α = 0 in the degenerate presentation of Q.
            return Exact::zero(self);
        }
        let mut c = vec![BigRational::zero(); self.degree()];
        c[1] = BigRational::one();
        Exact { field: self.clone(), coeffs: c }
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
    }
}

fn has_rational_root(p: &Poly) -> bool {
    // Clear denominators, then test ±d/a for d | c0 and a | leading over small divisors.
    let denom = p.coeffs().iter().fold(BigInt::one(), |acc, c| {
        num_integer::Integer::lcm(&acc, c.denom())
    });
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        return true;
    }
    let small = |v: &BigInt| v.abs().to_u64().filter(|&x| x <= 1_000_000);
    let (Some(c0), Some(cl)) = (small(&ints[0]), small(ints.last().unwrap())) else {
        return false;
    };
    let divs = |n: u64| (1..=n).filter(move |d| n % d == 0);
    for num in divs(c0) {
        for den in divs(cl) {
            for s in [1i64, -1] {
                let r = BigRational::new(BigInt::from(num) * s, BigInt::from(den));
                if p.eval(&r).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// An element of a [`NumberField`].
#[derive(Clone)]
pub struct Exact {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl Exact {
    pub fn zero(field: &Arc<NumberField>) -> Exact {
        Exact { field: field.clone(), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Exact {
        let mut e = Exact::zero(field);
        e.coeffs[0] = q;
        e
    }

    pub fn from_ratio(field: &Arc<NumberField>, n: i64, d: i64) -> Exact {
        Exact::from_rational(field, rat(n, d))
    }

    /// Plain rational number in the field Q.
    pub fn rational(n: i64, d: i64) -> Exact {
        Exact::from_ratio(&NumberField::rationals(), n, d)
    }

    pub fn from_poly(field: &Arc<NumberField>, p: &Poly) -> Exact {
        let r = if field.is_rational() {
            Poly::constant(p.eval(&BigRational::zero()))
        } else {
            p.rem(&field.minpoly)
        };
        let mut c = r.coeffs().to_vec();
        c.resize(field.degree(), BigRational::zero());
        Exact { field: field.clone(), coeffs: c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Some(q) if the element is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Coerce `other` into this element's field if it is rational.
    fn unify(&self, other: &Exact) -> Result<Exact, ArithError> {
        if NumberField::same(&self.field, &other.field) {
            return Ok(other.clone());
        }
        match other.as_rational() {
            Some(q) => Ok(Exact::from_rational(&self.field, q.clone())),
            None => Err(ArithError::FieldMismatch(
                self.field.name.clone(),
                other.field.name.clone(),
            )),
        }
    }

    /// Pick the richer field of the two operands.
    fn pair(a: &Exact, b: &Exact) -> (Exact, Exact) {
        if a.field.degree() >= b.field.degree() {
            let b2 = a.unify(b).expect("incompatible number fields");
            (a.clone(), b2)
        } else {
            let a2 = b.unify(a).expect("incompatible number fields");
            (a2, b.clone())
        }
    }

    pub fn add(&self, o: &Exact) -> Exact {
        let (a, b) = Exact::pair(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Exact { field: a.field, coeffs }
    }

    pub fn sub(&self, o: &Exact) -> Exact {
        let (a, b) = Exact::pair(self, o);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        Exact { field: a.field, coeffs }
    }

    pub fn neg(&self) -> Exact {
        Exact { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Exact) -> Exact {
        let (a, b) = Exact::pair(self, o);
        if a.field.is_rational() {
            return Exact::from_rational(&a.field, &a.coeffs[0] * &b.coeffs[0]);
        }
        Exact::from_poly(&a.field, &a.poly().mul(&b.poly()))
    }

    pub fn recip(&self) -> Result<Exact, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.field.is_rational() {
            return Ok(Exact::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let (g, s, _) = self.poly().ext_gcd(&self.field.minpoly);
        debug_assert_eq!(g, Poly::one());
        Ok(Exact::from_poly(&self.field, &s))
    }

    pub fn div(&self, o: &Exact) -> Result<Exact, ArithError> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn signum(&self) -> Ordering {
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let p = self.poly();
        loop {
            let (lo, hi) = self.field.interval();
            let (a, b) = interval_eval(&p, &lo, &hi);
            if a > BigRational::zero() {
                return Ordering::Greater;
            }
            if b < BigRational::zero() {
                return Ordering::Less;
            }
            self.field.halve();
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        self.field.refine_to(&rat(1, 1 << 60));
        let (lo, hi) = self.field.interval();
        let mid = (lo + hi) / rat(2, 1);
        self.poly().eval(&mid).to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite f64.
    pub fn from_f64(x: f64) -> Option<Exact> {
        let q = BigRational::from_float(x)?;
        Some(Exact::from_rational(&NumberField::rationals(), q))
    }

    /// Rational enclosure [lo, hi] of the value with width at most `width`.
    pub fn enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        if let Some(q) = self.as_rational() {
            return (q.clone(), q.clone());
        }
        let p = self.poly();
        loop {
            let (lo, hi) = self.field.interval();
            let (a, b) = interval_eval(&p, &lo, &hi);
            if &b - &a <= *width {
                return (a, b);
            }
            self.field.halve();
        }
    }
}

/// Enclosure of p over [lo, hi] by interval Horner.
fn interval_eval(p: &Poly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

impl PartialEq for Exact {
    fn eq(&self, o: &Exact) -> bool {
        self.sub(o).is_zero()
    }
}

impl Eq for Exact {}

impl Hash for Exact {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Rationals hash identically regardless of the ambient field.
        match self.as_rational() {
            Some(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            None => {
                1u8.hash(state);
                self.field.minpoly.hash(state);
                self.coeffs.hash(state);
            }
        }
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, o: &Exact) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Exact {
    fn cmp(&self, o: &Exact) -> Ordering {
        self.sub(o).signum()
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", crate::arith::parse::rational_string(q));
        }
        let sym = &self.field.symbol;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = crate::arith::parse::rational_string(&c.abs());
            let body = match i {
                0 => mag,
                1 => format!("{mag}*{sym}"),
                _ => format!("{mag}*{sym}^{i}"),
            };
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_identities() {
        let k = NumberField::golden();
        let phi = k.generator();
        let one = Exact::from_ratio(&k, 1, 1);
        assert_eq!(phi.mul(&phi), phi.add(&one));
        let inv = phi.recip().unwrap();
        assert_eq!(inv, phi.sub(&one));
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-15);
    }

    #[test]
    fn sign_of_tiny_difference() {
        let k = NumberField::sqrt(2).unwrap();
        let s = k.generator();
        // sqrt(2) - 140/99 is about 7.2e-5
        let d = s.sub(&Exact::from_ratio(&k, 140, 99));
        assert_eq!(d.signum(), Ordering::Greater);
        let d = s.sub(&Exact::from_ratio(&k, 665_857, 470_832));
        assert_eq!(d.signum(), Ordering::Less);
    }

    #[test]
    fn mixed_rational_and_field() {
        let k = NumberField::golden();
        let phi = k.generator();
        let half = Exact::rational(1, 2);
        assert!(half < phi);
        assert_eq!(half.add(&half), Exact::from_ratio(&k, 1, 1));
    }

    #[test]
    fn reject_reducible() {
        assert!(NumberField::new("bad", Poly::from_ints(&[-4, 0, 1]), rat(1, 1), rat(3, 1)).is_err());
    }
}
