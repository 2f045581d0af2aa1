use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use super::exact::Exact;

/// Number type an interval map can be evaluated over.
///
/// `Exact` decides every comparison. `f64` compares with a tolerance and reports
/// near-ties through [`Scalar::cmp_tol`].
pub trait Scalar: Clone + Debug + Display + Send + Sync + 'static {
    type Key: Clone + Eq + Hash + Debug + Send + Sync;
    const EXACT: bool;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// A rational constant living in the same field as `self`.
    fn ratio(&self, n: i64, d: i64) -> Self;
    fn key(&self) -> Self::Key;
    /// Convert a float into the scalar type (exactly, for `Exact`).
    fn from_f64_like(&self, v: f64) -> Self;

    /// Exact comparison, or `None` when the values are within `tol` but not equal.
    fn cmp_tol(&self, o: &Self, tol: f64) -> Option<Ordering>;

    fn is_zero(&self) -> bool {
        self.cmp_tol(&self.ratio(0, 1), 0.0) == Some(Ordering::Equal)
    }
}

impl Scalar for Exact {
    type Key = Exact;
    const EXACT: bool = true;

    fn add(&self, o: &Self) -> Self {
        Exact::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Exact::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Exact::mul(self, o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Exact::div(self, o).ok()
    }
    fn neg(&self) -> Self {
        Exact::neg(self)
    }
    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }
    fn ratio(&self, n: i64, d: i64) -> Self {
        Exact::from_ratio(self.field(), n, d)
    }
    fn key(&self) -> Exact {
        self.clone()
    }
    fn from_f64_like(&self, v: f64) -> Self {
        Exact::from_f64(v).expect("finite float")
    }
    fn cmp_tol(&self, o: &Self, _tol: f64) -> Option<Ordering> {
        Some(self.cmp(o))
    }
    fn is_zero(&self) -> bool {
        Exact::is_zero(self)
    }
}

impl Scalar for f64 {
    type Key = u64;
    const EXACT: bool = false;

    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (*o != 0.0).then(|| self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ratio(&self, n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
    fn from_f64_like(&self, v: f64) -> Self {
        v
    }
    fn key(&self) -> u64 {
        // Collapse -0.0 onto 0.0.
        (self + 0.0).to_bits()
    }
    fn cmp_tol(&self, o: &Self, tol: f64) -> Option<Ordering> {
        if self == o {
            return Some(Ordering::Equal);
        }
        if (self - o).abs() <= tol {
            return None;
        }
        self.partial_cmp(o)
    }
}
