//! Number types: exact algebraic numbers, rational polynomials and the scalar trait
//! that lets the map code run over either exact or floating arithmetic.

pub mod exact;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod scalar;

pub use exact::{Exact, NumberField};
pub use poly::{rat, Poly};
pub use scalar::Scalar;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural log of a big unsigned integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Format a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Serializers writing big integers as decimal strings.
pub mod ser {
    use serde::ser::{SerializeSeq, Serializer};
    use std::fmt::Display;

    pub fn decimals<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }
}
