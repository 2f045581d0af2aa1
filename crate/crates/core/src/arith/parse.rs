//! Parsing of numeric literals: integers, `p/q`, decimals, `phi`, `sqrt(k)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::exact::{Exact, NumberField};
use crate::error::ArithError;

pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let q = BigRational::new(digits, den);
    Ok(if neg { -q } else { q })
}

/// Parse an exact constant: a sum of terms `r`, `r*X` or `X/d` where `X` is `phi` or `sqrt(k)`.
pub fn parse_exact(s: &str) -> Result<Exact, ArithError> {
    let t: String = s.trim().to_ascii_lowercase().chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ArithError::Parse(s.to_string()));
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, c) in t.chars().enumerate() {
        let prev = cur.chars().last();
        if (c == '+' || c == '-') && i > 0 && !matches!(prev, Some('*') | Some('/') | Some('(') | None) {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    let mut acc = Exact::rational(0, 1);
    let mut irrational: Option<Exact> = None;
    for term in terms {
        let v = parse_term(&term).map_err(|_| ArithError::Parse(s.to_string()))?;
        if v.as_rational().is_none() {
            if let Some(prev) = &irrational {
                if prev.field().minpoly() != v.field().minpoly() {
                    return Err(ArithError::FieldMismatch(
                        prev.field().name().into(),
                        v.field().name().into(),
                    ));
                }
            }
            irrational = Some(v.clone());
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}

fn parse_atom(a: &str) -> Result<Option<Exact>, ArithError> {
    if a == "phi" || a == "golden" {
        return Ok(Some(NumberField::golden().generator()));
    }
    if let Some(inner) = a.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let k: i64 = inner.parse().map_err(|_| ArithError::Parse(a.to_string()))?;
        let r = (k as f64).sqrt().round() as i64;
        if r * r == k {
            return Ok(Some(Exact::rational(r, 1)));
        }
        return Ok(Some(NumberField::sqrt(k)?.generator()));
    }
    Ok(None)
}

fn parse_term(term: &str) -> Result<Exact, ArithError> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let v = if let Some((c, a)) = body.split_once('*') {
        let atom = parse_atom(a)?.ok_or_else(|| ArithError::Parse(term.to_string()))?;
        let c = parse_rational(c)?;
        atom.mul(&Exact::from_rational(Exact::rational(0, 1).field(), c))
    } else if let Some(atom) = parse_atom(body)? {
        atom
    } else if let Some((a, d)) = body.rsplit_once('/').filter(|(a, _)| a.contains('(') || *a == "phi") {
        let atom = parse_atom(a)?.ok_or_else(|| ArithError::Parse(term.to_string()))?;
        let d = parse_rational(d)?;
        atom.div(&Exact::from_rational(Exact::rational(0, 1).field(), d))?
    } else {
        Exact::from_rational(Exact::rational(0, 1).field(), parse_rational(body)?)
    };
    Ok(if neg { v.neg() } else { v })
}

pub fn parse_f64(s: &str) -> Result<f64, ArithError> {
    let t = s.trim().to_ascii_lowercase();
    if t == "phi" || t == "golden" {
        return Ok((1.0 + 5f64.sqrt()) / 2.0);
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let k: f64 = inner.trim().parse().map_err(|_| ArithError::Parse(s.to_string()))?;
        return Ok(k.sqrt());
    }
    if t.contains('/') {
        let q = parse_rational(&t)?;
        return Ok(num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN));
    }
    t.parse::<f64>().map_err(|_| ArithError::Parse(s.to_string()))
}

/// `p/q` rendering with integers left bare.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
