//! Built-in map families.

use crate::arith::parse::{parse_exact, parse_f64};
use crate::arith::{Exact, NumberField};
use crate::error::MapError;

use super::{Branch, ExactMap, IntervalMap, NumericMap};

fn q(n: i64, d: i64) -> Exact {
    Exact::rational(n, d)
}

fn lr() -> Vec<String> {
    vec!["L".into(), "R".into()]
}

/// Tent map `s·min(x, 1-x)` on [0,1], 0 < s <= 2.
pub fn tent(s: &str) -> Result<ExactMap, MapError> {
    tent_exact(parse_exact(s)?).map(|m| m.with_name(&format!("tent:{s}")))
}

pub fn tent_exact(s: Exact) -> Result<ExactMap, MapError> {
    let b = vec![
        Branch::affine(q(0, 1), q(1, 2), s.clone(), q(0, 1)),
        Branch::affine(q(1, 2), q(1, 1), s.neg(), s.clone()),
    ];
    Ok(IntervalMap::new((q(0, 1), q(1, 1)), b)?.with_labels(lr()))
}

/// Tent map over floating point.
pub fn tent_numeric(s: f64) -> Result<NumericMap, MapError> {
    let b = vec![Branch::affine(0.0, 0.5, s, 0.0), Branch::affine(0.5, 1.0, -s, s)];
    Ok(IntervalMap::new((0.0, 1.0), b)?.with_labels(lr()).with_name(&format!("tent:{s}")))
}

/// β-transformation `βx mod 1` on [0,1], β > 1.
pub fn beta(b: &str) -> Result<ExactMap, MapError> {
    beta_exact(parse_exact(b)?).map(|m| m.with_name(&format!("beta:{b}")))
}

pub fn beta_exact(b: Exact) -> Result<ExactMap, MapError> {
    let one = q(1, 1);
    if b <= one {
        return Err(MapError::Spec(format!("beta parameter must exceed 1, got {b}")));
    }
    let mut branches = Vec::new();
    let mut k = 0i64;
    loop {
        let kk = q(k, 1);
        if kk >= b {
            break;
        }
        let lo = kk.div(&b)?;
        let next = q(k + 1, 1).div(&b)?;
        let hi = if next < one { next } else { one.clone() };
        branches.push(Branch::affine(lo, hi, b.clone(), kk.neg()));
        k += 1;
    }
    IntervalMap::new((q(0, 1), one), branches)
}

/// β-transformation at the golden mean.
pub fn beta_golden() -> ExactMap {
    beta_exact(NumberField::golden().generator()).expect("golden beta map").with_name("beta:phi")
}

/// Continuous zigzag with `n` full branches of slope ±n.
pub fn full(n: usize) -> Result<ExactMap, MapError> {
    if n == 0 {
        return Err(MapError::NoBranches);
    }
    let nn = n as i64;
    let mut branches = Vec::new();
    for k in 0..nn {
        let (lo, hi) = (q(k, nn), q(k + 1, nn));
        let b = if k % 2 == 0 {
            Branch::affine(lo, hi, q(nn, 1), q(-k, 1))
        } else {
            Branch::affine(lo, hi, q(-nn, 1), q(k + 1, 1))
        };
        branches.push(b);
    }
    Ok(IntervalMap::new((q(0, 1), q(1, 1)), branches)?.with_name(&format!("full:{n}")))
}

/// The identity on [0,1] as a single increasing branch.
pub fn identity() -> ExactMap {
    IntervalMap::new((q(0, 1), q(1, 1)), vec![Branch::affine(q(0, 1), q(1, 1), q(1, 1), q(0, 1))])
        .expect("identity")
        .with_name("identity")
}

/// Quadratic family `4t·x(1-x)`, numeric only.
pub fn quadratic(t: &str) -> Result<NumericMap, MapError> {
    let t = parse_f64(t)?;
    if !(t > 0.0 && t <= 1.0) {
        return Err(MapError::Spec(format!("quadratic parameter must lie in (0,1], got {t}")));
    }
    let b = vec![Branch::quadratic(0.0, 0.5, t), Branch::quadratic(0.5, 1.0, t)];
    Ok(IntervalMap::new((0.0, 1.0), b)?.with_labels(lr()).with_name(&format!("quadratic:{t}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_partition() {
        let m = beta_golden();
        let p = m.validate().unwrap();
        assert_eq!(p.orientations, vec![1, 1]);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!((p.endpoints_f64[1] - inv_phi).abs() < 1e-15);
    }

    #[test]
    fn tent_partition() {
        let p = tent("2").unwrap().validate().unwrap();
        assert_eq!(p.orientations, vec![1, -1]);
        assert!(tent("5/2").is_err());
    }

    #[test]
    fn beta_branch_counts() {
        assert_eq!(beta("2").unwrap().n_branches(), 2);
        assert_eq!(beta("5/2").unwrap().n_branches(), 3);
        assert_eq!(full(3).unwrap().signs(), vec![1, -1, 1]);
    }

    #[test]
    fn quadratic_validates() {
        let m = quadratic("1").unwrap();
        assert_eq!(m.signs(), vec![1, -1]);
    }
}
