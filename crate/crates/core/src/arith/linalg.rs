//! Exact characteristic polynomials of 0/1 (and small integer) matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Poly;

/// Coefficients of `det(I - zA)`, lowest degree first, for an adjacency list.
///
/// Faddeev–LeVerrier: `M_k = A M_{k-1} + a_{k-1} I`, `a_k = -tr(A M_k) / k`, with the
/// product computed by row sums over successor lists.
pub fn det_i_minus_za(arrows: &[Vec<usize>]) -> Vec<BigInt> {
    let n = arrows.len();
    let mut a = vec![BigInt::from(1)];
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + a_{k-1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for (i, succ) in arrows.iter().enumerate() {
            for &s in succ {
                for j in 0..n {
                    if !m[s][j].is_zero() {
                        next[i][j] += &m[s][j];
                    }
                }
            }
            next[i][i] += &a[k - 1];
        }
        // tr(A M_k)
        let mut tr = BigInt::zero();
        for (i, succ) in arrows.iter().enumerate() {
            for &s in succ {
                tr += &next[s][i];
            }
        }
        a.push(-tr / BigInt::from(k));
        m = next;
    }
    while a.len() > 1 && a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn det_poly(arrows: &[Vec<usize>]) -> Poly {
    Poly::from_bigints(&det_i_minus_za(arrows))
}

/// Adjacency list with the vertices in `drop` removed (and renumbered).
pub fn remove_vertices(arrows: &[Vec<usize>], drop: &[bool]) -> Vec<Vec<usize>> {
    let mut idx = vec![usize::MAX; arrows.len()];
    let mut k = 0;
    for v in 0..arrows.len() {
        if !drop[v] {
            idx[v] = k;
            k += 1;
        }
    }
    (0..arrows.len())
        .filter(|&v| !drop[v])
        .map(|v| arrows[v].iter().filter(|&&t| !drop[t]).map(|&t| idx[t]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_determinant() {
        let d = det_i_minus_za(&[vec![0, 1], vec![0]]);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]);
    }

    #[test]
    fn three_cycle() {
        let d = det_i_minus_za(&[vec![1], vec![2], vec![0]]);
        assert_eq!(d, vec![BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::from(-1)]);
    }
}
