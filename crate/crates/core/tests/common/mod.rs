#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kneadlab::shift::ShiftGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn strongly_connected(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    let reach = |fwd: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let e = if fwd { m[u][v] } else { m[v][u] };
                if e != 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    let has_arrow = m.iter().any(|r| r.iter().any(|&x| x != 0));
    has_arrow && reach(true) && reach(false)
}

/// Random strongly connected 0/1 matrix of size `1..=max_n`.
pub fn random_irreducible(r: &mut impl Rng, max_n: usize) -> Vec<Vec<u8>> {
    loop {
        let n = r.random_range(1..=max_n);
        let p = r.random_range(0.25..0.6);
        let m: Vec<Vec<u8>> = (0..n).map(|_| (0..n).map(|_| r.random_bool(p) as u8).collect()).collect();
        if strongly_connected(&m) {
            return m;
        }
    }
}

/// Natural log of the spectral radius, from a dense eigensolve.
pub fn nalgebra_entropy(m: &[Vec<u8>]) -> f64 {
    let n = m.len();
    let a = DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
    let rho = a.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
    rho.ln()
}

/// Coefficients of `det(I - zA)` by Faddeev–LeVerrier in integer arithmetic.
pub fn det_i_minus_za(m: &[Vec<u8>]) -> Vec<i128> {
    let n = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
    };
    let mut c = vec![1i128];
    let mut mk: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for k in 1..=n {
        let am = mul(&a, &mk);
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(tr % k as i128, 0);
        let ck = -tr / k as i128;
        c.push(ck);
        mk = am;
        for i in 0..n {
            mk[i][i] += ck;
        }
    }
    c
}

/// First `terms + 1` coefficients of `1/p(z)` with `p(0) = 1`.
pub fn reciprocal_series(p: &[i128], terms: usize) -> Vec<i128> {
    let mut s = vec![0i128; terms + 1];
    s[0] = 1;
    for k in 1..=terms {
        s[k] = -(1..=k.min(p.len() - 1)).map(|j| p[j] * s[k - j]).sum::<i128>();
    }
    s
}

pub fn graph(m: &[Vec<u8>]) -> ShiftGraph {
    ShiftGraph::from_matrix(m)
}
