//! Complex roots of real polynomials by the Aberth–Ehrlich iteration.

use num_complex::Complex64;

/// All complex roots of `Σ c_k z^k` (lowest degree first); `None` if the iteration stalls.
pub fn complex_roots(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let lead = c[n];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[n], 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            d = d * x + p;
            p = p * x + c[k];
        }
        (p, d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, d) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-15 {
            return Some(z);
        }
    }
    let ok = z.iter().all(|&x| eval(x).0.norm() < 1e-6 * (1.0 + x.norm().powi(n as i32)));
    ok.then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_roots() {
        let mut r: Vec<f64> = complex_roots(&[1.0, -1.0, -1.0]).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] + 1.618_033_988_749_895).abs() < 1e-12);
        assert!((r[1] - 0.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn unit_roots() {
        let r = complex_roots(&[-1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(r.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
    }
}
