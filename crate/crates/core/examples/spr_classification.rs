//! Vere-Jones classification: a certified finite graph and a depth-limited ladder.

use kneadlab::shift::{classify, entropy, partial_sums_exact, return_series, ShiftGraph};
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn main() {
    let g = ShiftGraph::golden();
    let s = return_series(&g, 0, 20).unwrap();
    let r = (-entropy(&g, None).unwrap().h).exp();
    let c = classify(&s, r, None).unwrap();
    println!("golden vertex 0: {:?} / {:?}, f(R) = {:.12}", c.class, c.certainty, c.f_at_radius);
    println!("  first returns: {:?}", s.f.iter().map(|x| x.to_string()).collect::<Vec<_>>());

    let ladder = ShiftGraph::ladder(64);
    let s = return_series(&ladder, 0, 60).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let c = classify(&s, 0.5, Some(&half)).unwrap();
    println!("ladder vertex 0: {:?} / {:?}", c.class, c.certainty);
    let sums = partial_sums_exact(&s, &half, 61);
    for n in [10, 20, 40, 60] {
        println!("  sum of f_k 2^-k up to k = {n}: {:.6}", sums[n].to_f64().unwrap());
    }
}
