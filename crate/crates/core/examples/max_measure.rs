//! Measure of maximal entropy on a diagram and its Rokhlin entropy.

use kneadlab::diagram::build_diagram_pmm;
use kneadlab::interval_map::builtin::beta_golden;
use kneadlab::kneading::kneading;
use kneadlab::shift::{markov_entropy, max_measure, rokhlin_entropy, ShiftGraph};

fn main() {
    let m = beta_golden();
    let d = build_diagram_pmm(&kneading(&m, 256), 32).unwrap().diagram;
    let g = ShiftGraph::from_diagram(&d);
    let mu = max_measure(&g, None).unwrap();
    println!("lambda = {:.12} (golden ratio)", mu.lambda);
    for v in 0..g.n() {
        let row: Vec<String> = mu.measure.transitions[v].iter().map(|(t, p)| format!("{}:{p:.6}", g.names[*t])).collect();
        println!("  pi[{}] = {:.6}  transitions {}", g.names[v], mu.measure.pi[v], row.join(" "));
    }
    println!("chain entropy   {:.12}", markov_entropy(&mu.measure));
    println!("Rokhlin entropy {:.12}", rokhlin_entropy(&m, &g, &mu.measure).unwrap());
    let w = mu.cylinder_weight(&g, &[0, 0, 1]);
    println!("weight of the path {} {} {}: {w:.6}", g.names[0], g.names[0], g.names[1]);
}
