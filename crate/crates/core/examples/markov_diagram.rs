//! Markov diagrams from kneading data: a finite one, and a truncated one exported as DOT.

use kneadlab::diagram::{build_diagram_pmm, export};
use kneadlab::interval_map::builtin::{beta_golden, tent};
use kneadlab::kneading::kneading;
use kneadlab::shift::{entropy, ShiftGraph};

fn main() {
    let kd = kneading(&beta_golden(), 256);
    let p = build_diagram_pmm(&kd, 32).unwrap();
    let d = &p.diagram;
    println!("golden: {} vertices, {} arrows, complete = {}", d.n_vertices(), d.n_arrows(), d.complete);
    for v in 0..d.n_vertices() {
        let targets: Vec<String> = d.arrows[v].iter().map(|&t| d.vertex_name(t)).collect();
        println!("  {} -> {}", d.vertex_name(v), targets.join(", "));
    }
    println!("{}", export::to_dot(d));

    let kd = kneading(&tent("3/2").unwrap(), 256);
    let p = build_diagram_pmm(&kd, 12).unwrap();
    let g = ShiftGraph::from_diagram(&p.diagram);
    let h = entropy(&g, None).unwrap();
    println!(
        "tent 3/2 at depth cap 12: {} vertices, complete = {}, entropy of the truncation {:.4} (log 1.5 = {:.4})",
        p.diagram.n_vertices(),
        p.diagram.complete,
        h.h,
        1.5f64.ln()
    );
}
