//! Local, semi-local and Artin–Mazur zeta functions.

use kneadlab::diagram::build_diagram_pmm;
use kneadlab::interval_map::builtin::full;
use kneadlab::kneading::kneading;
use kneadlab::periodics::{census_diagram, zeta};
use kneadlab::shift::{local_zeta, semi_local_zeta, ShiftGraph};

fn show<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() {
    let g = ShiftGraph::golden();
    let z = local_zeta(&g, 0, 12).unwrap();
    let e = z.exact.as_ref().unwrap();
    println!("local zeta at 0: {}", show(&z.coeffs));
    println!("  = ({}) / ({}), pole {:.9}", show(&e.num), show(&e.den), z.pole.unwrap());

    let s = semi_local_zeta(&g, &[1], 10).unwrap();
    println!("semi-local zeta over {{1}}: {}", show(&s.coeffs));

    let d = build_diagram_pmm(&kneading(&full(3).unwrap(), 256), 16).unwrap().diagram;
    let census = census_diagram(&d, 8).unwrap();
    let zt = zeta(&census).unwrap();
    println!("full:3 fix: {}", show(&census.fix));
    println!("full:3 zeta: {} (radius estimate {:.4})", show(&zt.coeffs), zt.radius_estimate);
}
