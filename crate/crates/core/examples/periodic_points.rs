//! Periodic-point census by admissibility and by diagram loops, with orbit counts.

use kneadlab::diagram::build_diagram_pmm;
use kneadlab::interval_map::builtin::{beta_golden, tent};
use kneadlab::kneading::kneading;
use kneadlab::periodics::{census_diagram, census_direct, discrepancy, exact_period_orbits, DEFAULT_BUDGET};

fn main() {
    let kd = kneading(&beta_golden(), 256);
    let d = build_diagram_pmm(&kd, 32).unwrap().diagram;
    let direct = census_direct(&kd, 10, DEFAULT_BUDGET).unwrap();
    let loops = census_diagram(&d, 10).unwrap();
    println!("golden direct : {:?}", direct.fix_u64());
    println!("golden loops  : {:?}", loops.fix_u64());
    let orbits = exact_period_orbits(&direct.fix).unwrap();
    println!("orbits of exact period n: {:?}", orbits.iter().map(|o| o.to_string()).collect::<Vec<_>>());
    let disc = discrepancy(&kd, &d, 8, DEFAULT_BUDGET).unwrap();
    println!("orbits seen by only one method: {}", disc.orbits.len());

    let kd = kneading(&tent("3/2").unwrap(), 256);
    print!("{}", census_direct(&kd, 12, DEFAULT_BUDGET).unwrap().to_csv());
}
