//! Entropy by lap counting and by length growth, compared with log s on constant-slope tents.

use kneadlab::arith::Exact;
use kneadlab::interval_map::builtin::{beta_golden, tent_exact};
use kneadlab::kneading::{entropy_lap, lap_numbers, length_growth};

fn main() {
    let golden = beta_golden();
    let laps = lap_numbers(&golden, 12, 1_000_000).unwrap();
    println!("golden lap numbers: {}", laps.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));

    println!("{:>5} {:>8} {:>8} {:>8} {:>8}", "s", "lap", "upper", "length", "log s");
    for k in [12, 14, 16, 18, 20] {
        let m = tent_exact(Exact::rational(k, 10)).unwrap();
        let lap = entropy_lap(&m, 20).unwrap();
        let len = length_growth(&m, 20).unwrap();
        let s = k as f64 / 10.0;
        println!("{s:>5.1} {:>8.4} {:>8.4} {:>8.4} {:>8.4}", lap.estimate, lap.upper_bound, len.estimate, s.ln());
    }
}
