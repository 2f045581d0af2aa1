//! Horseshoe certificates as lower bounds for entropy.

use kneadlab::interval_map::builtin::{full, tent};
use kneadlab::kneading::{entropy_lap, find_horseshoe, verify_horseshoe};

fn main() {
    for m in [tent("2").unwrap(), full(3).unwrap(), tent("3/2").unwrap()] {
        let upper = entropy_lap(&m, 20).unwrap().upper_bound;
        println!("{}: lap upper bound {upper:.4}", m.name());
        for t in 1..=5 {
            match find_horseshoe(&m, t, 64) {
                Some(h) => println!(
                    "  T <= {t}: {} intervals under f^{}, entropy {:.4}, verified {}",
                    h.view().intervals.len(),
                    h.view().t,
                    h.entropy,
                    verify_horseshoe(&m, &h)
                ),
                None => println!("  T <= {t}: none"),
            }
        }
    }
}
