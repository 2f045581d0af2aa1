//! Kneading sequences of a few maps and admissibility of sample words.

use kneadlab::interval_map::builtin::{beta, beta_golden, tent};
use kneadlab::kneading::kneading;
use kneadlab::symbols::parse_seq;

fn main() {
    for m in [tent("2").unwrap(), tent("3/2").unwrap(), beta_golden(), beta("5/2").unwrap()] {
        let kd = kneading(&m, 64);
        println!("{} ({} branches, exact data: {})", m.name(), m.n_branches(), kd.is_exact());
        for s in kd.render() {
            println!("  {s}");
        }
    }

    let golden = kneading(&beta_golden(), 64);
    for w in ["(0)", "(01)", "(1)", "0(011)"] {
        let s = parse_seq(w, &golden.labels).unwrap();
        println!("golden: {w} admissible? {:?}", golden.is_admissible(&s));
    }
}
