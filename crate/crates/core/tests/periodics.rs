use kneadlab::diagram::build_diagram_pmm;
use kneadlab::interval_map::builtin::{beta, beta_golden, full, tent};
use kneadlab::kneading::kneading;
use kneadlab::periodics::{
    census_diagram, census_direct, discrepancy, equidistribution, exact_period_orbits, max_measure_inventory, zeta,
    DEFAULT_BUDGET,
};
use kneadlab::shift::ShiftGraph;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Number of `x ∈ [0,1]` with `T^n x = x` for the tent map of slope `s`, by exact lap iteration.
fn tent_fixed_points(s: &BigRational, n: usize) -> u64 {
    let half = r(1, 2);
    let one = r(1, 1);
    let t = |x: &BigRational| if *x <= half { s * x } else { s * (&one - x) };
    // Laps of T^k as (a, b, T^k a, T^k b).
    let mut laps = vec![(r(0, 1), one.clone(), r(0, 1), one.clone())];
    for _ in 0..n {
        let mut next = Vec::new();
        for (a, b, fa, fb) in laps {
            let (lo, hi) = if fa < fb { (&fa, &fb) } else { (&fb, &fa) };
            if *lo < half && half < *hi {
                let m = &a + (&b - &a) * (&half - &fa) / (&fb - &fa);
                next.push((a, m.clone(), t(&fa), t(&half)));
                next.push((m, b, t(&half), t(&fb)));
            } else {
                next.push((a, b, t(&fa), t(&fb)));
            }
        }
        laps = next;
    }
    let mut count = 0;
    for (a, b, fa, fb) in &laps {
        let ga = fa - a;
        let gb = fb - b;
        if ga.is_zero() || (ga.is_positive() && gb.is_negative()) || (ga.is_negative() && gb.is_positive()) {
            count += 1;
        }
    }
    count
}

#[test]
fn direct_census_matches_real_fixed_points_of_tents() {
    for (name, s) in [("3/2", r(3, 2)), ("9/5", r(9, 5)), ("2", r(2, 1))] {
        let kd = kneading(&tent(name).unwrap(), 256);
        let c = census_direct(&kd, 10, DEFAULT_BUDGET).unwrap();
        assert!(c.undecidable.iter().all(|&u| u == 0));
        let want: Vec<u64> = (1..=10).map(|n| tent_fixed_points(&s, n)).collect();
        assert_eq!(c.fix_u64(), want, "tent {name}");
    }
}

#[test]
fn methods_agree_on_complete_diagrams() {
    for m in [beta("2").unwrap(), beta_golden(), tent("2").unwrap(), full(3).unwrap()] {
        let kd = kneading(&m, 256);
        let d = build_diagram_pmm(&kd, 64).unwrap().diagram;
        let a = census_direct(&kd, 9, DEFAULT_BUDGET).unwrap();
        let b = census_diagram(&d, 9).unwrap();
        assert_eq!(a.fix, b.fix, "{}", m.name());
        let disc = discrepancy(&kd, &d, 9, DEFAULT_BUDGET).unwrap();
        assert!(disc.levels.iter().all(|l| l.only_direct.is_empty() && l.only_diagram.is_empty()));
    }
}

#[test]
fn golden_orbits_and_zeta() {
    let d = build_diagram_pmm(&kneading(&beta_golden(), 256), 16).unwrap().diagram;
    let c = census_diagram(&d, 12).unwrap();
    // Lucas numbers, and the necklace counts of the golden shift.
    assert_eq!(c.fix_u64(), vec![1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199, 322]);
    let orbits: Vec<u64> = exact_period_orbits(&c.fix).unwrap().iter().map(|x| x.to_u64().unwrap()).collect();
    assert_eq!(&orbits[..8], &[1, 1, 1, 1, 2, 2, 4, 5]);
    let z = zeta(&c).unwrap();
    let fib: Vec<i64> = z.coeffs.iter().map(|x| x.to_i64().unwrap()).collect();
    assert_eq!(&fib[..8], &[1, 1, 2, 3, 5, 8, 13, 21]);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((z.radius_estimate - 1.0 / phi).abs() < 1e-3);
}

#[test]
fn orbit_counts_are_integral() {
    let fix: Vec<BigUint> = (1..=12u32).map(|n| BigUint::from(2u32).pow(n)).collect();
    let o = exact_period_orbits(&fix).unwrap();
    assert_eq!(o[11].to_u64(), Some(335));
    let mut bad = fix.clone();
    bad[1] = BigUint::from(5u32);
    assert!(exact_period_orbits(&bad).is_none());
}

#[test]
fn inventory_of_two_equal_components() {
    let g = ShiftGraph::golden().disjoint_union(&ShiftGraph::golden());
    let inv = max_measure_inventory(&g, 2).unwrap();
    assert_eq!(inv.max_count, 2);
    assert!(inv.components.iter().filter(|c| c.maximal).count() == 2);
}

#[test]
fn equidistribution_on_fixtures() {
    let b2 = build_diagram_pmm(&kneading(&beta("2").unwrap(), 256), 16).unwrap().diagram;
    assert!(equidistribution(&b2, 16, 4).unwrap().max_deviation <= 0.02);
    let g = build_diagram_pmm(&kneading(&beta_golden(), 256), 16).unwrap().diagram;
    let e = equidistribution(&g, 20, 3).unwrap();
    assert!(e.max_deviation <= 0.05, "{}", e.summary());
    assert!(equidistribution(&g, 2, 3).is_err());
}
