mod common;

use common::{det_i_minus_za, graph, nalgebra_entropy, random_irreducible, reciprocal_series, rng};
use kneadlab::diagram::build_diagram_pmm;
use kneadlab::interval_map::builtin::{beta_golden, tent};
use kneadlab::kneading::kneading;
use kneadlab::shift::{
    classify, entropy, entropy_at_infinity, local_zeta, markov_entropy, max_measure, prefix_exhaustion,
    return_series, rokhlin_entropy, semi_local_zeta, spr_convergence, Certainty, ShiftGraph, VjClass,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[test]
fn perron_matches_eigensolve_and_measure_is_stationary() {
    let mut r = rng(11);
    for _ in 0..40 {
        let m = random_irreducible(&mut r, 7);
        let g = graph(&m);
        let h = entropy(&g, None).unwrap().h;
        assert!((h - nalgebra_entropy(&m)).abs() < 1e-9, "{m:?}");
        let mu = max_measure(&g, None).unwrap();
        assert!(mu.measure.row_defect() < 1e-12);
        assert!(mu.measure.stationarity_defect() < 1e-12);
        assert!((markov_entropy(&mu.measure) - h).abs() < 1e-9);
    }
}

#[test]
fn return_series_renewal_and_gf() {
    let mut r = rng(12);
    for _ in 0..20 {
        let m = random_irreducible(&mut r, 6);
        let g = graph(&m);
        let s = return_series(&g, 0, 24).unwrap();
        assert!(s.renewal_holds());
        let gf = s.exact_gf.as_ref().unwrap();
        let (f, l) = kneadlab::shift::returns::gf_coefficients(gf, 24);
        for k in 1..=24 {
            assert_eq!(f[k], BigRational::from_integer(s.f[k].clone().into()));
            assert_eq!(l[k], BigRational::from_integer(s.l[k].clone().into()));
        }
        let c = classify(&s, (-entropy(&g, None).unwrap().h).exp(), None).unwrap();
        assert_eq!((c.class, c.certainty), (VjClass::Spr, Certainty::Certified), "{m:?}");
    }
}

#[test]
fn ladder_returns_are_catalan() {
    let g = ShiftGraph::ladder(40);
    let s = return_series(&g, 0, 30).unwrap();
    // f_{2k} = C_{k-1}; odd first returns vanish.
    let mut cat = vec![BigUint::from(1u32)];
    for k in 0..14u32 {
        let next = &cat[k as usize] * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
        cat.push(next);
    }
    for k in 1..=15 {
        assert_eq!(s.f[2 * k], cat[k - 1], "k={k}");
        assert_eq!(s.f[2 * k - 1], BigUint::from(0u32));
    }
    let c = classify(&s, 0.5, Some(&BigRational::new(1.into(), 2.into()))).unwrap();
    assert_eq!((c.class, c.certainty), (VjClass::Transient, Certainty::DepthLimited));
}

#[test]
fn zeta_identities_on_random_graphs() {
    let mut r = rng(13);
    for _ in 0..15 {
        let m = random_irreducible(&mut r, 5);
        let g = graph(&m);
        let z = local_zeta(&g, 0, 12).unwrap();
        assert!(z.periodic_identity);
        let all: Vec<usize> = (0..g.n()).collect();
        let s = semi_local_zeta(&g, &all, 12).unwrap();
        let want = reciprocal_series(&det_i_minus_za(&m), 12);
        let got: Vec<i128> = s.coeffs.iter().map(|c| c.to_i128().unwrap()).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn golden_spr_rate() {
    let g = ShiftGraph::golden();
    let info = g.scc();
    let e = kneadlab::shift::eigen(&g, &info, 0).unwrap();
    let fit = spr_convergence(&g, &e, 0, 0, 40);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((fit.rate + 2.0 * phi.ln()).abs() < 0.05);
}

#[test]
fn rokhlin_entropy_of_tent_measures() {
    for (m, h) in [(tent("2").unwrap(), 2f64.ln()), (beta_golden(), ((1.0 + 5f64.sqrt()) / 2.0).ln())] {
        let d = build_diagram_pmm(&kneading(&m, 256), 32).unwrap().diagram;
        let g = ShiftGraph::from_diagram(&d);
        let mu = max_measure(&g, None).unwrap();
        assert!((rokhlin_entropy(&m, &g, &mu.measure).unwrap() - h).abs() < 1e-9, "{}", m.name());
    }
}

#[test]
fn ladder_entropy_at_infinity() {
    let g = ShiftGraph::ladder(30);
    let e = entropy_at_infinity(&g, &prefix_exhaustion(&g, 20)).unwrap();
    assert!(e.residual.iter().all(|&x| x <= 2f64.ln() + 1e-9));
    assert!(e.residual.last().unwrap() > &0.5);
}
