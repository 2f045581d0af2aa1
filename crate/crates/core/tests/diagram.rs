use kneadlab::diagram::{
    build_diagram_generic, build_diagram_pmm, export, unimodal_structure, ForbiddenWords, KneadingOracle,
    SftOracle, DEFAULT_DEPTH_CAP,
};
use kneadlab::interval_map::builtin::{beta, beta_golden, full, tent};
use kneadlab::interval_map::ExactMap;
use kneadlab::kneading::kneading;
use kneadlab::symbols::Verdict;

fn complete_fixtures() -> Vec<ExactMap> {
    vec![beta("2").unwrap(), beta_golden(), tent("2").unwrap(), full(3).unwrap()]
}

#[test]
fn pmm_matches_generic_closure() {
    for m in complete_fixtures() {
        let kd = kneading(&m, 256);
        let p = build_diagram_pmm(&kd, DEFAULT_DEPTH_CAP).unwrap();
        let g = build_diagram_generic(&KneadingOracle::new(kd.clone()), DEFAULT_DEPTH_CAP, 128).unwrap();
        assert!(p.diagram.complete, "{}", m.name());
        assert_eq!(p.diagram.word_set(), g.word_set(), "{}", m.name());
        assert_eq!(p.diagram.arrow_words(), g.arrow_words(), "{}", m.name());
        assert_eq!(p.cut_arrow_failures, 0);
    }
}

#[test]
fn beta2_is_complete_graph_on_two_letters() {
    let kd = kneading(&beta("2").unwrap(), 256);
    let d = build_diagram_pmm(&kd, 16).unwrap().diagram;
    assert_eq!(d.n_vertices(), 2);
    assert_eq!(d.n_arrows(), 4);
    assert_eq!(d.periods, vec![1]);
}

#[test]
fn golden_matches_its_sft() {
    let kd = kneading(&beta_golden(), 256);
    let d = build_diagram_pmm(&kd, 16).unwrap().diagram;
    let sft = build_diagram_generic(&SftOracle::new(vec![vec![1, 1], vec![1, 0]]), 16, 32).unwrap();
    assert_eq!(d.n_vertices(), 2);
    assert_eq!(d.arrow_words(), sft.arrow_words());
}

#[test]
fn closed_paths_project_to_admissible_sequences() {
    for m in complete_fixtures() {
        let kd = kneading(&m, 256);
        let d = build_diagram_pmm(&kd, DEFAULT_DEPTH_CAP).unwrap().diagram;
        for u in 0..d.n_vertices() {
            for &v in &d.arrows[u] {
                for &w in &d.arrows[v] {
                    if d.has_arrow(w, u) {
                        let s = d.project(&[u, v, w, u]).unwrap();
                        assert_eq!(kd.is_admissible(&s), Verdict::Yes, "{}", m.name());
                    }
                }
            }
        }
        assert!(d.project(&[0, d.n_vertices()]).is_err());
    }
}

#[test]
fn even_shift_grows_a_ray() {
    let cap = 12;
    let d = build_diagram_generic(&ForbiddenWords::even_shift(64), cap, 16).unwrap();
    assert!(!d.complete);
    assert!(d.boundary.iter().any(|&b| b));
    assert!(d.vertices.iter().any(|w| w.len() == cap));
    // Probing beyond the listed forbidden words cannot separate follower sets.
    assert!(build_diagram_generic(&ForbiddenWords::even_shift(8), cap, 16).is_err());
}

#[test]
fn non_beta_tents_truncate_at_the_cap() {
    let kd = kneading(&tent("3/2").unwrap(), 256);
    let p = build_diagram_pmm(&kd, 24).unwrap();
    assert!(!p.diagram.complete);
    let u = unimodal_structure(&kd, 24).unwrap();
    assert!(u.recursion_holds);
}

#[test]
fn exports_are_well_formed() {
    let kd = kneading(&beta_golden(), 256);
    let d = build_diagram_pmm(&kd, 16).unwrap().diagram;
    let dot = export::to_dot(&d);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), d.n_arrows());
    let j = export::to_json(&d);
    assert_eq!(j["vertices"].as_array().unwrap().len(), d.n_vertices());
}
