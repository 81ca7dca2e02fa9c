mod common;

use mmph::coord::verify_coordinatization;
use mmph::generation::*;
use mmph::solver::{filter_full_edge_no_m1, is_binary, is_critical, FullEdgeFilter};
use mmph::structure::{strip_edges, Strip};
use mmph::Mmph;

fn twenty_ten() -> Mmph {
    strip_edges(&common::mmph("4d-24-24"), &Strip::Random { count: 14, seed: 1 }).unwrap()
}

fn check_outputs(outputs: &[Mmph], master_id: &str) {
    let c = common::coords(master_id);
    for h in outputs {
        assert!(!is_binary(h));
        assert!(is_critical(h));
        let n = h.dimension();
        assert!(h.edges().iter().any(|e| e.len() < n));
        assert!(h.edges().iter().any(|e| e.len() == n));
        assert!(verify_coordinatization(h, &c).unwrap().passed);
    }
}

#[test]
fn m1_on_a_peres_strip_finds_the_four_three() {
    let outputs = run_m1(&twenty_ten(), 1, 300, Filters::default()).unwrap();
    assert!(!outputs.is_empty());
    check_outputs(&outputs, "4d-24-24");
    let d = collect_distribution(&outputs);
    assert_eq!(d.min_l_cell().map(|(k, l, _)| (k, l)), Some((4, 3)));
}

#[test]
fn m2_grows_then_strips() {
    let peres = common::mmph("4d-24-24");
    let base = strip_edges(&peres, &Strip::Random { count: 14, seed: 5 }).unwrap();
    let outputs = run_m2(&base, &peres, 2, 200, Filters::default()).unwrap();
    assert!(!outputs.is_empty());
    check_outputs(&outputs, "4d-24-24");
}

#[test]
fn m2_with_its_own_pool_is_m1() {
    let base = twenty_ten();
    let mut m1 = GenerationConfig::new(Method::M1, base.clone(), 9, 60);
    m1.max_strip = 9;
    let mut m2 = GenerationConfig::new(Method::M2, base.clone(), 9, 60);
    m2.max_strip = 9;
    m2.addition_pool = Some(base);
    assert_eq!(generate(&m1).unwrap().outcomes, generate(&m2).unwrap().outcomes);
}

#[test]
fn m3_batch_on_seven_dim_master() {
    let mut cfg = GenerationConfig::new(Method::M3, common::mmph("7d-34-14"), 4, 200);
    cfg.m3_mode = M3Mode::Batch { max_delete: 20 };
    let h = generate(&cfg).unwrap();
    assert!(h.summary.emitted > 0);
    assert_eq!(h.summary.emitted, h.outputs.len());
    check_outputs(&h.outputs, "7d-34-14");
    assert_eq!(generate(&cfg).unwrap().outputs, h.outputs);
}

#[test]
fn m3_first_hit_stops_at_the_first_non_ks_set() {
    let outputs = run_m3(&common::mmph("7d-34-14"), 0, 20, M3Mode::FirstHit, Filters::default()).unwrap();
    assert_eq!(outputs.len(), 20);
    assert!(outputs.iter().all(|h| (h.k(), h.l()) == (33, 14)));
}

#[test]
fn strict_filter_is_honoured() {
    let filters = Filters { require_non_ks: true, full_edge: FullEdgeFilter::Strict };
    let outputs = run_m1(&twenty_ten(), 3, 200, filters).unwrap();
    assert!(outputs.iter().all(|h| filter_full_edge_no_m1(h, FullEdgeFilter::Strict)));
}

#[test]
fn binary_master_gives_nothing() {
    let h = common::mmph("4d-8-3");
    assert!(run_m1(&h, 0, 30, Filters::default()).unwrap().is_empty());
}
