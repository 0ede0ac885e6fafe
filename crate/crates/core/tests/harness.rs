use std::collections::BTreeSet;

use oddcycle_core::graph::canonical_form;
use oddcycle_core::harness::{
    enumerate_graphs, iso_classes, replay_report, search_counterexample, verify_lemma, verify_turan_extremal,
    EnumMode, LemmaId, LemmaParams, SearchParams, SearchTarget,
};
use oddcycle_core::{par, Budget};

#[test]
fn graphs_on_five_vertices() {
    assert_eq!(iso_classes(5, |_| true).unwrap().len(), 34);
    assert_eq!(enumerate_graphs(5, EnumMode::Labeled, |_| true).unwrap().len(), 1024);
}

#[test]
fn labeled_and_iso_modes_agree() {
    for n in 1..=6 {
        let labeled: BTreeSet<String> = enumerate_graphs(n, EnumMode::Labeled, |g| g.m() % 2 == 0)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).into_string())
            .collect();
        let iso: BTreeSet<String> = enumerate_graphs(n, EnumMode::UpToIso, |g| g.m() % 2 == 0)
            .unwrap()
            .iter()
            .map(|g| canonical_form(g).into_string())
            .collect();
        assert_eq!(labeled, iso, "n = {n}");
    }
}

#[test]
fn search_reports_agree_across_modes() {
    for target in [SearchTarget::Theorem6, SearchTarget::Theorem9, SearchTarget::Peel] {
        let run = |mode| {
            search_counterexample(
                target,
                &SearchParams {
                    n_min: 4,
                    n_max: 6,
                    k: 2,
                    r_or_b: 3,
                    enum_mode: mode,
                    ..SearchParams::default()
                },
            )
            .unwrap()
        };
        let (a, b) = (run(EnumMode::Labeled), run(EnumMode::UpToIso));
        let forms = |r: &oddcycle_core::harness::VerificationReport| -> BTreeSet<String> {
            r.violations
                .iter()
                .map(|v| canonical_form(&oddcycle_core::graph::from_graph6(&v.graph6).unwrap()).into_string())
                .collect()
        };
        assert_eq!(forms(&a), forms(&b), "{target:?}");
    }
}

#[test]
fn reported_violations_replay() {
    let turan = verify_turan_extremal(6, 2, EnumMode::UpToIso).unwrap();
    assert!(!turan.report.violations.is_empty());
    assert!(replay_report(&turan.report, Budget::UNLIMITED).unwrap().into_iter().all(|ok| ok));

    let lemma2 = search_counterexample(
        SearchTarget::Lemma2,
        &SearchParams {
            n_min: 6,
            n_max: 6,
            k: 2,
            r_or_b: 3,
            enum_mode: EnumMode::UpToIso,
            ..SearchParams::default()
        },
    )
    .unwrap();
    assert!(replay_report(&lemma2, Budget::UNLIMITED).unwrap().into_iter().all(|ok| ok));
}

#[test]
fn parallel_and_sequential_sweeps_agree() {
    let p = LemmaParams {
        k: 2,
        host_length: 7,
        samples: Some(4000),
        seed: 9,
        ..LemmaParams::default()
    };
    for id in [LemmaId::Degree, LemmaId::Outside] {
        let parallel = verify_lemma(id, &p).unwrap().to_json_line();
        let sequential = par::sequential(|| verify_lemma(id, &p).unwrap().to_json_line());
        let two = par::with_jobs(2, || verify_lemma(id, &p).unwrap().to_json_line());
        assert_eq!(parallel, sequential);
        assert_eq!(parallel, two);
    }
}

#[test]
fn aaa_exhaustive_on_seven_vertices() {
    let p = LemmaParams {
        n: 7,
        enum_mode: EnumMode::Labeled,
        ..LemmaParams::default()
    };
    let r = verify_lemma(LemmaId::Aaa, &p).unwrap();
    assert_eq!(r.checked, 1 << 21);
    assert!(r.complete && r.violations.is_empty());
}
