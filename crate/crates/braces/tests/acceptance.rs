//! Acceptance suite: every gate criterion as one test, each printing its
//! pass line. The order-14 corpus is generated once and shared; expect several
//! minutes of wall time for the full run.

mod common;

use std::collections::BTreeSet;
use std::sync::LazyLock;

use braces::enumerate::BoundReport;
use braces::{
    all_expansions, are_isomorphic, brute_force_graphs, canonical_form, find_mpp,
    generate_braces, is_brace, is_mccuaig, is_minimal_brace, is_superfluous, is_tight_cut, make,
    minimal_braces, stable_extension, tight_cut_decomposition, verify_bound,
    verify_generation_oracle, verify_narrow, verify_small_order, verify_thin_properties,
    BipartiteGraph, CanonicalForm, Corpus, Family, FamilySpec, Shore, VertexId,
};
use common::{all_retract_results, tight_by_matching_oracle};

static CORPUS: LazyLock<Corpus> =
    LazyLock::new(|| generate_braces(14, false).expect("order 14 is within the guardrail"));
static MINIMAL: LazyLock<Corpus> = LazyLock::new(|| minimal_braces(&CORPUS));
static BOUND: LazyLock<BoundReport> = LazyLock::new(|| verify_bound(&CORPUS));

fn form_of(spec: FamilySpec) -> CanonicalForm {
    canonical_form(&make(spec).unwrap()).unwrap()
}

fn pass(criterion: &str) {
    println!("acceptance {criterion}: PASS");
}

#[test]
fn criterion_1_small_order_characterizations() {
    let report = verify_small_order(&CORPUS);
    assert!(report.ok(), "{report}");

    // the same sets, asserted explicitly
    let minimal_upto8: BTreeSet<CanonicalForm> = MINIMAL
        .iter()
        .filter(|e| e.order() <= 8)
        .map(|e| e.form.clone())
        .collect();
    let expected8: BTreeSet<CanonicalForm> = [
        FamilySpec::new(Family::K2, None),
        FamilySpec::new(Family::C4, None),
        FamilySpec::new(Family::K33, None),
        FamilySpec::new(Family::Biwheel, Some(8)),
    ]
    .into_iter()
    .map(form_of)
    .collect();
    assert_eq!(minimal_upto8, expected8);

    let minimal10: BTreeSet<CanonicalForm> =
        MINIMAL.entries(10).iter().map(|e| e.form.clone()).collect();
    let expected10: BTreeSet<CanonicalForm> = [
        FamilySpec::new(Family::M10, None),
        FamilySpec::new(Family::Biwheel, Some(10)),
        FamilySpec::new(Family::Q10Plus, None),
    ]
    .into_iter()
    .map(form_of)
    .collect();
    assert_eq!(minimal10, expected10);

    let minimal12_big: BTreeSet<CanonicalForm> = MINIMAL
        .entries(12)
        .iter()
        .filter(|e| e.size() >= 20)
        .map(|e| e.form.clone())
        .collect();
    let expected12: BTreeSet<CanonicalForm> =
        [FamilySpec::new(Family::B12, None), FamilySpec::new(Family::Q12, None)]
            .into_iter()
            .map(form_of)
            .collect();
    assert_eq!(minimal12_big, expected12);

    let cubic10: BTreeSet<CanonicalForm> = brute_force_graphs(10, 3)
        .unwrap()
        .into_iter()
        .filter(|f| {
            let g = f.to_graph();
            let cubic = g.vertices().all(|v| g.degree(v) == 3);
            f.order() == 10 && cubic
        })
        .collect();
    let expected_cubic: BTreeSet<CanonicalForm> =
        [FamilySpec::new(Family::M10, None), FamilySpec::new(Family::Q10, None)]
            .into_iter()
            .map(form_of)
            .collect();
    assert_eq!(cubic10, expected_cubic);
    pass("1 (small-order characterizations)");
}

#[test]
fn criterion_2_generation_closure_matches_brute_force() {
    let report = verify_generation_oracle(&CORPUS);
    assert!(report.ok(), "{report}");
    assert!(report.checked >= 60, "the oracle saw {} braces", report.checked);
    pass("2 (generation-theorem closure at order <= 10)");
}

#[test]
fn criterion_3_mccuaig_and_thin_edge_properties() {
    let report = verify_thin_properties(&CORPUS);
    assert!(report.ok(), "{report}");
    assert_eq!(
        report.checked,
        CORPUS.iter().filter(|e| e.order() >= 6).count(),
        "every brace of order six or more was scanned"
    );
    pass("3 (strictly thin edges outside the exceptional family; two thin edges everywhere)");
}

#[test]
fn criterion_4_narrow_certificates() {
    assert!(
        BOUND.certificate_violations.is_empty(),
        "certificate violations: {:?}",
        BOUND.certificate_violations
    );
    // re-derive each certificate explicitly
    let mut outside = 0usize;
    for entry in MINIMAL.iter() {
        let g = entry.graph();
        if is_mccuaig(&g) {
            continue;
        }
        outside += 1;
        let cert = find_mpp(&g).expect("minimal brace outside the family has a narrow pair");
        assert!(verify_narrow(&g, &cert).is_ok());
        assert!(cert.f_in_h.len() <= cert.index as usize + 1);
        assert_eq!(cert.j.order() / 2, g.order() / 2 - cert.index as usize);
        assert_eq!(
            cert.j.size(),
            g.size() - 1 - 2 * cert.index as usize - cert.f_in_h.len()
        );
    }
    assert_eq!(outside, BOUND.certificates_checked);
    assert!(outside >= 3, "Q10+, Q12 and Q14 at least; saw {outside}");
    pass("4 (narrow minimality-preserving pairs with exact arithmetic)");
}

#[test]
fn criterion_5_extremal_bound_and_equality_set() {
    assert!(BOUND.bound_violations.is_empty(), "bound violations: {:?}", BOUND.bound_violations);
    let expected: Vec<CanonicalForm> = {
        let mut v: Vec<CanonicalForm> = [
            FamilySpec::new(Family::M10, None),
            FamilySpec::new(Family::B12, None),
            FamilySpec::new(Family::Q12, None),
            FamilySpec::new(Family::Q, Some(14)),
        ]
        .into_iter()
        .map(form_of)
        .collect();
        v.sort();
        v
    };
    assert_eq!(BOUND.equality_forms, expected);
    // n = 5 equality case, directly
    let m10 = make(FamilySpec::new(Family::M10, None)).unwrap();
    assert_eq!(m10.size(), 15);
    assert_eq!(5 * (m10.order() / 2) - 10, 15);
    // equality split by order: {B12, Q12} at n = 6 and {Q14} at n = 7
    let at12: Vec<&CanonicalForm> =
        BOUND.equality_forms.iter().filter(|f| f.order() == 12).collect();
    let at14: Vec<&CanonicalForm> =
        BOUND.equality_forms.iter().filter(|f| f.order() == 14).collect();
    assert_eq!(at12.len(), 2);
    assert_eq!(at14.len(), 1);
    pass("5 (extremal bound m <= 5n - 10 with exact equality set)");
}

#[test]
fn criterion_6_family_arithmetic() {
    for n in 4..=8 {
        let b = make(FamilySpec::new(Family::Biwheel, Some(2 * n))).unwrap();
        assert_eq!(b.size(), 4 * n - 4);
    }
    for n in 6..=9 {
        let q = make(FamilySpec::new(Family::Q, Some(2 * n))).unwrap();
        assert_eq!(q.size(), 5 * n - 10);
        assert!(is_minimal_brace(&q), "Q_{{{}}} must be minimal", 2 * n);
    }
    // the stable-extension of B12 is not minimal: its hub-to-extension edge is superfluous
    let b12 = make(FamilySpec::new(Family::B12, None)).unwrap();
    let sets = braces::expand::stable_two_two_sets(&b12);
    assert!(!sets.is_empty(), "B12 has a qualifying stable set");
    let mut extension_forms: BTreeSet<CanonicalForm> = BTreeSet::new();
    for s in &sets {
        let ext = stable_extension(&b12, s).unwrap();
        assert!(is_brace(&ext));
        assert!(!is_minimal_brace(&ext), "the S-extension of B12 has a superfluous edge");
        extension_forms.insert(canonical_form(&ext).unwrap());
    }
    assert_eq!(extension_forms.len(), 1, "unique up to symmetry");
    pass("6 (family size formulas and the B12 extension counterexample)");
}

#[test]
fn criterion_7_structural_spot_checks() {
    // tight cut decomposition of Q10: exactly two K33 leaves
    let q10 = make(FamilySpec::new(Family::Q10, None)).unwrap();
    let d = tight_cut_decomposition(&q10);
    let k33 = make(FamilySpec::new(Family::K33, None)).unwrap();
    assert_eq!(d.leaves.len(), 2);
    for leaf in &d.leaves {
        assert!(are_isomorphic(leaf, &k33).unwrap());
    }

    // retract(Q10+ - e) is B8+ for the certificate's strictly thin edge
    let q10p = make(FamilySpec::new(Family::Q10Plus, None)).unwrap();
    let cert = find_mpp(&q10p).unwrap();
    let retracted = q10p.delete_edge(cert.edge).unwrap().retract();
    let b8p = make(FamilySpec::new(Family::B8Plus, None)).unwrap();
    assert!(are_isomorphic(&retracted, &b8p).unwrap());

    // B8+ has exactly one superfluous edge; Q10+ has none
    let superfluous_b8p = b8p
        .edges()
        .iter()
        .filter(|e| is_superfluous(&b8p, e.id).unwrap())
        .count();
    assert_eq!(superfluous_b8p, 1);
    let superfluous_q10p = q10p
        .edges()
        .iter()
        .filter(|e| is_superfluous(&q10p, e.id).unwrap())
        .count();
    assert_eq!(superfluous_q10p, 0);
    pass("7 (structural spot checks)");
}

#[test]
fn criterion_8_property_suites() {
    let small = CORPUS.slice_up_to(10);

    // tight-cut shape test against the all-matchings oracle, on all odd shores
    let mut targets: Vec<BipartiteGraph> = small.iter().map(|e| e.graph()).collect();
    targets.push(make(FamilySpec::new(Family::Q10, None)).unwrap());
    for g in &targets {
        let verts: Vec<VertexId> = g.vertices().collect();
        for mask in 1u32..(1 << verts.len()) - 1 {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let set: BTreeSet<VertexId> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            let shore = Shore::new(g, set).unwrap();
            assert_eq!(is_tight_cut(g, &shore), tight_by_matching_oracle(g, &shore));
        }
    }

    // expansion round trips: output minus the new edge retracts to the parent
    for entry in small.iter() {
        if entry.order() < 6 {
            continue;
        }
        let parent = entry.graph();
        for exp in all_expansions(&parent).values() {
            assert!(is_brace(&exp.graph));
            let back = exp.graph.delete_edge(exp.new_edge).unwrap().retract();
            assert!(are_isomorphic(&back, &parent).unwrap());
        }
    }

    // retract order-independence across all bicontraction orders
    for entry in small.iter() {
        let g = entry.graph();
        for e in g.edges().to_vec() {
            let deleted = g.delete_edge(e.id).unwrap();
            if !deleted.is_connected() {
                continue; // K2 loses its only edge
            }
            assert_eq!(all_retract_results(&deleted).len(), 1);
        }
    }
    pass("8 (oracle property suites at order <= 10)");
}

/// Regression record: corpus layer sizes. The brute-force oracle pins the
/// counts through order ten; the later layers document the build.
#[test]
fn corpus_layer_sizes() {
    let counts: Vec<(usize, usize)> =
        CORPUS.orders().map(|o| (o, CORPUS.entries(o).len())).collect();
    assert_eq!(
        counts,
        vec![(2, 1), (4, 1), (6, 1), (8, 5), (10, 53), (12, 3107), (14, 882914)]
    );
}
