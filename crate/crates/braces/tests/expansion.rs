//! Expansion-operation properties: round trips, brace preservation, the
//! stable-extension decomposition, and minimality-preserving-pair search.

mod common;

use std::collections::BTreeSet;

use braces::expand::{expand_index_one, expand_index_zero, stable_two_two_sets};
use braces::{
    all_expansions, are_isomorphic, edge_index, find_mpp, generate_braces, is_brace,
    is_minimal_brace, is_superfluous, make, minimal_braces, stable_extension, verify_narrow,
    BipartiteGraph, EdgeId, Family, FamilySpec,
};

#[test]
fn expansion_round_trips_on_corpus_to_order_ten() {
    let corpus = generate_braces(10, false).unwrap();
    let mut checked = 0usize;
    for entry in corpus.iter() {
        if entry.order() < 6 {
            continue;
        }
        let parent = entry.graph();
        for exp in all_expansions(&parent).values() {
            assert!(exp.graph.is_simple());
            assert!(is_brace(&exp.graph), "expansion output must be a brace");
            assert_eq!(
                edge_index(&exp.graph, exp.new_edge).unwrap(),
                exp.op.index(),
                "connecting edge index mismatch"
            );
            let back = exp.graph.delete_edge(exp.new_edge).unwrap().retract();
            assert!(
                are_isomorphic(&back, &parent).unwrap(),
                "retract of output minus the new edge must recover the parent"
            );
            let d_order = exp.graph.order() - parent.order();
            let d_size = exp.graph.size() - parent.size();
            assert_eq!(d_order, 2 * exp.op.index() as usize);
            assert_eq!(d_size, 1 + 2 * exp.op.index() as usize);
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn stable_extension_equals_two_additions_plus_one_index_one_expansion() {
    // dense small braces rarely admit a qualifying stable set, so the sparse
    // named ones join the corpus here
    let corpus = generate_braces(10, false).unwrap();
    let mut targets: Vec<BipartiteGraph> = corpus
        .iter()
        .filter(|e| e.order() >= 6)
        .map(|e| e.graph())
        .collect();
    targets.push(make(FamilySpec::new(Family::Q12, None)).unwrap());
    targets.push(make(FamilySpec::new(Family::B12, None)).unwrap());
    let mut checked = 0usize;
    for j in &targets {
        let j = j.clone();
        for s in stable_two_two_sets(&j) {
            let ext = stable_extension(&j, &s).unwrap();
            assert!(is_brace(&ext), "stable-extension of a simple brace is a simple brace");

            // the same graph through expansion operations: add a2b1 and a2b2,
            // then bi-split a2 carrying the two new edges, joined back to a1
            let verts: Vec<_> = s.iter().copied().collect();
            let (a_part, b_part): (Vec<_>, Vec<_>) =
                verts.into_iter().partition(|&v| j.class_a().contains(&v));
            let (a1, a2) = (a_part[0], a_part[1]);
            let (b1, b2) = (b_part[0], b_part[1]);
            let (h1, f1) = expand_index_zero(&j, a2, b1).unwrap();
            let (h2, f2) = expand_index_zero(&h1, a2, b2).unwrap();
            let old_edges: BTreeSet<EdgeId> = h2
                .incident_edges(a2)
                .into_iter()
                .filter(|&e| e != f1 && e != f2)
                .collect();
            let new_edges: BTreeSet<EdgeId> = [f1, f2].into();
            let (composed, _) = expand_index_one(&h2, a2, a1, (&old_edges, &new_edges)).unwrap();
            assert!(are_isomorphic(&composed, &ext).unwrap());
            checked += 1;
        }
    }
    assert!(checked >= 10, "expected the sparse instances to qualify, saw {checked}");
}

#[test]
fn q_family_links_by_stable_extension() {
    let q12 = make(FamilySpec::new(Family::Q12, None)).unwrap();
    let q14 = make(FamilySpec::new(Family::Q, Some(14))).unwrap();
    assert!(braces::expand::is_stable_extension_of(&q14, &q12));
    assert!(is_minimal_brace(&q12));
    assert!(is_minimal_brace(&q14));
}

#[test]
fn mpp_certificates_for_minimal_braces_to_order_twelve() {
    let corpus = generate_braces(12, false).unwrap();
    let minimal = minimal_braces(&corpus);
    let mut outside = 0usize;
    for entry in minimal.iter() {
        let g = entry.graph();
        if braces::is_mccuaig(&g) {
            continue;
        }
        outside += 1;
        let cert = find_mpp(&g).unwrap();
        assert!(verify_narrow(&g, &cert).is_ok());
        assert!(cert.f_in_h.len() <= cert.index as usize + 1);
        assert!(is_minimal_brace(&cert.j));
        // determinism
        let again = find_mpp(&g).unwrap();
        assert_eq!(again.edge, cert.edge);
        assert_eq!(again.f_in_h, cert.f_in_h);
    }
    // Q10+ and Q12 are among them; cubic minimal braces outside the McCuaig
    // families join at order 12
    assert!(outside >= 2, "saw {outside}");
    let q10p = braces::canonical_form(&make(FamilySpec::new(Family::Q10Plus, None)).unwrap()).unwrap();
    let q12 = braces::canonical_form(&make(FamilySpec::new(Family::Q12, None)).unwrap()).unwrap();
    assert!(minimal.contains(&q10p) && minimal.contains(&q12));
}

#[test]
fn q14_certificate_reduces_to_q12_via_stable_extension() {
    let q14 = make(FamilySpec::new(Family::Q, Some(14))).unwrap();
    let cert = find_mpp(&q14).unwrap();
    assert!(verify_narrow(&q14, &cert).is_ok());
    assert_eq!(cert.index, 1);
    assert_eq!(cert.f_in_h.len(), 2);
    assert_eq!(cert.stable_ext, Some(true));
    let q12 = make(FamilySpec::new(Family::Q12, None)).unwrap();
    assert!(are_isomorphic(&cert.j, &q12).unwrap());
}

/// The search deletes superfluous edges in ascending id order; other orders
/// still produce minimality-preserving pairs (J stays minimal), but narrowness
/// is only guaranteed for the documented strategy, so here it is observed
/// rather than asserted.
#[test]
fn alternative_f_orders_still_preserve_minimality() {
    for family in [FamilySpec::new(Family::Q10Plus, None), FamilySpec::new(Family::Q12, None)] {
        let g = make(family).unwrap();
        let cert = find_mpp(&g).unwrap();
        let (h, _) = g.delete_edge(cert.edge).unwrap().retract_traced();
        // descending-id deletion order
        let mut j = h.clone();
        loop {
            let next = j
                .edges()
                .iter()
                .rev()
                .map(|e| e.id)
                .find(|&f| is_superfluous(&j, f).unwrap());
            match next {
                Some(f) => j = j.delete_edge(f).unwrap(),
                None => break,
            }
        }
        assert!(is_minimal_brace(&j), "any deletion order ends at a minimal brace");
    }
}

#[test]
fn b10_index_zero_expansions_are_braces() {
    let b10 = make(FamilySpec::new(Family::Biwheel, Some(10))).unwrap();
    let mut count = 0usize;
    for &a in b10.class_a() {
        for &b in b10.class_b() {
            if b10.adjacent(a, b) {
                continue;
            }
            let (g, _) = expand_index_zero(&b10, a, b).unwrap();
            assert!(is_brace(&g));
            count += 1;
        }
    }
    assert!(count > 0);
}

#[test]
fn stable_extension_validates_input() {
    let k33 = make(FamilySpec::new(Family::K33, None)).unwrap();
    // complete bipartite: nothing is stable across classes
    assert!(stable_two_two_sets(&k33).is_empty());
    let bad: BTreeSet<_> = k33.vertices().take(4).collect();
    assert!(stable_extension(&k33, &bad).is_err());
}

/// Fresh ids from bi-splitting do not collide with surviving ones.
#[test]
fn expansion_ids_are_unique() {
    let b8p = make(FamilySpec::new(Family::B8Plus, None)).unwrap();
    for exp in all_expansions(&b8p).values() {
        let mut ids: Vec<EdgeId> = exp.graph.edges().iter().map(|e| e.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), exp.graph.size());
        let mut verts: Vec<_> = exp.graph.vertices().collect();
        verts.sort();
        verts.dedup();
        assert_eq!(verts.len(), exp.graph.order());
    }
}
