//! Canonical forms against the brute-force permutation oracle.

mod common;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braces::{
    are_isomorphic, brute_force_graphs, canonical_form, generate_braces, make, BipartiteGraph,
    Family, FamilySpec,
};
use common::perm_isomorphic;

#[test]
fn canonical_equality_matches_permutation_search_exhaustively() {
    // every connected bipartite graph of order <= 6, plus the brace corpus to 8
    let mut graphs: Vec<BipartiteGraph> = brute_force_graphs(6, 1)
        .unwrap()
        .into_iter()
        .map(|f| f.to_graph())
        .collect();
    graphs.extend(generate_braces(8, false).unwrap().iter().map(|e| e.graph()));
    for g in &graphs {
        for h in &graphs {
            assert_eq!(
                are_isomorphic(g, h).unwrap(),
                perm_isomorphic(g, h),
                "disagreement on orders {} and {}",
                g.order(),
                h.order()
            );
        }
    }
}

fn random_connected(rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let na = rng.gen_range(2..=7);
    let nb = rng.gen_range(2..=7);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    // vertices arrive interleaved; each attaches to an earlier opposite vertex
    let mut seen_a = 1usize;
    let mut seen_b = 0usize;
    while seen_a < na || seen_b < nb {
        let next_is_b = (seen_b < seen_a && seen_b < nb) || seen_a == na;
        if next_is_b {
            pairs.push((rng.gen_range(0..seen_a), seen_b));
            seen_b += 1;
        } else {
            pairs.push((seen_a, rng.gen_range(0..seen_b)));
            seen_a += 1;
        }
    }
    for _ in 0..rng.gen_range(0..=na * nb / 2) {
        pairs.push((rng.gen_range(0..na), rng.gen_range(0..nb)));
    }
    let g = BipartiteGraph::build(na, nb, &pairs).unwrap();
    assert!(g.is_connected());
    g
}

fn relabel(g: &BipartiteGraph, rng: &mut ChaCha8Rng, swap: bool) -> BipartiteGraph {
    let na = g.class_a().len();
    let nb = g.class_b().len();
    let mut pa: Vec<usize> = (0..na).collect();
    let mut pb: Vec<usize> = (0..nb).collect();
    pa.shuffle(rng);
    pb.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (_, ai) = g.class_index(e.a).unwrap();
            let (_, bi) = g.class_index(e.b).unwrap();
            if swap {
                (pb[bi], pa[ai])
            } else {
                (pa[ai], pb[bi])
            }
        })
        .collect();
    pairs.shuffle(rng);
    if swap {
        BipartiteGraph::build(nb, na, &pairs).unwrap()
    } else {
        BipartiteGraph::build(na, nb, &pairs).unwrap()
    }
}

#[test]
fn thousand_random_relabeled_pairs_up_to_order_14() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240326);
    for round in 0..1000 {
        let g = random_connected(&mut rng);
        let swap = rng.gen_bool(0.5);
        let h = relabel(&g, &mut rng, swap);
        assert!(
            are_isomorphic(&g, &h).unwrap(),
            "relabeled pair disagrees at round {round}"
        );
    }
}

#[test]
fn class_swap_yields_identical_bytes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let g = random_connected(&mut rng);
        let swapped = relabel(&g, &mut rng, true);
        assert_eq!(
            canonical_form(&g).unwrap().as_bytes(),
            canonical_form(&swapped).unwrap().as_bytes()
        );
    }
}

#[test]
fn named_graph_distinctions() {
    let m10 = make(FamilySpec::new(Family::M10, None)).unwrap();
    let q10 = make(FamilySpec::new(Family::Q10, None)).unwrap();
    assert_ne!(canonical_form(&m10).unwrap(), canonical_form(&q10).unwrap());
    assert!(perm_isomorphic(
        &make(FamilySpec::new(Family::Biwheel, Some(8))).unwrap(),
        &make(FamilySpec::new(Family::Prism, Some(8))).unwrap(),
    ));
    let b10 = make(FamilySpec::new(Family::Biwheel, Some(10))).unwrap();
    assert!(!are_isomorphic(&b10, &m10).unwrap());
}

#[test]
fn retract_of_q10_plus_matches_b8_plus() {
    // the strictly thin edge of index one found by the certificate machinery
    let g = make(FamilySpec::new(Family::Q10Plus, None)).unwrap();
    let cert = braces::find_mpp(&g).unwrap();
    let h = g.delete_edge(cert.edge).unwrap().retract();
    let b8p = make(FamilySpec::new(Family::B8Plus, None)).unwrap();
    assert!(are_isomorphic(&h, &b8p).unwrap());
}
