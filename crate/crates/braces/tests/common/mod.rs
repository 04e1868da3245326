#![allow(dead_code)]

//! Shared test oracles, deliberately independent of the library's own
//! algorithms: permutation-search isomorphism, exhaustive perfect-matching
//! enumeration, and the all-orders bicontraction walk.

use std::collections::{BTreeMap, BTreeSet};

use braces::{canonical_form, BipartiteGraph, CanonicalForm, Shore, VertexId};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Edge multiset under class-index coordinates.
fn pair_multiset(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (_, ai) = g.class_index(e.a).unwrap();
            let (_, bi) = g.class_index(e.b).unwrap();
            (ai, bi)
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Brute-force isomorphism by permutation search over both classes, allowing a
/// class swap. Exponential; for small graphs only.
pub fn perm_isomorphic(g: &BipartiteGraph, h: &BipartiteGraph) -> bool {
    let (ga, gb) = (g.class_a().len(), g.class_b().len());
    let target = pair_multiset(h);
    let mut orientations: Vec<(usize, usize, bool)> = Vec::new();
    if (ga, gb) == (h.class_a().len(), h.class_b().len()) {
        orientations.push((ga, gb, false));
    }
    if (gb, ga) == (h.class_a().len(), h.class_b().len()) {
        orientations.push((gb, ga, true));
    }
    let source = pair_multiset(g);
    for (na, nb, swapped) in orientations {
        for pa in permutations(na) {
            for pb in permutations(nb) {
                let mut mapped: Vec<(usize, usize)> = source
                    .iter()
                    .map(|&(a, b)| {
                        if swapped {
                            (pa[b], pb[a])
                        } else {
                            (pa[a], pb[b])
                        }
                    })
                    .collect();
                mapped.sort_unstable();
                if mapped == target {
                    return true;
                }
            }
        }
    }
    false
}

/// Every perfect matching as a set of vertex pairs (parallel classes count
/// once), by direct backtracking.
pub fn all_perfect_matchings(g: &BipartiteGraph) -> Vec<Vec<(VertexId, VertexId)>> {
    let a: Vec<VertexId> = g.class_a().to_vec();
    let b: Vec<VertexId> = g.class_b().to_vec();
    if a.len() != b.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    let mut current: Vec<(VertexId, VertexId)> = Vec::new();
    fn go(
        g: &BipartiteGraph,
        a: &[VertexId],
        i: usize,
        used: &mut BTreeSet<VertexId>,
        current: &mut Vec<(VertexId, VertexId)>,
        out: &mut Vec<Vec<(VertexId, VertexId)>>,
    ) {
        if i == a.len() {
            out.push(current.clone());
            return;
        }
        for nb in g.neighbors(a[i]) {
            if used.insert(nb) {
                current.push((a[i], nb));
                go(g, a, i + 1, used, current, out);
                current.pop();
                used.remove(&nb);
            }
        }
    }
    go(g, &a, 0, &mut used, &mut current, &mut out);
    out
}

/// Definitional tight-cut test: every perfect matching crosses the cut exactly
/// once.
pub fn tight_by_matching_oracle(g: &BipartiteGraph, shore: &Shore) -> bool {
    let matchings = all_perfect_matchings(g);
    assert!(!matchings.is_empty(), "oracle needs a matching covered graph");
    matchings.iter().all(|m| {
        m.iter()
            .filter(|(u, v)| shore.contains(*u) != shore.contains(*v))
            .count()
            == 1
    })
}

/// Canonical forms of every graph reachable by exhaustively trying all
/// bicontraction orders until none applies. Bicontraction preserves
/// connectivity, so a connected start keeps the canonical keys total.
pub fn all_retract_results(g: &BipartiteGraph) -> BTreeSet<CanonicalForm> {
    assert!(g.is_connected(), "the retract walk needs a connected start");
    fn go(
        g: &BipartiteGraph,
        memo: &mut BTreeMap<CanonicalForm, BTreeSet<CanonicalForm>>,
    ) -> BTreeSet<CanonicalForm> {
        let key = canonical_form(g).expect("connected");
        if let Some(found) = memo.get(&key) {
            return found.clone();
        }
        let candidates: Vec<VertexId> = g
            .vertices()
            .filter(|&v| g.degree(v) == 2 && g.neighbors(v).len() == 2)
            .collect();
        let result = if candidates.is_empty() {
            [key.clone()].into()
        } else {
            let mut acc = BTreeSet::new();
            for v in candidates {
                acc.extend(go(&g.bicontract(v).expect("eligible"), memo));
            }
            acc
        };
        memo.insert(key, result.clone());
        result
    }
    go(g, &mut BTreeMap::new())
}
