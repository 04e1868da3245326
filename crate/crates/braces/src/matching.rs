//! Perfect-matching machinery and the two foundational predicates: matching
//! covered and brace.
//!
//! Predicates are evaluated on the multigraph but matchings are searched on the
//! simple underlying graph; a parallel class is allowed as a whole. Each
//! predicate keeps a second, independently derived route as a cross-check
//! (`is_matching_covered_by_pair_deletion`, `is_brace_by_surplus`); the test
//! suite holds the pairs to agreement on the exhaustive corpus.

use std::collections::BTreeSet;

use crate::bits::{self, Bits};
use crate::graph::{BipartiteGraph, EdgeId, Side, VertexId};
use crate::Error;

/// A set of pairwise vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    /// Validates vertex-disjointness.
    pub fn new(g: &BipartiteGraph, edges: BTreeSet<EdgeId>) -> Result<Self, Error> {
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for &id in &edges {
            let e = g.edge(id).ok_or(Error::UnknownEdge(id))?;
            if !used.insert(e.a) || !used.insert(e.b) {
                return Err(Error::Precondition("matching edges must be vertex-disjoint"));
            }
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Perfect iff it covers every vertex.
    pub fn is_perfect(&self, g: &BipartiteGraph) -> bool {
        2 * self.edges.len() == g.order()
    }
}

/// A maximum matching, reported as edge ids (the lowest id of each used
/// parallel class).
pub fn maximum_matching(g: &BipartiteGraph) -> Matching {
    let b = Bits::from_graph(g);
    let mut ma = [-1i32; bits::MAX_CLASS];
    let mut mb = [-1i32; bits::MAX_CLASS];
    bits::max_matching(&b.adj, b.na, b.nb, &mut ma, &mut mb);
    let mut edges = BTreeSet::new();
    for (ai, &bi) in ma.iter().enumerate().take(b.na) {
        if bi < 0 {
            continue;
        }
        let va = g.class_a()[ai];
        let vb = g.class_b()[bi as usize];
        let id = g
            .edges()
            .iter()
            .find(|e| e.a == va && e.b == vb)
            .map(|e| e.id)
            .expect("matched pair is an edge");
        edges.insert(id);
    }
    Matching { edges }
}

/// Whether a perfect matching exists.
pub fn has_perfect_matching(g: &BipartiteGraph) -> bool {
    bits::has_perfect_matching(&Bits::from_graph(g))
}

/// Matching covered: connected, balanced, and every edge lies in some perfect
/// matching. One maximum matching plus alternating reachability marks the
/// allowed edges.
pub fn is_matching_covered(g: &BipartiteGraph) -> bool {
    bits::matching_covered(&Bits::from_graph(g))
}

/// The definitional cross-check: `G - a - b` has a perfect matching for every
/// pair `a ∈ A`, `b ∈ B`. Kept independent of the allowed-edge marking.
pub fn is_matching_covered_by_pair_deletion(g: &BipartiteGraph) -> bool {
    let b = Bits::from_graph(g);
    if b.na != b.nb || b.na == 0 || !b.is_connected() {
        return false;
    }
    let base = match bits::perfect_matching(&b) {
        Some(m) => m,
        None => return false,
    };
    for ai in 0..b.na {
        for bi in 0..b.nb {
            if !bits::removal_retains_matching(&b, &base.0, &base.1, 1 << ai, 1 << bi, b.na - 1) {
                return false;
            }
        }
    }
    true
}

/// `|N(Z)| - |Z|` for a nonempty subset `Z` of one class.
pub fn surplus(g: &BipartiteGraph, z: &BTreeSet<VertexId>) -> Result<i64, Error> {
    if z.is_empty() {
        return Err(Error::Precondition("surplus needs a nonempty subset"));
    }
    let mut side: Option<Side> = None;
    for &v in z {
        let s = g.side(v).ok_or(Error::UnknownVertex(v))?;
        if *side.get_or_insert(s) != s {
            return Err(Error::MixedClassSubset);
        }
    }
    let mut nbrs: BTreeSet<VertexId> = BTreeSet::new();
    for &v in z {
        nbrs.extend(g.neighbors(v));
    }
    Ok(nbrs.len() as i64 - z.len() as i64)
}

/// Brace predicate. For order six or more: connected, balanced, matching
/// covered, and `G - a1 - a2 - b1 - b2` has a perfect matching for all distinct
/// `a1, a2 ∈ A`, `b1, b2 ∈ B`. For order at most four: the simple underlying
/// graph is `K2` or `C4` and the graph is matching covered.
pub fn is_brace(g: &BipartiteGraph) -> bool {
    is_brace_bits(&Bits::from_graph(g))
}

pub(crate) fn is_brace_bits(b: &Bits) -> bool {
    if b.na != b.nb || b.na == 0 {
        return false;
    }
    if b.order() <= 4 {
        // K2 or C4 underneath, and matching covered.
        let underlying_ok = match b.na {
            1 => b.adj[0] == 1,
            2 => b.adj[0] == 0b11 && b.adj[1] == 0b11,
            _ => unreachable!(),
        };
        return underlying_ok && bits::matching_covered(b);
    }
    if !bits::matching_covered(b) {
        return false;
    }
    let (ma, mb) = bits::perfect_matching(b).expect("matching covered implies a perfect matching");
    bits::two_extendable(b, &ma, &mb)
}

/// Cross-check route: a connected balanced graph of order six or more is a
/// brace iff every nonempty `Z ⊂ A` with `|Z| < |A| - 1` has surplus at least
/// two. Exhaustive over subsets, so meant for the small-order test corpus.
pub fn is_brace_by_surplus(g: &BipartiteGraph) -> bool {
    let b = Bits::from_graph(g);
    if b.na != b.nb || b.order() < 6 {
        return is_brace_bits(&b);
    }
    if !b.is_connected() {
        return false;
    }
    let n = b.na;
    for z in 1u32..(1 << n) - 1 {
        if z.count_ones() as usize > n - 2 {
            continue;
        }
        if b.surplus_mask(Side::A, z) < 2 {
            return false;
        }
    }
    true
}
