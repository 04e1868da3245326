//! The constructive direction — expansions of index zero, one and two, and
//! stable-extensions — and the reductive direction: minimality-preserving-pair
//! search with verification of the narrow-pair conditions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::edges::{edge_index, is_superfluous, minimal_given_brace, strictly_thin_unchecked};
use crate::families::is_mccuaig;
use crate::graph::{BipartiteGraph, EdgeId, Side, VertexId};
use crate::iso::{canon_bicolored, CanonicalForm};
use crate::matching::is_brace;
use crate::Error;

/// Index-zero expansion: add an edge between nonadjacent vertices of opposite
/// classes of a simple brace. Returns the new graph and the added edge.
pub fn expand_index_zero(
    h: &BipartiteGraph,
    a: VertexId,
    b: VertexId,
) -> Result<(BipartiteGraph, EdgeId), Error> {
    let (a, b) = orient_pair(h, a, b)?;
    if h.adjacent(a, b) {
        return Err(Error::AdjacentVertices { u: a, v: b });
    }
    let g = h.add_edge(a, b)?;
    let e = g.edges().last().expect("just added").id;
    Ok((g, e))
}

/// Index-one expansion: bi-split the noncubic vertex `a`, then join the new
/// degree-two vertex to `w` from the same class as `a`. Returns the new graph
/// and the connecting edge, which is strictly thin of index one in the result.
pub fn expand_index_one(
    h: &BipartiteGraph,
    a: VertexId,
    w: VertexId,
    split: (&BTreeSet<EdgeId>, &BTreeSet<EdgeId>),
) -> Result<(BipartiteGraph, EdgeId), Error> {
    let side_a = h.side(a).ok_or(Error::UnknownVertex(a))?;
    let side_w = h.side(w).ok_or(Error::UnknownVertex(w))?;
    if side_a != side_w || a == w {
        return Err(Error::Precondition("index-one expansion needs distinct same-class vertices"));
    }
    let (split_graph, _, _, b0) = h.bi_split(a, split.0, split.1)?;
    let g = match side_a {
        Side::A => split_graph.add_edge(w, b0)?,
        Side::B => split_graph.add_edge(b0, w)?,
    };
    if !g.is_simple() {
        return Err(Error::NonSimpleResult);
    }
    let e = g.edges().last().expect("just added").id;
    Ok((g, e))
}

/// Index-two expansion: bi-split noncubic vertices `a` and `b` from opposite
/// classes, then join the two new degree-two vertices. Returns the new graph
/// and the connecting edge, which is strictly thin of index two in the result.
pub fn expand_index_two(
    h: &BipartiteGraph,
    a: VertexId,
    b: VertexId,
    split_a: (&BTreeSet<EdgeId>, &BTreeSet<EdgeId>),
    split_b: (&BTreeSet<EdgeId>, &BTreeSet<EdgeId>),
) -> Result<(BipartiteGraph, EdgeId), Error> {
    let (a, b) = orient_pair(h, a, b)?;
    let (first, _, _, b0) = h.bi_split(a, split_a.0, split_a.1)?;
    let (second, _, _, a0) = first.bi_split(b, split_b.0, split_b.1)?;
    let g = second.add_edge(a0, b0)?;
    if !g.is_simple() {
        return Err(Error::NonSimpleResult);
    }
    let e = g.edges().last().expect("just added").id;
    Ok((g, e))
}

fn orient_pair(
    g: &BipartiteGraph,
    u: VertexId,
    v: VertexId,
) -> Result<(VertexId, VertexId), Error> {
    match (g.side(u), g.side(v)) {
        (Some(Side::A), Some(Side::B)) => Ok((u, v)),
        (Some(Side::B), Some(Side::A)) => Ok((v, u)),
        (None, _) => Err(Error::UnknownVertex(u)),
        (_, None) => Err(Error::UnknownVertex(v)),
        _ => Err(Error::SameClassEndpoints { u, v }),
    }
}

/// Stable-extension: given a stable set meeting each class in two vertices,
/// add `a0`, `b0` and the five edges `a0 b1`, `a0 b2`, `b0 a1`, `b0 a2`,
/// `a0 b0`.
pub fn stable_extension(
    j: &BipartiteGraph,
    s: &BTreeSet<VertexId>,
) -> Result<BipartiteGraph, Error> {
    if s.len() != 4 {
        return Err(Error::BadStableSet);
    }
    let mut in_a = Vec::new();
    let mut in_b = Vec::new();
    for &v in s {
        match j.side(v) {
            Some(Side::A) => in_a.push(v),
            Some(Side::B) => in_b.push(v),
            None => return Err(Error::UnknownVertex(v)),
        }
    }
    if in_a.len() != 2 || in_b.len() != 2 {
        return Err(Error::BadStableSet);
    }
    for &a in &in_a {
        for &b in &in_b {
            if j.adjacent(a, b) {
                return Err(Error::BadStableSet);
            }
        }
    }
    let (g, a0) = j.add_vertex(Side::A);
    let (g, b0) = g.add_vertex(Side::B);
    let g = g
        .add_edge(a0, in_b[0])?
        .add_edge(a0, in_b[1])?
        .add_edge(in_a[0], b0)?
        .add_edge(in_a[1], b0)?
        .add_edge(a0, b0)?;
    Ok(g)
}

/// All stable sets meeting each color class in exactly two vertices.
pub fn stable_two_two_sets(g: &BipartiteGraph) -> Vec<BTreeSet<VertexId>> {
    let mut out = Vec::new();
    let a = g.class_a();
    let b = g.class_b();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            for k in 0..b.len() {
                for l in k + 1..b.len() {
                    let quad = [a[i], a[j], b[k], b[l]];
                    let stable = [(0, 2), (0, 3), (1, 2), (1, 3)]
                        .iter()
                        .all(|&(x, y)| !g.adjacent(quad[x], quad[y]));
                    if stable {
                        out.push(quad.into_iter().collect());
                    }
                }
            }
        }
    }
    out
}

/// True iff `g` is isomorphic to a stable-extension of `j` at some qualifying
/// stable set.
pub fn is_stable_extension_of(g: &BipartiteGraph, j: &BipartiteGraph) -> bool {
    if g.order() != j.order() + 2 || g.size() != j.size() + 5 {
        return false;
    }
    let target = canon_bicolored(g);
    stable_two_two_sets(j)
        .into_iter()
        .any(|s| canon_bicolored(&stable_extension(j, &s).expect("set is stable")) == target)
}

/// The expansion operation that produced a graph; the provenance unit of the
/// enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionOp {
    IndexZero { a: VertexId, b: VertexId },
    IndexOne { a: VertexId, w: VertexId },
    IndexTwo { a: VertexId, b: VertexId },
}

impl ExpansionOp {
    pub fn index(&self) -> u8 {
        match self {
            ExpansionOp::IndexZero { .. } => 0,
            ExpansionOp::IndexOne { .. } => 1,
            ExpansionOp::IndexTwo { .. } => 2,
        }
    }
}

impl fmt::Display for ExpansionOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionOp::IndexZero { a, b } => write!(f, "index0({a},{b})"),
            ExpansionOp::IndexOne { a, w } => write!(f, "index1({a},{w})"),
            ExpansionOp::IndexTwo { a, b } => write!(f, "index2({a},{b})"),
        }
    }
}

/// One deduplicated expansion output.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: BipartiteGraph,
    pub op: ExpansionOp,
    pub new_edge: EdgeId,
}

/// Unordered bi-split partitions of the edges at `v`, both sides carrying at
/// least two edges; the side containing the lowest edge id comes first.
pub(crate) fn legal_splits(
    g: &BipartiteGraph,
    v: VertexId,
) -> Vec<(BTreeSet<EdgeId>, BTreeSet<EdgeId>)> {
    let inc = g.incident_edges(v);
    let d = inc.len();
    if d < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // the lowest edge always sits in part one, which kills mirror duplicates
    let rest = &inc[1..];
    for mask in 0u32..(1 << rest.len()) {
        let ones = mask.count_ones() as usize;
        if ones + 1 < 2 || d - ones - 1 < 2 {
            continue;
        }
        let mut p1: BTreeSet<EdgeId> = [inc[0]].into();
        let mut p2: BTreeSet<EdgeId> = BTreeSet::new();
        for (k, &e) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                p1.insert(e);
            } else {
                p2.insert(e);
            }
        }
        out.push((p1, p2));
    }
    out
}

/// Every graph obtainable from the simple brace `h` by one expansion of index
/// zero, one or two, over all legal vertex choices and splits, deduplicated by
/// canonical form. The first operation in enumeration order wins the record.
pub fn all_expansions(h: &BipartiteGraph) -> BTreeMap<CanonicalForm, Expansion> {
    expansions_filtered(h, [true, true, true])
}

/// [`all_expansions`] restricted to the selected indices; the enumerator skips
/// indices whose outputs would exceed its target order. Non-simple results
/// cannot arise from a simple brace, but would be skipped rather than raised.
pub(crate) fn expansions_filtered(
    h: &BipartiteGraph,
    want: [bool; 3],
) -> BTreeMap<CanonicalForm, Expansion> {
    let mut out: BTreeMap<CanonicalForm, Expansion> = BTreeMap::new();
    let mut push = |result: Result<(BipartiteGraph, EdgeId), Error>, op: ExpansionOp| {
        let (g, e) = match result {
            Ok(pair) => pair,
            Err(Error::NonSimpleResult) => return,
            Err(other) => panic!("illegal expansion attempt: {other}"),
        };
        out.entry(canon_bicolored(&g))
            .or_insert(Expansion { graph: g, op, new_edge: e });
    };

    if want[0] {
        for &a in h.class_a() {
            for &b in h.class_b() {
                if h.adjacent(a, b) {
                    continue;
                }
                push(expand_index_zero(h, a, b), ExpansionOp::IndexZero { a, b });
            }
        }
    }

    let noncubic: Vec<VertexId> = h.noncubic_vertices();
    if want[1] {
        for &a in &noncubic {
            let side = h.side(a).expect("vertex of h");
            let splits = legal_splits(h, a);
            for &w in h.class(side) {
                if w == a {
                    continue;
                }
                for (p1, p2) in &splits {
                    push(expand_index_one(h, a, w, (p1, p2)), ExpansionOp::IndexOne { a, w });
                }
            }
        }
    }

    if want[2] {
        for &a in &noncubic {
            if h.side(a) != Some(Side::A) {
                continue;
            }
            let splits_a = legal_splits(h, a);
            for &b in &noncubic {
                if h.side(b) != Some(Side::B) {
                    continue;
                }
                let splits_b = legal_splits(h, b);
                for (a1, a2) in &splits_a {
                    for (b1, b2) in &splits_b {
                        push(
                            expand_index_two(h, a, b, (a1, a2), (b1, b2)),
                            ExpansionOp::IndexTwo { a, b },
                        );
                    }
                }
            }
        }
    }
    out
}

/// Locality witness for the narrow conditions, in terms of outer vertices of
/// `G - e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NarrowWitness {
    /// F is empty.
    Empty,
    /// Index one: every member of F is incident with this outer vertex.
    OuterVertex(VertexId),
    /// Index two: every member of F is incident with one of these two adjacent
    /// outer vertices.
    OuterPair(VertexId, VertexId),
}

/// A minimality-preserving pair `(e, F)` together with the narrow-pair
/// witness data and the reduced minimal brace `J`.
#[derive(Clone, Debug)]
pub struct MppCertificate {
    /// The strictly thin edge of `G`.
    pub edge: EdgeId,
    /// Its index in `G` (one or two).
    pub index: u8,
    /// F as edges of `H = retract(G - e)`.
    pub f_in_h: BTreeSet<EdgeId>,
    /// F mapped back to edges of `G` through the retract provenance.
    pub f_in_g: BTreeSet<EdgeId>,
    /// The minimal brace `J = H - F`.
    pub j: BipartiteGraph,
    pub witness: NarrowWitness,
    /// For index one with `|F| = 2`: whether `G` is a stable-extension of `J`.
    pub stable_ext: Option<bool>,
}

/// Why a certificate failed verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NarrowFailure {
    UnknownEdge,
    NotStrictlyThin,
    IndexMismatch,
    FOutsideH,
    FProvenanceMismatch,
    JNotMinimalBrace,
    JMismatch,
    FTooLarge,
    MissingWitness,
    WitnessNotOuter,
    WitnessPairNotAdjacent,
    FNotLocalToWitness,
    CubicityCondition,
    NotStableExtension,
}

impl fmt::Display for NarrowFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NarrowFailure::UnknownEdge => "edge not in graph",
            NarrowFailure::NotStrictlyThin => "edge is not strictly thin",
            NarrowFailure::IndexMismatch => "recorded index disagrees with the graph",
            NarrowFailure::FOutsideH => "F is not a subset of the retract's edges",
            NarrowFailure::FProvenanceMismatch => "F's provenance back to G is inconsistent",
            NarrowFailure::JNotMinimalBrace => "H - F is not a minimal brace",
            NarrowFailure::JMismatch => "recorded J differs from H - F",
            NarrowFailure::FTooLarge => "|F| exceeds index + 1",
            NarrowFailure::MissingWitness => "nonempty F needs a locality witness",
            NarrowFailure::WitnessNotOuter => "witness vertex is not an outer vertex",
            NarrowFailure::WitnessPairNotAdjacent => "witness pair is not adjacent",
            NarrowFailure::FNotLocalToWitness => "some member of F avoids the witness",
            NarrowFailure::CubicityCondition => "an end of F is cubic but not outer, or outer but not cubic",
            NarrowFailure::NotStableExtension => "index one with |F| = 2 but G is not a stable-extension of J",
        };
        f.write_str(s)
    }
}

/// Inner vertices (degree two) and outer vertices (their neighbors) of `G - e`.
fn inner_outer(g_minus_e: &BipartiteGraph) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
    let inner: BTreeSet<VertexId> = g_minus_e
        .vertices()
        .filter(|&v| g_minus_e.degree(v) == 2)
        .collect();
    let mut outer = BTreeSet::new();
    for &v in &inner {
        outer.extend(g_minus_e.neighbors(v));
    }
    (inner, outer)
}

/// Find a narrow minimality-preserving pair of a minimal brace outside the
/// exceptional family. Prefers a strictly thin edge of index one (lowest edge
/// id); otherwise one of index two. F is built by repeatedly deleting the
/// lowest-id superfluous edge of the retract until none remains.
pub fn find_mpp(g: &BipartiteGraph) -> Result<MppCertificate, Error> {
    if !crate::edges::is_minimal_brace(g) {
        return Err(Error::NotMinimalBrace);
    }
    if is_mccuaig(g) {
        return Err(Error::InExceptionalFamily);
    }

    let mut chosen: Option<(u8, EdgeId)> = None;
    for e in g.edges() {
        if !strictly_thin_unchecked(g, e.id)? {
            continue;
        }
        let idx = edge_index(g, e.id)?;
        debug_assert!(idx >= 1, "a minimal brace has no superfluous edges");
        let key = (idx, e.id);
        if chosen.is_none_or(|c| key < c) {
            chosen = Some(key);
        }
    }
    let (index, e) = chosen.ok_or(Error::Precondition(
        "a minimal brace outside the exceptional family has a strictly thin edge",
    ))?;

    let g_minus_e = g.delete_edge(e)?;
    let (h, prov) = g_minus_e.retract_traced();

    let mut j = h.clone();
    let mut f_in_h: BTreeSet<EdgeId> = BTreeSet::new();
    loop {
        let next = j
            .edges()
            .iter()
            .map(|edge| edge.id)
            .find(|&f| is_superfluous(&j, f).expect("edge of j"));
        match next {
            Some(f) => {
                f_in_h.insert(f);
                j = j.delete_edge(f)?;
            }
            None => break,
        }
    }

    let back = prov.inverse();
    let f_in_g: BTreeSet<EdgeId> = f_in_h
        .iter()
        .map(|&f| back.get(f).expect("F edges survive the retract"))
        .collect();

    let witness = locate_witness(&g_minus_e, index, &f_in_g)
        .ok_or(Error::Precondition("narrow witness exists for the preferred edge"))?;

    let stable_ext = if index == 1 && f_in_h.len() == 2 {
        Some(is_stable_extension_of(g, &j))
    } else {
        None
    };

    Ok(MppCertificate { edge: e, index, f_in_h, f_in_g, j, witness, stable_ext })
}

fn locate_witness(
    g_minus_e: &BipartiteGraph,
    index: u8,
    f_in_g: &BTreeSet<EdgeId>,
) -> Option<NarrowWitness> {
    if f_in_g.is_empty() {
        return Some(NarrowWitness::Empty);
    }
    let (_, outer) = inner_outer(g_minus_e);
    let incident_to = |v: VertexId| -> BTreeSet<EdgeId> {
        g_minus_e.incident_edges(v).into_iter().collect()
    };
    match index {
        1 => outer
            .iter()
            .find(|&&v| f_in_g.is_subset(&incident_to(v)))
            .map(|&v| NarrowWitness::OuterVertex(v)),
        2 => {
            for &u in &outer {
                for &w in &outer {
                    if u >= w || !g_minus_e.adjacent(u, w) {
                        continue;
                    }
                    let local: BTreeSet<EdgeId> =
                        incident_to(u).union(&incident_to(w)).copied().collect();
                    if f_in_g.is_subset(&local) {
                        return Some(NarrowWitness::OuterPair(u, w));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Check a certificate against the narrow-pair conditions. Returns the first
/// violated condition on failure.
pub fn verify_narrow(g: &BipartiteGraph, cert: &MppCertificate) -> Result<(), NarrowFailure> {
    if g.edge(cert.edge).is_none() {
        return Err(NarrowFailure::UnknownEdge);
    }
    if !strictly_thin_unchecked(g, cert.edge).map_err(|_| NarrowFailure::UnknownEdge)? {
        return Err(NarrowFailure::NotStrictlyThin);
    }
    if edge_index(g, cert.edge).map_err(|_| NarrowFailure::UnknownEdge)? != cert.index {
        return Err(NarrowFailure::IndexMismatch);
    }
    let g_minus_e = g.delete_edge(cert.edge).expect("edge verified above");
    let (h, prov) = g_minus_e.retract_traced();

    for &f in &cert.f_in_h {
        if h.edge(f).is_none() {
            return Err(NarrowFailure::FOutsideH);
        }
    }
    let back = prov.inverse();
    let expected_in_g: BTreeSet<EdgeId> = cert
        .f_in_h
        .iter()
        .filter_map(|&f| back.get(f))
        .collect();
    if expected_in_g != cert.f_in_g || expected_in_g.len() != cert.f_in_h.len() {
        return Err(NarrowFailure::FProvenanceMismatch);
    }

    let mut j = h;
    for &f in &cert.f_in_h {
        j = j.delete_edge(f).expect("F lies in H");
    }
    if !(is_brace(&j) && minimal_given_brace(&j)) {
        return Err(NarrowFailure::JNotMinimalBrace);
    }
    if canon_bicolored(&j) != canon_bicolored(&cert.j) {
        return Err(NarrowFailure::JMismatch);
    }
    if cert.f_in_h.len() > cert.index as usize + 1 {
        return Err(NarrowFailure::FTooLarge);
    }

    let (_, outer) = inner_outer(&g_minus_e);
    match (&cert.witness, cert.f_in_h.is_empty()) {
        (NarrowWitness::Empty, true) => {}
        (NarrowWitness::Empty, false) => return Err(NarrowFailure::MissingWitness),
        (NarrowWitness::OuterVertex(v), _) => {
            if !outer.contains(v) {
                return Err(NarrowFailure::WitnessNotOuter);
            }
            let local: BTreeSet<EdgeId> = g_minus_e.incident_edges(*v).into_iter().collect();
            if !cert.f_in_g.is_subset(&local) {
                return Err(NarrowFailure::FNotLocalToWitness);
            }
        }
        (NarrowWitness::OuterPair(u, w), _) => {
            if !outer.contains(u) || !outer.contains(w) {
                return Err(NarrowFailure::WitnessNotOuter);
            }
            if !g_minus_e.adjacent(*u, *w) {
                return Err(NarrowFailure::WitnessPairNotAdjacent);
            }
            let mut local: BTreeSet<EdgeId> = g_minus_e.incident_edges(*u).into_iter().collect();
            local.extend(g_minus_e.incident_edges(*w));
            if !cert.f_in_g.is_subset(&local) {
                return Err(NarrowFailure::FNotLocalToWitness);
            }
        }
    }

    // condition (iii): an end of f is cubic iff it is an outer vertex
    for &f in &cert.f_in_g {
        let edge = g_minus_e.edge(f).expect("F survives in G - e");
        for v in [edge.a, edge.b] {
            let cubic = g_minus_e.degree(v) == 3;
            if cubic != outer.contains(&v) {
                return Err(NarrowFailure::CubicityCondition);
            }
        }
    }

    if cert.index == 1 && cert.f_in_h.len() == 2 && !is_stable_extension_of(g, &cert.j) {
        return Err(NarrowFailure::NotStableExtension);
    }
    Ok(())
}
