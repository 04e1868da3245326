//! Loop-free bipartite multigraphs and the structural surgeries used throughout:
//! edge deletion/addition, shore contraction, bicontraction, retract and bi-splitting.
//!
//! Graphs are immutable values: every surgery returns a new graph. Vertex and edge
//! ids are unique within a graph; edge ids are stable across deletions of other
//! edges. Contraction-style surgeries assign fresh ids to edges whose endpoints
//! move and report the old-id -> new-id correspondence in an [`EdgeMap`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::Error;

/// Identifier of a vertex, unique within one graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

/// Identifier of an edge, unique within one graph and stable across deletions
/// of other edges.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// The two color classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// An edge record; `a` always lies in class A and `b` in class B.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: EdgeId,
    pub a: VertexId,
    pub b: VertexId,
}

/// Correspondence between edge ids of a source graph and the graph produced by a
/// surgery. Edges absent from the map did not survive.
#[derive(Clone, Debug, Default)]
pub struct EdgeMap(pub BTreeMap<EdgeId, EdgeId>);

impl EdgeMap {
    fn identity(g: &BipartiteGraph) -> Self {
        EdgeMap(g.edges.iter().map(|e| (e.id, e.id)).collect())
    }

    /// Follow `self` then `next`.
    pub fn compose(&self, next: &EdgeMap) -> EdgeMap {
        EdgeMap(
            self.0
                .iter()
                .filter_map(|(old, mid)| next.0.get(mid).map(|new| (*old, *new)))
                .collect(),
        )
    }

    pub fn get(&self, old: EdgeId) -> Option<EdgeId> {
        self.0.get(&old).copied()
    }

    /// Invert the (injective) correspondence.
    pub fn inverse(&self) -> EdgeMap {
        EdgeMap(self.0.iter().map(|(old, new)| (*new, *old)).collect())
    }
}

/// A loop-free bipartite multigraph with stable vertex and edge identifiers.
///
/// Parallel edges are permitted and preserved by every surgery; simplicity is a
/// queried predicate, never silently enforced.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    class_a: Vec<VertexId>,
    class_b: Vec<VertexId>,
    edges: Vec<Edge>, // ascending by id
    next_vertex: u32,
    next_edge: u32,
}

impl BipartiteGraph {
    /// Build a graph on `na + nb` vertices from `(a, b)` index pairs. Class A
    /// receives ids `0..na`, class B ids `na..na+nb`; edge ids follow input order.
    /// Duplicate pairs encode parallel edges.
    pub fn build(na: usize, nb: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let mut g = BipartiteGraph {
            class_a: (0..na as u32).map(VertexId).collect(),
            class_b: (na as u32..(na + nb) as u32).map(VertexId).collect(),
            edges: Vec::with_capacity(pairs.len()),
            next_vertex: (na + nb) as u32,
            next_edge: 0,
        };
        for &(a, b) in pairs {
            if a >= na || b >= nb {
                return Err(Error::EndpointOutOfRange { a, b, na, nb });
            }
            let id = EdgeId(g.next_edge);
            g.next_edge += 1;
            g.edges.push(Edge {
                id,
                a: VertexId(a as u32),
                b: VertexId((na + b) as u32),
            });
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.class_a.len() + self.class_b.len()
    }

    /// Number of edges, counting multiplicity.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn class_a(&self) -> &[VertexId] {
        &self.class_a
    }

    pub fn class_b(&self) -> &[VertexId] {
        &self.class_b
    }

    pub fn class(&self, side: Side) -> &[VertexId] {
        match side {
            Side::A => &self.class_a,
            Side::B => &self.class_b,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn side(&self, v: VertexId) -> Option<Side> {
        if self.class_a.contains(&v) {
            Some(Side::A)
        } else if self.class_b.contains(&v) {
            Some(Side::B)
        } else {
            None
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.class_a.iter().chain(self.class_b.iter()).copied()
    }

    /// Position of `v` within its class, the index used by the text format.
    pub fn class_index(&self, v: VertexId) -> Option<(Side, usize)> {
        if let Some(i) = self.class_a.iter().position(|&u| u == v) {
            return Some((Side::A, i));
        }
        self.class_b.iter().position(|&u| u == v).map(|i| (Side::B, i))
    }

    /// Degree counting multiplicity.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Ids of edges incident with `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| e.a == v || e.b == v)
            .map(|e| e.id)
            .collect()
    }

    /// Number of parallel copies joining `a` and `b`.
    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .count()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.multiplicity(u, v) > 0
    }

    /// True iff no two edges join the same pair of vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.a, e.b)))
    }

    /// The simple underlying graph: one edge per parallel class, lowest id kept.
    pub fn underlying_simple(&self) -> Self {
        let mut g = self.clone();
        let mut seen = BTreeSet::new();
        g.edges.retain(|e| seen.insert((e.a, e.b)));
        g
    }

    /// True for number of vertices >= 1 and a single component.
    pub fn is_connected(&self) -> bool {
        let start = match self.class_a.first().or(self.class_b.first()) {
            Some(&v) => v,
            None => return false,
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let u = if e.a == v {
                    e.b
                } else if e.b == v {
                    e.a
                } else {
                    continue;
                };
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.order()
    }

    /// A vertex is cubic when its degree is exactly three; noncubic vertices have
    /// degree four or more.
    pub fn is_cubic_vertex(&self, v: VertexId) -> bool {
        self.degree(v) == 3
    }

    /// All vertices of degree four or more.
    pub fn noncubic_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) >= 4).collect()
    }

    /// The graph `G - e`; every other edge id is unchanged.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Self, Error> {
        let pos = self
            .edges
            .iter()
            .position(|x| x.id == e)
            .ok_or(Error::UnknownEdge(e))?;
        let mut g = self.clone();
        g.edges.remove(pos);
        Ok(g)
    }

    /// The graph `G + ab` with a fresh edge id.
    pub fn add_edge(&self, a: VertexId, b: VertexId) -> Result<Self, Error> {
        match (self.side(a), self.side(b)) {
            (Some(Side::A), Some(Side::B)) => {}
            (None, _) => return Err(Error::UnknownVertex(a)),
            (_, None) => return Err(Error::UnknownVertex(b)),
            _ => return Err(Error::SameClassEndpoints { u: a, v: b }),
        }
        let mut g = self.clone();
        let id = EdgeId(g.next_edge);
        g.next_edge += 1;
        g.edges.push(Edge { id, a, b });
        Ok(g)
    }

    fn fresh_vertex(&mut self, side: Side) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        match side {
            Side::A => self.class_a.push(v),
            Side::B => self.class_b.push(v),
        }
        v
    }

    /// Append an isolated vertex to the given class.
    pub fn add_vertex(&self, side: Side) -> (Self, VertexId) {
        let mut g = self.clone();
        let v = g.fresh_vertex(side);
        (g, v)
    }

    /// Contract the shore `X` to a single vertex, placed in the class of the
    /// majority part of `X`. Edges inside `X` vanish; edges crossing the cut get
    /// fresh ids (reported in the map); untouched edges keep theirs.
    ///
    /// Only odd shores are accepted: the tight cuts this operation serves always
    /// have odd shores.
    pub fn contract_shore_traced(&self, shore: &Shore) -> Result<(Self, EdgeMap), Error> {
        let x = shore.vertices();
        if x.is_empty() || x.len() >= self.order() {
            return Err(Error::EmptyOrFullShore);
        }
        if x.len() % 2 == 0 {
            return Err(Error::EvenShore { size: x.len() });
        }
        for &v in x {
            if self.side(v).is_none() {
                return Err(Error::UnknownVertex(v));
            }
        }
        let in_a = x.iter().filter(|&&v| self.side(v) == Some(Side::A)).count();
        let in_b = x.len() - in_a;
        let merged_side = if in_a > in_b { Side::A } else { Side::B };
        // every crossing edge must leave the majority part, or the contraction
        // vertex would need to sit in both classes (tight shores satisfy this)
        for e in &self.edges {
            let inside_side = match (x.contains(&e.a), x.contains(&e.b)) {
                (true, false) => Side::A,
                (false, true) => Side::B,
                _ => continue,
            };
            if inside_side != merged_side {
                return Err(Error::NonBipartiteContraction);
            }
        }

        let mut g = BipartiteGraph {
            class_a: self.class_a.iter().copied().filter(|v| !x.contains(v)).collect(),
            class_b: self.class_b.iter().copied().filter(|v| !x.contains(v)).collect(),
            edges: Vec::with_capacity(self.edges.len()),
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
        };
        let merged = g.fresh_vertex(merged_side);

        let mut map = BTreeMap::new();
        for e in &self.edges {
            let a_in = x.contains(&e.a);
            let b_in = x.contains(&e.b);
            match (a_in, b_in) {
                (true, true) => {} // vanishes
                (false, false) => {
                    map.insert(e.id, e.id);
                    g.edges.push(*e);
                }
                (true, false) => {
                    let id = EdgeId(g.next_edge);
                    g.next_edge += 1;
                    map.insert(e.id, id);
                    g.edges.push(Edge { id, a: merged, b: e.b });
                }
                (false, true) => {
                    let id = EdgeId(g.next_edge);
                    g.next_edge += 1;
                    map.insert(e.id, id);
                    g.edges.push(Edge { id, a: e.a, b: merged });
                }
            }
        }
        Ok((g, EdgeMap(map)))
    }

    /// [`Self::contract_shore_traced`] without the edge correspondence.
    pub fn contract_shore(&self, shore: &Shore) -> Result<Self, Error> {
        self.contract_shore_traced(shore).map(|(g, _)| g)
    }

    /// Contract the two edges at a degree-two vertex with two distinct neighbors;
    /// identical to contracting the shore `{v, n1, n2}`.
    pub fn bicontract_traced(&self, v: VertexId) -> Result<(Self, EdgeMap), Error> {
        if self.side(v).is_none() {
            return Err(Error::UnknownVertex(v));
        }
        let deg = self.degree(v);
        if deg != 2 {
            return Err(Error::NotDegreeTwo { vertex: v, degree: deg });
        }
        let nbrs = self.neighbors(v);
        if nbrs.len() != 2 {
            return Err(Error::ParallelNeighbors { vertex: v });
        }
        let shore = Shore::new(self, [v, nbrs[0], nbrs[1]].into_iter().collect())?;
        self.contract_shore_traced(&shore)
    }

    pub fn bicontract(&self, v: VertexId) -> Result<Self, Error> {
        self.bicontract_traced(v).map(|(g, _)| g)
    }

    /// The retract: bicontract degree-two vertices with two distinct neighbors
    /// (lowest vertex id first) until none remains. A graph that shrinks to a
    /// doubled `K2` is returned as that two-vertex multigraph.
    pub fn retract_traced(&self) -> (Self, EdgeMap) {
        let mut g = self.clone();
        let mut map = EdgeMap::identity(self);
        loop {
            // stop rather than shrink below two vertices
            if g.order() <= 3 {
                return (g, map);
            }
            let target = g.vertices().find(|&v| {
                g.degree(v) == 2 && g.neighbors(v).len() == 2
            });
            match target {
                Some(v) => {
                    let (next, step) = g
                        .bicontract_traced(v)
                        .expect("candidate satisfies bicontraction preconditions");
                    map = map.compose(&step);
                    g = next;
                }
                None => return (g, map),
            }
        }
    }

    pub fn retract(&self) -> Self {
        self.retract_traced().0
    }

    /// Bi-split the noncubic vertex `v`: replace it by `v1` (carrying `part1`)
    /// and `v2` (carrying `part2`) plus a new degree-two vertex in the opposite
    /// class joined to both. Each part must carry at least two edges.
    ///
    /// Returns the new graph together with `(v1, v2, w0)`.
    pub fn bi_split(
        &self,
        v: VertexId,
        part1: &BTreeSet<EdgeId>,
        part2: &BTreeSet<EdgeId>,
    ) -> Result<(Self, VertexId, VertexId, VertexId), Error> {
        let side = self.side(v).ok_or(Error::UnknownVertex(v))?;
        let incident: BTreeSet<EdgeId> = self.incident_edges(v).into_iter().collect();
        if incident.len() < 4 {
            return Err(Error::CubicVertex { vertex: v });
        }
        if part1.len() < 2 || part2.len() < 2 {
            return Err(Error::BadSplit("each part must carry at least two edges"));
        }
        if !part1.is_disjoint(part2) || (part1 | part2) != incident {
            return Err(Error::BadSplit("parts must partition the edges at the vertex"));
        }

        let mut g = self.clone();
        match side {
            Side::A => g.class_a.retain(|&u| u != v),
            Side::B => g.class_b.retain(|&u| u != v),
        }
        let v1 = g.fresh_vertex(side);
        let v2 = g.fresh_vertex(side);
        let w0 = g.fresh_vertex(side.opposite());
        for e in g.edges.iter_mut() {
            if !part1.contains(&e.id) && !part2.contains(&e.id) {
                continue;
            }
            let carrier = if part1.contains(&e.id) { v1 } else { v2 };
            if e.a == v {
                e.a = carrier;
            } else {
                e.b = carrier;
            }
        }
        for carrier in [v1, v2] {
            let id = EdgeId(g.next_edge);
            g.next_edge += 1;
            let (a, b) = match side {
                Side::A => (carrier, w0),
                Side::B => (w0, carrier),
            };
            g.edges.push(Edge { id, a, b });
        }
        Ok((g, v1, v2, w0))
    }
}

/// A vertex subset `X` representing the cut `∂(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shore {
    vertices: BTreeSet<VertexId>,
}

impl Shore {
    /// A nonempty proper subset of the vertices of `g`.
    pub fn new(g: &BipartiteGraph, vertices: BTreeSet<VertexId>) -> Result<Self, Error> {
        if vertices.is_empty() || vertices.len() >= g.order() {
            return Err(Error::EmptyOrFullShore);
        }
        for &v in &vertices {
            if g.side(v).is_none() {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(Shore { vertices })
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// The complement shore `X̄`.
    pub fn complement(&self, g: &BipartiteGraph) -> Shore {
        Shore {
            vertices: g.vertices().filter(|v| !self.vertices.contains(v)).collect(),
        }
    }

    fn parts(&self, g: &BipartiteGraph) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let in_a: BTreeSet<_> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| g.side(v) == Some(Side::A))
            .collect();
        let in_b: BTreeSet<_> = self.vertices.difference(&in_a).copied().collect();
        (in_a, in_b)
    }

    /// The larger of `A ∩ X` and `B ∩ X`; `None` when they tie (even shores).
    pub fn majority_part(&self, g: &BipartiteGraph) -> Option<BTreeSet<VertexId>> {
        let (in_a, in_b) = self.parts(g);
        match in_a.len().cmp(&in_b.len()) {
            std::cmp::Ordering::Greater => Some(in_a),
            std::cmp::Ordering::Less => Some(in_b),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// The smaller of `A ∩ X` and `B ∩ X`; `None` when they tie.
    pub fn minority_part(&self, g: &BipartiteGraph) -> Option<BTreeSet<VertexId>> {
        let (in_a, in_b) = self.parts(g);
        match in_a.len().cmp(&in_b.len()) {
            std::cmp::Ordering::Greater => Some(in_b),
            std::cmp::Ordering::Less => Some(in_a),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// Trivial iff `|X| = 1` or `|X| = |V| - 1`.
    pub fn is_trivial(&self, g: &BipartiteGraph) -> bool {
        self.len() == 1 || self.len() == g.order() - 1
    }

    /// The edges of the cut `∂(X)`.
    pub fn cut_edges(&self, g: &BipartiteGraph) -> Vec<EdgeId> {
        g.edges()
            .iter()
            .filter(|e| self.contains(e.a) != self.contains(e.b))
            .map(|e| e.id)
            .collect()
    }
}
