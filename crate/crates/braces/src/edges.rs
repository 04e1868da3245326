//! The edge-classification ladder — removable, thin, strictly thin, index,
//! superfluous — and minimal-brace recognition.

use std::collections::BTreeSet;

use crate::cuts::find_nontrivial_tight_cut;
use crate::graph::{BipartiteGraph, EdgeId, Side, VertexId};
use crate::matching::{is_brace, is_matching_covered};
use crate::par;
use crate::Error;

/// Per-edge classification record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeClassification {
    pub edge: EdgeId,
    pub removable: bool,
    pub thin: bool,
    pub strictly_thin: bool,
    pub index: u8,
    pub superfluous: bool,
}

/// Removable: `G - e` is matching covered too. The caller guarantees `G` is
/// matching covered.
pub fn is_removable(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    Ok(is_matching_covered(&g.delete_edge(e)?))
}

/// Thin: the retract of `G - e` is a brace too. Verifies the precondition that
/// `G` is a brace of order six or more.
pub fn is_thin(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    if g.order() < 6 || !is_brace(g) {
        return Err(Error::Precondition("is_thin needs a brace of order six or more"));
    }
    thin_unchecked(g, e)
}

pub(crate) fn thin_unchecked(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    Ok(is_brace(&g.delete_edge(e)?.retract()))
}

/// Strictly thin: the retract of `G - e` is a simple brace. Verifies the
/// precondition that `G` is a simple brace of order six or more.
pub fn is_strictly_thin(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    if g.order() < 6 || !g.is_simple() || !is_brace(g) {
        return Err(Error::Precondition(
            "is_strictly_thin needs a simple brace of order six or more",
        ));
    }
    strictly_thin_unchecked(g, e)
}

pub(crate) fn strictly_thin_unchecked(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    let r = g.delete_edge(e)?.retract();
    Ok(r.is_simple() && is_brace(&r))
}

/// Number of cubic endpoints of `e`, equivalently the number of degree-two
/// vertices of `G - e`.
pub fn edge_index(g: &BipartiteGraph, e: EdgeId) -> Result<u8, Error> {
    let edge = g.edge(e).ok_or(Error::UnknownEdge(e))?;
    let mut index = 0;
    for v in [edge.a, edge.b] {
        if g.degree(v) == 3 {
            index += 1;
        }
    }
    Ok(index)
}

/// Superfluous: `G - e` is itself a brace. The caller guarantees `G` is a
/// simple brace.
pub fn is_superfluous(g: &BipartiteGraph, e: EdgeId) -> Result<bool, Error> {
    Ok(is_brace(&g.delete_edge(e)?))
}

/// Witness that an edge of a simple brace (order six or more) is not
/// superfluous: partitions of the classes with `|B1| = |A1| + 1` and `e` the
/// only edge joining `A1` to `B2`.
#[derive(Clone, Debug)]
pub struct NonSuperfluousCertificate {
    pub a1: BTreeSet<VertexId>,
    pub a2: BTreeSet<VertexId>,
    pub b1: BTreeSet<VertexId>,
    pub b2: BTreeSet<VertexId>,
}

impl NonSuperfluousCertificate {
    /// Check the certificate against the graph it was extracted from.
    pub fn verifies(&self, g: &BipartiteGraph, e: EdgeId) -> bool {
        if self.b1.len() != self.a1.len() + 1 {
            return false;
        }
        let crossing: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|edge| self.a1.contains(&edge.a) && self.b2.contains(&edge.b))
            .map(|edge| edge.id)
            .collect();
        crossing == [e]
    }
}

/// Extract the partition witness from the tight-cut shore of `G - e`, or `None`
/// when `e` is superfluous. The caller guarantees `G` is a simple brace of
/// order six or more.
pub fn non_superfluous_certificate(
    g: &BipartiteGraph,
    e: EdgeId,
) -> Result<Option<NonSuperfluousCertificate>, Error> {
    let deleted = g.delete_edge(e)?;
    if is_brace(&deleted) {
        return Ok(None);
    }
    let shore = find_nontrivial_tight_cut(&deleted)?
        .expect("a non-superfluous edge leaves a nontrivial tight cut behind");
    let minority = shore.minority_part(&deleted).expect("tight shores are odd");
    let majority = shore.majority_part(&deleted).expect("tight shores are odd");
    let all_a: BTreeSet<VertexId> = g.class_a().iter().copied().collect();
    let all_b: BTreeSet<VertexId> = g.class_b().iter().copied().collect();
    let minority_side = g
        .side(*minority.iter().next().expect("minority part is nonempty"))
        .expect("shore vertices belong to the graph");
    let cert = match minority_side {
        Side::A => NonSuperfluousCertificate {
            a1: minority.clone(),
            a2: all_a.difference(&minority).copied().collect(),
            b1: majority.clone(),
            b2: all_b.difference(&majority).copied().collect(),
        },
        Side::B => NonSuperfluousCertificate {
            a1: all_a.difference(&majority).copied().collect(),
            a2: majority.clone(),
            b1: all_b.difference(&minority).copied().collect(),
            b2: minority.clone(),
        },
    };
    debug_assert!(cert.verifies(g, e));
    Ok(Some(cert))
}

/// Minimal brace: a brace none of whose edges is superfluous. Braces of order
/// at most four count as minimal; for larger orders only edges joining two
/// noncubic vertices can be superfluous, so only those are tested.
pub fn is_minimal_brace(g: &BipartiteGraph) -> bool {
    is_brace(g) && minimal_given_brace(g)
}

pub(crate) fn minimal_given_brace(g: &BipartiteGraph) -> bool {
    if g.order() <= 4 {
        return true;
    }
    let noncubic: BTreeSet<VertexId> = g.noncubic_vertices().into_iter().collect();
    let candidates: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| noncubic.contains(&e.a) && noncubic.contains(&e.b))
        .map(|e| e.id)
        .collect();
    par::all(&candidates, |&e| {
        !is_brace(&g.delete_edge(e).expect("candidate edge exists"))
    })
}

/// Classify every edge. Requires a matching covered graph; the thin ladder is
/// reported as `false` where its preconditions do not hold (order at most four,
/// or a multigraph for the strictly-thin and superfluous flags).
pub fn classify_edges(g: &BipartiteGraph) -> Result<Vec<EdgeClassification>, Error> {
    if !is_matching_covered(g) {
        return Err(Error::Precondition("classify_edges needs a matching covered graph"));
    }
    let brace = is_brace(g);
    let thin_applies = brace && g.order() >= 6;
    let strict_applies = thin_applies && g.is_simple();
    let ids: Vec<EdgeId> = g.edges().iter().map(|e| e.id).collect();
    Ok(par::map_vec(&ids, |&id| {
        let removable = is_removable(g, id).expect("edge exists");
        let thin = thin_applies && thin_unchecked(g, id).expect("edge exists");
        let strictly_thin = strict_applies && strictly_thin_unchecked(g, id).expect("edge exists");
        let superfluous = strict_applies && is_superfluous(g, id).expect("edge exists");
        EdgeClassification {
            edge: id,
            removable,
            thin,
            strictly_thin,
            index: edge_index(g, id).expect("edge exists"),
            superfluous,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make, Family, FamilySpec};

    fn k33() -> BipartiteGraph {
        make(FamilySpec::new(Family::K33, None)).unwrap()
    }

    #[test]
    fn k33_edges_thin_not_strictly() {
        let g = k33();
        for e in g.edges().to_vec() {
            assert!(is_removable(&g, e.id).unwrap());
            assert!(is_thin(&g, e.id).unwrap());
            assert!(!is_strictly_thin(&g, e.id).unwrap());
            assert!(!is_superfluous(&g, e.id).unwrap());
            assert_eq!(edge_index(&g, e.id).unwrap(), 2);
        }
    }

    #[test]
    fn c4_edges_not_removable() {
        let c4 = make(FamilySpec::new(Family::C4, None)).unwrap();
        for e in c4.edges().to_vec() {
            assert!(!is_removable(&c4, e.id).unwrap());
        }
        assert!(is_thin(&c4, EdgeId(0)).is_err());
    }

    #[test]
    fn b8_plus_has_unique_superfluous_edge() {
        let g = make(FamilySpec::new(Family::B8Plus, None)).unwrap();
        let superfluous: Vec<EdgeId> = g
            .edges()
            .iter()
            .filter(|e| is_superfluous(&g, e.id).unwrap())
            .map(|e| e.id)
            .collect();
        assert_eq!(superfluous.len(), 1);
        assert_eq!(edge_index(&g, superfluous[0]).unwrap(), 0);
        assert!(!is_minimal_brace(&g));
    }

    #[test]
    fn q10_plus_is_minimal() {
        let g = make(FamilySpec::new(Family::Q10Plus, None)).unwrap();
        assert!(is_minimal_brace(&g));
        for e in g.edges().to_vec() {
            assert!(!is_superfluous(&g, e.id).unwrap());
        }
    }

    #[test]
    fn small_braces_are_minimal_by_convention() {
        for fam in [Family::K2, Family::C4] {
            assert!(is_minimal_brace(&make(FamilySpec::new(fam, None)).unwrap()));
        }
    }

    #[test]
    fn non_superfluous_certificates_verify() {
        let g = k33();
        for e in g.edges().to_vec() {
            let cert = non_superfluous_certificate(&g, e.id).unwrap().expect("K33 is minimal");
            assert!(cert.verifies(&g, e.id));
            assert_eq!(cert.a1.len(), 1);
        }
        let b8p = make(FamilySpec::new(Family::B8Plus, None)).unwrap();
        let sup = b8p
            .edges()
            .iter()
            .find(|e| is_superfluous(&b8p, e.id).unwrap())
            .unwrap()
            .id;
        assert!(non_superfluous_certificate(&b8p, sup).unwrap().is_none());
    }

    #[test]
    fn classification_ladder_on_q10_plus() {
        let g = make(FamilySpec::new(Family::Q10Plus, None)).unwrap();
        for c in classify_edges(&g).unwrap() {
            assert!(!c.superfluous, "Q10+ is minimal");
            if c.strictly_thin {
                assert!(c.thin);
            }
            if c.thin {
                assert!(c.removable);
            }
        }
        // Q10+ has a strictly thin edge of index one
        let st: Vec<_> = classify_edges(&g)
            .unwrap()
            .into_iter()
            .filter(|c| c.strictly_thin)
            .collect();
        assert!(st.iter().any(|c| c.index == 1));
    }
}
