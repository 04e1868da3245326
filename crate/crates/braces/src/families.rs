//! Constructors for the named graphs and families, and membership testing for
//! the exceptional set (K2, C4 and the McCuaig braces: prisms, Möbius ladders,
//! biwheels).

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::expand::stable_extension;
use crate::graph::{BipartiteGraph, VertexId};
use crate::iso::{canon_bicolored, CanonicalForm};
use crate::Error;

/// The named graphs and parameterized families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    K2,
    C4,
    K33,
    B8Plus,
    M10,
    Q10,
    Q10Plus,
    Q12,
    B12,
    Biwheel,
    Prism,
    Moebius,
    Q,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::K2 => "K2",
            Family::C4 => "C4",
            Family::K33 => "K33",
            Family::B8Plus => "B8plus",
            Family::M10 => "M10",
            Family::Q10 => "Q10",
            Family::Q10Plus => "Q10plus",
            Family::Q12 => "Q12",
            Family::B12 => "B12",
            Family::Biwheel => "biwheel",
            Family::Prism => "prism",
            Family::Moebius => "moebius",
            Family::Q => "Q",
        }
    }

    /// Fixed order of the non-parameterized members.
    fn fixed_order(self) -> Option<usize> {
        match self {
            Family::K2 => Some(2),
            Family::C4 => Some(4),
            Family::K33 => Some(6),
            Family::B8Plus => Some(8),
            Family::M10 | Family::Q10 | Family::Q10Plus => Some(10),
            Family::Q12 | Family::B12 => Some(12),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "k2" => Family::K2,
            "c4" => Family::C4,
            "k33" => Family::K33,
            "b8plus" | "b8+" => Family::B8Plus,
            "m10" => Family::M10,
            "q10" => Family::Q10,
            "q10plus" | "q10+" => Family::Q10Plus,
            "q12" => Family::Q12,
            "b12" => Family::B12,
            "biwheel" => Family::Biwheel,
            "prism" => Family::Prism,
            "moebius" => Family::Moebius,
            "q" => Family::Q,
            _ => return Err(Error::UnknownFamily(s.to_owned())),
        })
    }
}

/// A family together with the requested order (required for parameterized
/// families, optional sanity check for fixed ones).
#[derive(Clone, Copy, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub order: Option<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, order: Option<usize>) -> FamilySpec {
        FamilySpec { family, order }
    }
}

/// Build the named graph.
pub fn make(spec: FamilySpec) -> Result<BipartiteGraph, Error> {
    if let Some(fixed) = spec.family.fixed_order() {
        if let Some(o) = spec.order {
            if o != fixed {
                return Err(Error::BadFamilyOrder {
                    family: spec.family.name(),
                    order: o,
                    why: "this member has a fixed order",
                });
            }
        }
        return Ok(match spec.family {
            Family::K2 => BipartiteGraph::build(1, 1, &[(0, 0)]).unwrap(),
            Family::C4 => BipartiteGraph::build(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap(),
            Family::K33 => complete(3),
            Family::B8Plus => b8_plus(),
            Family::M10 => moebius(10).unwrap(),
            Family::Q10 => q10(),
            Family::Q10Plus => q10().add_edge(VertexId(0), VertexId(5)).unwrap(),
            Family::Q12 => q_family(12).unwrap(),
            Family::B12 => biwheel(12).unwrap(),
            _ => unreachable!(),
        });
    }
    let order = spec.order.ok_or(Error::BadFamilyOrder {
        family: spec.family.name(),
        order: 0,
        why: "parameterized family needs --order",
    })?;
    match spec.family {
        Family::Biwheel => biwheel(order),
        Family::Prism => prism(order),
        Family::Moebius => moebius(order),
        Family::Q => q_family(order),
        _ => unreachable!(),
    }
}

fn complete(n: usize) -> BipartiteGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    BipartiteGraph::build(n, n, &pairs).unwrap()
}

/// Biwheel B_{2n}: the cycle C_{2n-2} plus two nonadjacent hubs, one per class,
/// each adjacent to the full opposite class of the rim.
fn biwheel(order: usize) -> Result<BipartiteGraph, Error> {
    let n = check_even(Family::Biwheel, order)?;
    if n < 4 {
        return Err(Error::BadFamilyOrder {
            family: "biwheel",
            order,
            why: "biwheels start at order eight",
        });
    }
    // rim position 2i is the A-vertex i, position 2i+1 the B-vertex i;
    // hub indices n-1 in each class
    let rim = 2 * n - 2;
    let mut pairs = Vec::with_capacity(4 * n - 4);
    for pos in 0..rim {
        let next = (pos + 1) % rim;
        let (even, odd) = if pos % 2 == 0 { (pos, next) } else { (next, pos) };
        pairs.push((even / 2, odd / 2));
    }
    for i in 0..n - 1 {
        pairs.push((n - 1, i)); // A-hub to rim B
        pairs.push((i, n - 1)); // rim A to B-hub
    }
    Ok(BipartiteGraph::build(n, n, &pairs).unwrap())
}

/// Prism of order 2n (n even): two disjoint n-cycles joined by a perfect
/// matching of rungs. The parity constraint keeps the rungs across classes.
fn prism(order: usize) -> Result<BipartiteGraph, Error> {
    let n = check_even(Family::Prism, order)?;
    if n < 4 || n % 2 != 0 {
        return Err(Error::BadFamilyOrder {
            family: "prism",
            order,
            why: "prisms need order 2n with n even, n >= 4",
        });
    }
    // outer ring position i: class A iff i even (index i/2);
    // inner ring position i: class B iff i even (index n/2 + i/2 within B)
    let a_of_outer = |i: usize| i / 2;
    let b_of_outer = |i: usize| i / 2;
    let a_of_inner = |i: usize| n / 2 + i / 2;
    let b_of_inner = |i: usize| n / 2 + i / 2;
    let mut pairs = Vec::with_capacity(3 * n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (even, odd) = if i % 2 == 0 { (i, j) } else { (j, i) };
        pairs.push((a_of_outer(even), b_of_outer(odd)));
        pairs.push((a_of_inner(odd), b_of_inner(even)));
        // rung: outer i to inner i
        if i % 2 == 0 {
            pairs.push((a_of_outer(i), b_of_inner(i)));
        } else {
            pairs.push((a_of_inner(i), b_of_outer(i)));
        }
    }
    Ok(BipartiteGraph::build(n, n, &pairs).unwrap())
}

/// Möbius ladder of order 2n (n odd): the cycle C_{2n} plus its n antipodal
/// chords. The parity constraint keeps chords across classes.
fn moebius(order: usize) -> Result<BipartiteGraph, Error> {
    let n = check_even(Family::Moebius, order)?;
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadFamilyOrder {
            family: "moebius",
            order,
            why: "Möbius ladders need order 2n with n odd, n >= 3",
        });
    }
    let m = 2 * n;
    let mut pairs = Vec::with_capacity(3 * n);
    for pos in 0..m {
        let next = (pos + 1) % m;
        let (even, odd) = if pos % 2 == 0 { (pos, next) } else { (next, pos) };
        pairs.push((even / 2, odd / 2));
    }
    for pos in 0..n {
        // pos is even iff pos + n is odd, since n is odd
        let (even, odd) = if pos % 2 == 0 { (pos, pos + n) } else { (pos + n, pos) };
        pairs.push((even / 2, odd / 2));
    }
    Ok(BipartiteGraph::build(n, n, &pairs).unwrap())
}

/// Q10: two K_{2,3}'s joined by a perfect matching on their 3-sides.
/// A = {a1, a2, x1, x2, x3} as indices 0..5, B = {b1, b2, y1, y2, y3}.
fn q10() -> BipartiteGraph {
    let mut pairs = Vec::with_capacity(15);
    for a in 0..2 {
        for y in 2..5 {
            pairs.push((a, y));
        }
    }
    for b in 0..2 {
        for x in 2..5 {
            pairs.push((x, b));
        }
    }
    for i in 2..5 {
        pairs.push((i, i));
    }
    BipartiteGraph::build(5, 5, &pairs).unwrap()
}

fn b8_plus() -> BipartiteGraph {
    let b8 = biwheel(8).unwrap();
    // hubs are the last vertex of each class
    let hub_a = *b8.class_a().last().unwrap();
    let hub_b = *b8.class_b().last().unwrap();
    b8.add_edge(hub_a, hub_b).unwrap()
}

/// Q_{2n} for n >= 6: Q12 is the stable-extension of Q10 at its unique
/// qualifying stable set, and each further member extends the previous one at
/// its noncubic vertices.
fn q_family(order: usize) -> Result<BipartiteGraph, Error> {
    let n = check_even(Family::Q, order)?;
    if n < 6 {
        return Err(Error::BadFamilyOrder {
            family: "Q",
            order,
            why: "the Q family starts at order twelve",
        });
    }
    let base = q10();
    // S = {a1, a2, b1, b2}
    let s = [VertexId(0), VertexId(1), VertexId(5), VertexId(6)].into_iter().collect();
    let mut g = stable_extension(&base, &s).expect("the Q10 seed set is stable");
    for _ in 7..=n {
        let s = g.noncubic_vertices().into_iter().collect();
        g = stable_extension(&g, &s).expect("noncubic vertices of Q_{2n} form a stable 2+2 set");
    }
    Ok(g)
}

fn check_even(family: Family, order: usize) -> Result<usize, Error> {
    if order % 2 != 0 || order == 0 {
        return Err(Error::BadFamilyOrder {
            family: family.name(),
            order,
            why: "order must be a positive even count",
        });
    }
    Ok(order / 2)
}

/// Canonical forms of every exceptional-family member of the given order.
pub(crate) fn exceptional_forms(order: usize) -> Vec<CanonicalForm> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Vec<CanonicalForm>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(found) = cache.lock().unwrap().get(&order) {
        return found.clone();
    }
    let mut graphs: Vec<BipartiteGraph> = Vec::new();
    match order {
        2 => graphs.push(make(FamilySpec::new(Family::K2, None)).unwrap()),
        4 => graphs.push(make(FamilySpec::new(Family::C4, None)).unwrap()),
        _ => {
            for family in [Family::Biwheel, Family::Prism, Family::Moebius] {
                if let Ok(g) = make(FamilySpec::new(family, Some(order))) {
                    graphs.push(g);
                }
            }
        }
    }
    let mut forms: Vec<CanonicalForm> = graphs.iter().map(canon_bicolored).collect();
    forms.sort();
    forms.dedup();
    cache.lock().unwrap().insert(order, forms.clone());
    forms
}

/// Membership in the exceptional set: isomorphic to K2, C4, or a prism, Möbius
/// ladder or biwheel of its order.
pub fn is_mccuaig(g: &BipartiteGraph) -> bool {
    is_mccuaig_form(g.order(), &canon_bicolored(g))
}

pub(crate) fn is_mccuaig_form(order: usize, form: &CanonicalForm) -> bool {
    exceptional_forms(order).binary_search(form).is_ok()
}
