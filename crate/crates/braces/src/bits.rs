//! Bitmask working form of a graph for the matching-theoretic predicates.
//!
//! Rows hold the simple underlying graph (one bit per vertex pair); degrees keep
//! multiplicity. Everything here assumes color classes of at most 32 vertices,
//! which covers the crate's exhaustive operating range with plenty of slack.

use crate::graph::{BipartiteGraph, Side};

pub(crate) const MAX_CLASS: usize = 32;

/// Simple-underlying adjacency rows plus multiplicity-aware degrees.
#[derive(Clone)]
pub(crate) struct Bits {
    pub na: usize,
    pub nb: usize,
    /// Row per A-vertex; bit `j` set iff joined to the j-th B-vertex.
    pub adj: [u32; MAX_CLASS],
    /// Row per B-vertex over A-vertices.
    pub radj: [u32; MAX_CLASS],
    pub deg_a: [u16; MAX_CLASS],
    pub deg_b: [u16; MAX_CLASS],
    pub simple: bool,
}

impl Bits {
    pub fn from_graph(g: &BipartiteGraph) -> Bits {
        let na = g.class_a().len();
        let nb = g.class_b().len();
        assert!(
            na <= MAX_CLASS && nb <= MAX_CLASS,
            "color classes larger than {MAX_CLASS} are outside the supported range"
        );
        let mut b = Bits {
            na,
            nb,
            adj: [0; MAX_CLASS],
            radj: [0; MAX_CLASS],
            deg_a: [0; MAX_CLASS],
            deg_b: [0; MAX_CLASS],
            simple: true,
        };
        for e in g.edges() {
            let (_, ai) = g.class_index(e.a).expect("A endpoint");
            let (_, bi) = g.class_index(e.b).expect("B endpoint");
            if b.adj[ai] & (1 << bi) != 0 {
                b.simple = false;
            }
            b.adj[ai] |= 1 << bi;
            b.radj[bi] |= 1 << ai;
            b.deg_a[ai] += 1;
            b.deg_b[bi] += 1;
        }
        b
    }

    pub fn order(&self) -> usize {
        self.na + self.nb
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return false;
        }
        let (mut sa, mut sb): (u32, u32) = if self.na > 0 { (1, 0) } else { (0, 1) };
        loop {
            let mut nb_mask = sb;
            let mut m = sa;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                nb_mask |= self.adj[a];
            }
            let mut na_mask = sa;
            let mut m = nb_mask;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                na_mask |= self.radj[b];
            }
            if na_mask == sa && nb_mask == sb {
                break;
            }
            sa = na_mask;
            sb = nb_mask;
        }
        sa.count_ones() as usize == self.na && sb.count_ones() as usize == self.nb
    }

    /// `|N(Z)| - |Z|` for a subset mask of one class.
    pub fn surplus_mask(&self, side: Side, z: u32) -> i32 {
        let rows = match side {
            Side::A => &self.adj,
            Side::B => &self.radj,
        };
        let mut nbrs: u32 = 0;
        let mut m = z;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            nbrs |= rows[v];
        }
        nbrs.count_ones() as i32 - z.count_ones() as i32
    }
}

/// Maximum matching by deterministic augmenting-path search. Returns its size;
/// `match_a[i]` / `match_b[j]` hold partner indices or -1.
pub(crate) fn max_matching(
    adj: &[u32; MAX_CLASS],
    na: usize,
    nb: usize,
    match_a: &mut [i32; MAX_CLASS],
    match_b: &mut [i32; MAX_CLASS],
) -> usize {
    match_a[..na].fill(-1);
    match_b[..nb].fill(-1);
    let mut size = 0;
    for a in 0..na {
        let mut visited: u32 = 0;
        if augment(adj, a, 0, match_a, match_b, &mut visited) {
            size += 1;
        }
    }
    size
}

/// One alternating-path search from `a`, ignoring B-vertices in `banned_b`.
fn augment(
    adj: &[u32; MAX_CLASS],
    a: usize,
    banned_b: u32,
    match_a: &mut [i32; MAX_CLASS],
    match_b: &mut [i32; MAX_CLASS],
    visited: &mut u32,
) -> bool {
    let mut cand = adj[a] & !*visited & !banned_b;
    while cand != 0 {
        let b = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        *visited |= 1 << b;
        let partner = match_b[b];
        if partner < 0 || augment(adj, partner as usize, banned_b, match_a, match_b, visited) {
            match_b[b] = a as i32;
            match_a[a] = b as i32;
            return true;
        }
    }
    false
}

/// Whether a perfect matching exists.
pub(crate) fn has_perfect_matching(bits: &Bits) -> bool {
    if bits.na != bits.nb {
        return false;
    }
    if bits.na == 0 {
        return true;
    }
    let mut ma = [-1i32; MAX_CLASS];
    let mut mb = [-1i32; MAX_CLASS];
    max_matching(&bits.adj, bits.na, bits.nb, &mut ma, &mut mb) == bits.na
}

/// Perfect matching as partner arrays, if one exists.
pub(crate) fn perfect_matching(bits: &Bits) -> Option<([i32; MAX_CLASS], [i32; MAX_CLASS])> {
    if bits.na != bits.nb {
        return None;
    }
    let mut ma = [-1i32; MAX_CLASS];
    let mut mb = [-1i32; MAX_CLASS];
    if max_matching(&bits.adj, bits.na, bits.nb, &mut ma, &mut mb) == bits.na {
        Some((ma, mb))
    } else {
        None
    }
}

/// Does `G - removed` retain a matching of size `need`? Warm-started from a base
/// matching of the full graph, so only a couple of augmentations run per call.
pub(crate) fn removal_retains_matching(
    bits: &Bits,
    base_a: &[i32; MAX_CLASS],
    base_b: &[i32; MAX_CLASS],
    rem_a: u32,
    rem_b: u32,
    need: usize,
) -> bool {
    let mut ma = *base_a;
    let mut mb = *base_b;
    let mut size = 0;
    for a in 0..bits.na {
        if rem_a & (1 << a) != 0 {
            ma[a] = -1;
            continue;
        }
        let b = ma[a];
        if b >= 0 && rem_b & (1 << b as u32) != 0 {
            ma[a] = -1;
        } else if b >= 0 {
            size += 1;
        }
    }
    for b in 0..bits.nb {
        let a = mb[b];
        if rem_b & (1 << b) != 0 || (a >= 0 && rem_a & (1 << a as u32) != 0) {
            mb[b] = -1;
        }
    }
    if size >= need {
        return true;
    }
    for a in 0..bits.na {
        if size >= need {
            return true;
        }
        if rem_a & (1 << a) != 0 || ma[a] >= 0 {
            continue;
        }
        let mut visited = rem_b; // never visit removed B-vertices
        if augment(&bits.adj, a, rem_b, &mut ma, &mut mb, &mut visited) {
            size += 1;
        }
    }
    size >= need
}

/// Criterion: `G - a1 - a2 - b1 - b2` has a perfect matching for every choice of
/// four distinct vertices. Assumes a perfect matching of `bits` as warm start.
pub(crate) fn two_extendable(
    bits: &Bits,
    base_a: &[i32; MAX_CLASS],
    base_b: &[i32; MAX_CLASS],
) -> bool {
    let n = bits.na;
    let need = n - 2;
    for a1 in 0..n {
        for a2 in (a1 + 1)..n {
            let rem_a = (1 << a1) | (1 << a2);
            for b1 in 0..n {
                for b2 in (b1 + 1)..n {
                    let rem_b = (1 << b1) | (1 << b2);
                    if !removal_retains_matching(bits, base_a, base_b, rem_a, rem_b, need) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Per-A-vertex masks of allowed pairs: pairs lying in some perfect matching.
/// `None` when no perfect matching exists.
pub(crate) fn allowed_pairs(bits: &Bits) -> Option<[u32; MAX_CLASS]> {
    let (ma, _mb) = perfect_matching(bits)?;
    let n = bits.na;
    // Digraph on A ∪ B: matched pair b -> a, any pair a -> b. A pair not in the
    // matching is allowed iff its ends share a strongly connected component;
    // reachability closure stands in for an SCC pass at this scale.
    let mut reach = [0u64; 2 * MAX_CLASS];
    for a in 0..n {
        reach[a] = (bits.adj[a] as u64) << n;
    }
    for b in 0..n {
        reach[n + b] = 1u64 << ma_partner(&ma, b);
    }
    loop {
        let mut changed = false;
        for u in 0..2 * n {
            let mut acc = reach[u];
            let mut m = reach[u];
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                acc |= reach[v];
            }
            if acc != reach[u] {
                reach[u] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut allowed = [0u32; MAX_CLASS];
    for a in 0..n {
        let mut m = bits.adj[a];
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            let in_matching = ma[a] == b as i32;
            let same_scc =
                reach[a] & (1 << (n + b)) != 0 && reach[n + b] & (1 << a) != 0;
            if in_matching || same_scc {
                allowed[a] |= 1 << b;
            }
        }
    }
    Some(allowed)
}

fn ma_partner(ma: &[i32; MAX_CLASS], b: usize) -> usize {
    // invert on demand: the caller guarantees a perfect matching
    ma.iter()
        .position(|&x| x == b as i32)
        .expect("perfect matching covers every B-vertex")
}

/// Connected, balanced, and every pair allowed.
pub(crate) fn matching_covered(bits: &Bits) -> bool {
    if bits.na != bits.nb || bits.na == 0 || !bits.is_connected() {
        return false;
    }
    match allowed_pairs(bits) {
        Some(allowed) => (0..bits.na).all(|a| allowed[a] == bits.adj[a]),
        None => false,
    }
}
