//! Isomorph-rejected generation of all simple braces up to a target order via
//! the expansion operations, an independent brute-force oracle, and the
//! verification harness for the extremal bound.
//!
//! Layers go up in order; index-one and index-two expansions feed the next
//! layers while index-zero expansions stay within a layer and are closed by
//! fixpoint iteration before the layer is sealed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::edges::minimal_given_brace;
use crate::expand::{expansions_filtered, find_mpp, verify_narrow, ExpansionOp};
use crate::families::{is_mccuaig_form, make, Family, FamilySpec};
use crate::graph::BipartiteGraph;
use crate::iso::{canon_bicolored, CanonicalForm};
use crate::matching::is_brace;
use crate::par;
use crate::Error;

/// Guardrails for the enumerator: the default ceiling and the hard one.
pub const DEFAULT_MAX_ORDER: usize = 14;
pub const HARD_MAX_ORDER: usize = 16;
/// Ceiling for the brute-force oracle, which walks every bipartite graph.
pub const BRUTE_FORCE_MAX_ORDER: usize = 10;

const BATCH: usize = 512;

/// How a corpus member was first reached.
#[derive(Clone, Debug)]
pub enum Provenance {
    Seed { family: String },
    Expanded { parent: CanonicalForm, op: ExpansionOp },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Seed { family } => write!(f, "seed:{family}"),
            Provenance::Expanded { parent, op } => write!(f, "{op}<-{}", parent.to_hex()),
        }
    }
}

/// One enumerated simple brace.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub form: CanonicalForm,
    pub provenance: Provenance,
}

impl CorpusEntry {
    pub fn order(&self) -> usize {
        self.form.order()
    }

    pub fn size(&self) -> usize {
        self.form.size()
    }

    pub fn graph(&self) -> BipartiteGraph {
        self.form.to_graph()
    }
}

/// All simple braces up to a target order, one entry per isomorphism class,
/// layered by order and sorted by canonical form within a layer.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    layers: BTreeMap<usize, Vec<CorpusEntry>>,
}

impl Corpus {
    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.layers.keys().copied()
    }

    pub fn max_order(&self) -> usize {
        self.layers.keys().max().copied().unwrap_or(0)
    }

    pub fn entries(&self, order: usize) -> &[CorpusEntry] {
        self.layers.get(&order).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.layers.values().flatten()
    }

    pub fn len(&self) -> usize {
        self.layers.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn contains(&self, form: &CanonicalForm) -> bool {
        self.layers
            .get(&form.order())
            .is_some_and(|layer| layer.binary_search_by(|e| e.form.cmp(form)).is_ok())
    }

    /// The sub-corpus of layers up to `max_order`.
    pub fn slice_up_to(&self, max_order: usize) -> Corpus {
        Corpus {
            layers: self
                .layers
                .iter()
                .filter(|(&o, _)| o <= max_order)
                .map(|(&o, l)| (o, l.clone()))
                .collect(),
        }
    }

    fn insert_layer(&mut self, order: usize, mut entries: Vec<CorpusEntry>) {
        entries.sort_by(|x, y| x.form.cmp(&y.form));
        self.layers.insert(order, entries);
    }
}

fn seeds_for(order: usize) -> Vec<(BipartiteGraph, String)> {
    match order {
        2 => vec![(make(FamilySpec::new(Family::K2, None)).unwrap(), "K2".into())],
        4 => vec![(make(FamilySpec::new(Family::C4, None)).unwrap(), "C4".into())],
        _ => [Family::Biwheel, Family::Prism, Family::Moebius]
            .into_iter()
            .filter_map(|family| {
                make(FamilySpec::new(family, Some(order)))
                    .ok()
                    .map(|g| (g, format!("{}({order})", family.name())))
            })
            .collect(),
    }
}

fn check_generation_order(max_order: usize, override_guardrail: bool) -> Result<(), Error> {
    if max_order < 2 || max_order % 2 != 0 {
        return Err(Error::Precondition("max order must be a positive even count"));
    }
    if max_order > HARD_MAX_ORDER {
        return Err(Error::Guardrail { requested: max_order, limit: HARD_MAX_ORDER });
    }
    if max_order > DEFAULT_MAX_ORDER && !override_guardrail {
        return Err(Error::Guardrail { requested: max_order, limit: DEFAULT_MAX_ORDER });
    }
    Ok(())
}

/// Generate every simple brace of order up to `max_order`: the exceptional
/// family seeds each layer, expansions feed the rest, and every stored graph is
/// re-verified to be a simple brace on insertion.
pub fn generate_braces(max_order: usize, override_guardrail: bool) -> Result<Corpus, Error> {
    check_generation_order(max_order, override_guardrail)?;
    let mut corpus = Corpus::default();
    // candidates for future layers: form -> provenance, first reach wins
    let mut pending: BTreeMap<usize, BTreeMap<CanonicalForm, Provenance>> = BTreeMap::new();

    for order in (2..=max_order).step_by(2) {
        let mut layer: BTreeMap<CanonicalForm, Provenance> = pending.remove(&order).unwrap_or_default();
        for (g, family) in seeds_for(order) {
            layer.entry(canon_bicolored(&g)).or_insert(Provenance::Seed { family });
        }
        verify_new_members(layer.keys().cloned().collect::<Vec<_>>());

        let want = [
            true,
            order + 2 <= max_order,
            order + 4 <= max_order,
        ];
        let mut worklist: Vec<CanonicalForm> = layer.keys().cloned().collect();
        while !worklist.is_empty() {
            let take = worklist.len().min(BATCH);
            let batch: Vec<CanonicalForm> = worklist.drain(worklist.len() - take..).collect();
            let produced = par::map_vec(&batch, |form| {
                let g = form.to_graph();
                expansions_filtered(&g, want)
                    .into_iter()
                    .map(|(child, exp)| (child, exp.op))
                    .collect::<Vec<_>>()
            });
            let mut fresh: BTreeMap<CanonicalForm, Provenance> = BTreeMap::new();
            for (parent_idx, outputs) in produced.into_iter().enumerate() {
                let parent = &batch[parent_idx];
                for (child, op) in outputs {
                    let target = child.order();
                    let prov = || Provenance::Expanded { parent: parent.clone(), op };
                    if target == order {
                        if !layer.contains_key(&child) && !fresh.contains_key(&child) {
                            fresh.insert(child, prov());
                        }
                    } else if target <= max_order {
                        pending.entry(target).or_default().entry(child).or_insert_with(prov);
                    }
                }
            }
            verify_new_members(fresh.keys().cloned().collect::<Vec<_>>());
            for (form, prov) in fresh {
                worklist.push(form.clone());
                layer.insert(form, prov);
            }
        }

        corpus.insert_layer(
            order,
            layer
                .into_iter()
                .map(|(form, provenance)| CorpusEntry { form, provenance })
                .collect(),
        );
    }
    Ok(corpus)
}

/// Corpus invariant: every stored graph is a simple brace. Expansion outputs
/// are braces by construction, so a failure here means a bug, not bad input.
fn verify_new_members(forms: Vec<CanonicalForm>) {
    let ok = par::all(&forms, |form| {
        let g = form.to_graph();
        g.is_simple() && is_brace(&g)
    });
    assert!(ok, "enumerated candidate failed the simple-brace invariant");
}

/// All connected simple bipartite graphs with balanced classes, minimum degree
/// at least `min_degree`, of every order up to `max_order`: exhaustive
/// edge-augmentation with canonical-form rejection, independent of the
/// expansion machinery. Sorted by canonical form.
pub fn brute_force_graphs(max_order: usize, min_degree: usize) -> Result<Vec<CanonicalForm>, Error> {
    if max_order > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::Guardrail { requested: max_order, limit: BRUTE_FORCE_MAX_ORDER });
    }
    let mut found: BTreeSet<CanonicalForm> = BTreeSet::new();
    for k in 1..=max_order / 2 {
        let empty = BipartiteGraph::build(k, k, &[]).unwrap();
        let mut level: BTreeSet<CanonicalForm> = [canon_bicolored(&empty)].into();
        while !level.is_empty() {
            let members: Vec<CanonicalForm> = level.iter().cloned().collect();
            let next_and_keep = par::map_vec(&members, |form| {
                let g = form.to_graph();
                let keep = g.is_connected()
                    && g.vertices().all(|v| g.degree(v) >= min_degree);
                let mut children = Vec::new();
                for &a in g.class_a() {
                    for &b in g.class_b() {
                        if !g.adjacent(a, b) {
                            children.push(canon_bicolored(&g.add_edge(a, b).unwrap()));
                        }
                    }
                }
                (keep, children)
            });
            let mut next: BTreeSet<CanonicalForm> = BTreeSet::new();
            for (member, (keep, children)) in members.into_iter().zip(next_and_keep) {
                if keep {
                    found.insert(member);
                }
                next.extend(children);
            }
            level = next;
        }
    }
    Ok(found.into_iter().collect())
}

/// The minimal-brace slice of a corpus: provenance preserved, layers refiltered.
pub fn minimal_braces(corpus: &Corpus) -> Corpus {
    let mut out = Corpus::default();
    for order in corpus.orders().collect::<Vec<_>>() {
        let entries = corpus.entries(order);
        let keep = par::map_vec(entries, |e| minimal_given_brace(&e.graph()));
        let layer: Vec<CorpusEntry> = entries
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(e, _)| e.clone())
            .collect();
        out.insert_layer(order, layer);
    }
    out
}

/// One failed assertion of the verification harness.
#[derive(Clone, Debug)]
pub struct Violation {
    pub form: CanonicalForm,
    pub what: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.form.to_hex(), self.what)
    }
}

/// Report of [`verify_bound`]. Bound and equality-set failures land in
/// `bound_violations`; narrow-certificate and arithmetic failures in
/// `certificate_violations`.
#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    pub minimal_checked: usize,
    pub certificates_checked: usize,
    pub equality_forms: Vec<CanonicalForm>,
    pub bound_violations: Vec<Violation>,
    pub certificate_violations: Vec<Violation>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.bound_violations.is_empty() && self.certificate_violations.is_empty()
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut all = self.bound_violations.clone();
        all.extend(self.certificate_violations.clone());
        all
    }
}

fn base_exception_forms() -> Vec<CanonicalForm> {
    let mut forms: Vec<CanonicalForm> = [
        make(FamilySpec::new(Family::K2, None)).unwrap(),
        make(FamilySpec::new(Family::C4, None)).unwrap(),
        make(FamilySpec::new(Family::K33, None)).unwrap(),
        make(FamilySpec::new(Family::Biwheel, Some(8))).unwrap(),
        make(FamilySpec::new(Family::Biwheel, Some(10))).unwrap(),
        make(FamilySpec::new(Family::Q10Plus, None)).unwrap(),
    ]
    .iter()
    .map(canon_bicolored)
    .collect();
    forms.sort();
    forms
}

/// Check the extremal bound `m <= 5n - 10` with its exact equality set over
/// every minimal brace of the corpus outside the six small exceptions, and the
/// narrow-pair certificate (with its order/size arithmetic) for every minimal
/// brace outside the exceptional family.
pub fn verify_bound(corpus: &Corpus) -> BoundReport {
    let minimal = minimal_braces(corpus);
    let mut report = BoundReport::default();
    let excluded = base_exception_forms();

    let mut expected_equality: Vec<CanonicalForm> = Vec::new();
    if corpus.max_order() >= 10 {
        expected_equality.push(canon_bicolored(&make(FamilySpec::new(Family::M10, None)).unwrap()));
    }
    if corpus.max_order() >= 12 {
        expected_equality.push(canon_bicolored(&make(FamilySpec::new(Family::B12, None)).unwrap()));
    }
    for order in (12..=corpus.max_order()).step_by(2) {
        expected_equality
            .push(canon_bicolored(&make(FamilySpec::new(Family::Q, Some(order))).unwrap()));
    }
    expected_equality.sort();
    expected_equality.dedup();

    for entry in minimal.iter() {
        if excluded.binary_search(&entry.form).is_ok() {
            continue;
        }
        report.minimal_checked += 1;
        let n = entry.order() / 2;
        let m = entry.size();
        let bound = 5 * n as i64 - 10;
        if m as i64 > bound {
            report.bound_violations.push(Violation {
                form: entry.form.clone(),
                what: format!("size {m} exceeds 5n-10 = {bound}"),
            });
        } else if m as i64 == bound {
            report.equality_forms.push(entry.form.clone());
        }
    }
    report.equality_forms.sort();
    if report.equality_forms != expected_equality {
        for unexpected in report.equality_forms.iter().filter(|f| expected_equality.binary_search(f).is_err()) {
            report.bound_violations.push(Violation {
                form: unexpected.clone(),
                what: "meets the bound with equality but is not M10, B12 or a Q-family member".into(),
            });
        }
        for missing in expected_equality.iter().filter(|f| report.equality_forms.binary_search(f).is_err()) {
            report.bound_violations.push(Violation {
                form: missing.clone(),
                what: "expected equality member missing from the minimal corpus".into(),
            });
        }
    }

    // Narrow certificates for every minimal brace outside the exceptional set.
    let targets: Vec<&CorpusEntry> = minimal
        .iter()
        .filter(|e| !is_mccuaig_form(e.order(), &e.form))
        .collect();
    report.certificates_checked = targets.len();
    let failures = par::map_vec(&targets, |entry| {
        let g = entry.graph();
        let cert = match find_mpp(&g) {
            Ok(c) => c,
            Err(err) => return Some(format!("no minimality-preserving pair: {err}")),
        };
        if let Err(fail) = verify_narrow(&g, &cert) {
            return Some(format!("certificate fails narrow verification: {fail}"));
        }
        let n_g = (g.order() / 2) as i64;
        let m_g = g.size() as i64;
        let n_j = (cert.j.order() / 2) as i64;
        let m_j = cert.j.size() as i64;
        let idx = cert.index as i64;
        let f = cert.f_in_h.len() as i64;
        if n_j != n_g - idx || m_j != m_g - 1 - 2 * idx - f {
            return Some(format!(
                "order/size arithmetic off: nJ={n_j} mJ={m_j} vs nG={n_g} mG={m_g} index={idx} |F|={f}"
            ));
        }
        // edge-bound preservation along the certificate
        if m_j <= 5 * n_j - 10 {
            if m_g > 5 * n_g - 10 {
                return Some("bound not preserved along the certificate".into());
            }
            if m_g == 5 * n_g - 10 && !(m_j == 5 * n_j - 10 && idx == 1 && f == 2) {
                return Some("equality case must come from index one with |F| = 2".into());
            }
        }
        None
    });
    for (entry, failure) in targets.iter().zip(failures) {
        if let Some(what) = failure {
            report.certificate_violations.push(Violation { form: entry.form.clone(), what });
        }
    }
    report
}
