//! The verification harness: exhaustive checks of the small-order
//! characterizations, the generation-oracle equivalence, the thin-edge
//! properties, and the extremal bound. The CLI `verify` command and the
//! acceptance suite both run these.

use std::collections::BTreeSet;
use std::fmt;

use crate::edges::{strictly_thin_unchecked, thin_unchecked};
use crate::enumerate::{brute_force_graphs, minimal_braces, Corpus, Violation};
use crate::families::{is_mccuaig_form, make, Family, FamilySpec};
use crate::iso::{canon_bicolored, CanonicalForm};
use crate::matching::is_brace;
use crate::par;

/// Outcome of one harness pass.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "check {}: ok ({} checked)", self.name, self.checked)
        } else {
            writeln!(f, "check {}: FAIL ({} checked)", self.name, self.checked)?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

fn family_forms(specs: &[(Family, Option<usize>)]) -> BTreeSet<CanonicalForm> {
    specs
        .iter()
        .map(|&(family, order)| canon_bicolored(&make(FamilySpec::new(family, order)).unwrap()))
        .collect()
}

fn expect_set(
    report: &mut CheckReport,
    what: &str,
    got: BTreeSet<CanonicalForm>,
    expected: BTreeSet<CanonicalForm>,
) {
    report.checked += got.len().max(expected.len());
    for form in got.difference(&expected) {
        report.violations.push(Violation {
            form: form.clone(),
            what: format!("{what}: unexpected member"),
        });
    }
    for form in expected.difference(&got) {
        report.violations.push(Violation {
            form: form.clone(),
            what: format!("{what}: expected member missing"),
        });
    }
}

/// Exact small-order characterizations: minimal braces of order at most 8, of
/// order 10, of order 12 with size at least 20, and the connected simple cubic
/// bipartite graphs of order 10 (by the brute-force route).
pub fn verify_small_order(corpus: &Corpus) -> CheckReport {
    let mut report = CheckReport { name: "small-order-characterizations", ..Default::default() };
    let minimal = minimal_braces(&corpus.slice_up_to(12));

    let upto8: BTreeSet<CanonicalForm> = minimal
        .iter()
        .filter(|e| e.order() <= 8)
        .map(|e| e.form.clone())
        .collect();
    expect_set(
        &mut report,
        "minimal braces of order <= 8",
        upto8,
        family_forms(&[
            (Family::K2, None),
            (Family::C4, None),
            (Family::K33, None),
            (Family::Biwheel, Some(8)),
        ]),
    );

    if corpus.max_order() >= 10 {
        let at10: BTreeSet<CanonicalForm> =
            minimal.entries(10).iter().map(|e| e.form.clone()).collect();
        expect_set(
            &mut report,
            "minimal braces of order 10",
            at10,
            family_forms(&[
                (Family::M10, None),
                (Family::Biwheel, Some(10)),
                (Family::Q10Plus, None),
            ]),
        );

        let cubic10: BTreeSet<CanonicalForm> = brute_force_graphs(10, 3)
            .expect("order 10 is within the oracle guardrail")
            .into_iter()
            .filter(|f| {
                let g = f.to_graph();
                let cubic = g.vertices().all(|v| g.degree(v) == 3);
                f.order() == 10 && cubic
            })
            .collect();
        expect_set(
            &mut report,
            "connected simple cubic bipartite graphs of order 10",
            cubic10,
            family_forms(&[(Family::M10, None), (Family::Q10, None)]),
        );
    }

    if corpus.max_order() >= 12 {
        let big12: BTreeSet<CanonicalForm> = minimal
            .entries(12)
            .iter()
            .filter(|e| e.size() >= 20)
            .map(|e| e.form.clone())
            .collect();
        expect_set(
            &mut report,
            "minimal braces of order 12 and size >= 20",
            big12,
            family_forms(&[(Family::B12, None), (Family::Q12, None)]),
        );
    }
    report
}

/// Generation-theorem closure check: the expansion-generated corpus equals the
/// brute-force oracle's braces at every order up to ten.
pub fn verify_generation_oracle(corpus: &Corpus) -> CheckReport {
    let mut report = CheckReport { name: "generation-oracle-equivalence", ..Default::default() };
    let cap = corpus.max_order().min(10);

    let small: Vec<CanonicalForm> = brute_force_graphs(cap.min(4), 1)
        .expect("within guardrail")
        .into_iter()
        .filter(|f| is_brace(&f.to_graph()))
        .collect();
    let mut oracle: BTreeSet<CanonicalForm> = small.into_iter().collect();
    if cap >= 6 {
        // braces of order six or more are 3-connected, hence minimum degree 3
        let forms = brute_force_graphs(cap, 3).expect("within guardrail");
        let keep = par::map_vec(&forms, |f| f.order() >= 6 && is_brace(&f.to_graph()));
        oracle.extend(forms.into_iter().zip(keep).filter_map(|(f, k)| k.then_some(f)));
    }

    let generated: BTreeSet<CanonicalForm> = corpus
        .iter()
        .filter(|e| e.order() <= cap)
        .map(|e| e.form.clone())
        .collect();
    expect_set(
        &mut report,
        &format!("braces of order <= {cap}"),
        generated,
        oracle,
    );
    report
}

/// Thin-edge properties over the whole corpus: every brace of order six or
/// more has at least two thin edges; outside the exceptional family at least
/// one edge is strictly thin; inside it, none is.
pub fn verify_thin_properties(corpus: &Corpus) -> CheckReport {
    let mut report = CheckReport { name: "thin-and-strictly-thin-edges", ..Default::default() };
    for order in corpus.orders().collect::<Vec<_>>() {
        if order < 6 {
            continue;
        }
        let entries = corpus.entries(order);
        report.checked += entries.len();
        let failures = par::map_vec(entries, |entry| {
            let exceptional = is_mccuaig_form(order, &entry.form);
            let g = entry.graph();
            let mut thin = 0usize;
            let mut strictly = 0usize;
            for e in g.edges() {
                if !thin_unchecked(&g, e.id).expect("edge of g") {
                    continue;
                }
                thin += 1;
                if strictly_thin_unchecked(&g, e.id).expect("edge of g") {
                    strictly += 1;
                }
                if !exceptional && thin >= 2 && strictly >= 1 {
                    break;
                }
            }
            if thin < 2 {
                Some(format!("only {thin} thin edges"))
            } else if exceptional && strictly > 0 {
                Some("exceptional-family brace with a strictly thin edge".into())
            } else if !exceptional && strictly == 0 {
                Some("no strictly thin edge outside the exceptional family".into())
            } else {
                None
            }
        });
        for (entry, failure) in entries.iter().zip(failures) {
            if let Some(what) = failure {
                report.violations.push(Violation { form: entry.form.clone(), what });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::generate_braces;

    #[test]
    fn harness_clean_at_order_eight() {
        let corpus = generate_braces(8, false).unwrap();
        assert!(verify_small_order(&corpus).ok());
        assert!(verify_generation_oracle(&corpus).ok());
        assert!(verify_thin_properties(&corpus).ok());
    }
}
