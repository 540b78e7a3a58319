//! Brute-force concept enumerators for desk-sized contexts.
//!
//! These are deliberately simple: every candidate is generated from subsets
//! and checked directly. They back the correctness tests of the clustering
//! kernel and serve tiny contexts to the analyst.
//!
//! Dyadic enumeration includes the boundary concepts (`(∅′′, ∅′)` and
//! `(M′, M′′)`); triadic enumeration excludes boxes with an empty component.

use crate::axis::ElementId;
use crate::dyadic::{DyadicContext, FormalConcept, Side};
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::triadic::{TriAxis, TriadicContext, Triconcept, Triple};

pub const DEFAULT_CONCEPT_CAP: usize = 20;
pub const DEFAULT_TRICONCEPT_CAP: usize = 12;

fn subsets(universe: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << universe).map(move |mask| {
        ElementSet::from_ids(
            universe,
            (0..universe as ElementId).filter(move |i| mask >> i & 1 == 1),
        )
    })
}

fn lex_key(set: &ElementSet) -> Vec<ElementId> {
    set.to_vec()
}

/// All formal concepts, found by closing every subset of the smaller axis.
/// Sorted by extent size, then extent ids, then intent ids.
pub fn enumerate_formal_concepts(
    context: &DyadicContext,
    cap: usize,
) -> Result<Vec<FormalConcept>> {
    let (ng, nm) = (context.objects().len(), context.attributes().len());
    let side = if ng <= nm {
        Side::Objects
    } else {
        Side::Attributes
    };
    let smaller = ng.min(nm);
    if smaller > cap.min(63) {
        return Err(Error::CapExceeded {
            what: "smaller context axis".into(),
            size: smaller,
            cap,
        });
    }
    let mut concepts: Vec<FormalConcept> = subsets(smaller)
        .map(|s| {
            let closed = context.closure(side, &s)?;
            let opposite = context.galois(side, &closed)?;
            Ok(match side {
                Side::Objects => FormalConcept {
                    extent: closed,
                    intent: opposite,
                },
                Side::Attributes => FormalConcept {
                    extent: opposite,
                    intent: closed,
                },
            })
        })
        .collect::<Result<_>>()?;
    concepts.sort_by(|a, b| {
        a.extent
            .len()
            .cmp(&b.extent.len())
            .then_with(|| lex_key(&a.extent).cmp(&lex_key(&b.extent)))
            .then_with(|| lex_key(&a.intent).cmp(&lex_key(&b.intent)))
    });
    concepts.dedup();
    Ok(concepts)
}

/// All triadic concepts with nonempty components.
///
/// For each nonempty object subset and attribute subset the modus is forced
/// (every condition completing the box); the candidate is kept only if no
/// object or attribute can be added. Candidates are abandoned as soon as the
/// forced modus is empty.
pub fn enumerate_triconcepts(context: &TriadicContext, cap: usize) -> Result<Vec<Triconcept>> {
    for axis in TriAxis::ALL {
        let size = context.axis(axis).len();
        if size > cap.min(30) {
            return Err(Error::CapExceeded {
                what: format!("{} axis", context.axis(axis).name()),
                size,
                cap,
            });
        }
    }
    let [ng, nm, nb] = context.dims();
    let incident = |g, m, b| context.contains(Triple::new(g, m, b));
    // conditions completing every (g, m) in A × B
    let forced_modus = |a: &ElementSet, b: &ElementSet| {
        (0..nb as ElementId)
            .filter(|&c| a.iter().all(|g| b.iter().all(|m| incident(g, m, c))))
            .collect::<Vec<_>>()
    };

    let mut out = Vec::new();
    for a in subsets(ng).filter(|s| !s.is_empty()) {
        for b in subsets(nm).filter(|s| !s.is_empty()) {
            let modus = forced_modus(&a, &b);
            if modus.is_empty() {
                continue;
            }
            let c = ElementSet::from_ids(nb, modus.iter().copied());
            let object_grows = (0..ng as ElementId)
                .filter(|g| !a.contains(*g))
                .any(|g| b.iter().all(|m| c.iter().all(|x| incident(g, m, x))));
            if object_grows {
                continue;
            }
            let attribute_grows = (0..nm as ElementId)
                .filter(|m| !b.contains(*m))
                .any(|m| a.iter().all(|g| c.iter().all(|x| incident(g, m, x))));
            if attribute_grows {
                continue;
            }
            out.push(Triconcept {
                extent: a.clone(),
                intent: b,
                modus: c,
            });
        }
    }
    out.sort_by(|x, y| {
        (lex_key(&x.extent), lex_key(&x.intent), lex_key(&x.modus)).cmp(&(
            lex_key(&y.extent),
            lex_key(&y.intent),
            lex_key(&y.modus),
        ))
    });
    Ok(out)
}
