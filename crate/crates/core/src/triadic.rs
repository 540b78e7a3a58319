//! Triadic contexts, prime operators, dyadic projections and OAC-triclusters.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::axis::{ElementId, LabelTable};
use crate::dyadic::DyadicContext;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::ElementSet;
use crate::triclustering::{canonical_key, TriclusterKey};

/// One of the three axes of a triadic context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriAxis {
    Object,
    Attribute,
    Condition,
}

impl TriAxis {
    pub const ALL: [TriAxis; 3] = [TriAxis::Object, TriAxis::Attribute, TriAxis::Condition];

    /// 1-based index: objects 1, attributes 2, conditions 3.
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(TriAxis::Object),
            2 => Ok(TriAxis::Attribute),
            3 => Ok(TriAxis::Condition),
            other => Err(Error::InvalidAxis(other)),
        }
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// The two remaining axes in ascending order.
    pub fn others(self) -> (TriAxis, TriAxis) {
        match self {
            TriAxis::Object => (TriAxis::Attribute, TriAxis::Condition),
            TriAxis::Attribute => (TriAxis::Object, TriAxis::Condition),
            TriAxis::Condition => (TriAxis::Object, TriAxis::Attribute),
        }
    }
}

/// An incidence `(g, m, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub object: ElementId,
    pub attribute: ElementId,
    pub condition: ElementId,
}

impl Triple {
    pub fn new(object: ElementId, attribute: ElementId, condition: ElementId) -> Self {
        Triple {
            object,
            attribute,
            condition,
        }
    }

    pub fn get(&self, axis: TriAxis) -> ElementId {
        match axis {
            TriAxis::Object => self.object,
            TriAxis::Attribute => self.attribute,
            TriAxis::Condition => self.condition,
        }
    }

    /// Components on the two axes other than `missing`, in axis order.
    fn pair_without(&self, missing: TriAxis) -> (ElementId, ElementId) {
        let (j, k) = missing.others();
        (self.get(j), self.get(k))
    }
}

/// A triadic context `(G, M, B, I)`.
///
/// Triples are kept sorted and unique. Three pair indexes back the prime
/// operators: `(g, m) ↦ (g, m)′`, `(g, b) ↦ (g, b)′` and `(m, b) ↦ (m, b)′`.
#[derive(Clone, Debug)]
pub struct TriadicContext {
    objects: LabelTable,
    attributes: LabelTable,
    conditions: LabelTable,
    triples: Vec<Triple>,
    primes: [HashMap<(ElementId, ElementId), ElementSet>; 3],
}

impl TriadicContext {
    pub fn new(
        objects: LabelTable,
        attributes: LabelTable,
        conditions: LabelTable,
        triples: impl IntoIterator<Item = Triple>,
    ) -> Result<Self> {
        let mut triples: Vec<Triple> = triples.into_iter().collect();
        for t in &triples {
            objects.check_id(t.object)?;
            attributes.check_id(t.attribute)?;
            conditions.check_id(t.condition)?;
        }
        triples.sort_unstable();
        triples.dedup();

        let sizes = [objects.len(), attributes.len(), conditions.len()];
        let mut primes: [HashMap<(ElementId, ElementId), ElementSet>; 3] = Default::default();
        for t in &triples {
            for axis in TriAxis::ALL {
                let slot = axis as usize;
                primes[slot]
                    .entry(t.pair_without(axis))
                    .or_insert_with(|| ElementSet::empty(sizes[slot]))
                    .insert(t.get(axis));
            }
        }
        Ok(TriadicContext {
            objects,
            attributes,
            conditions,
            triples,
            primes,
        })
    }

    pub fn empty() -> Self {
        TriadicContext::new(
            LabelTable::new("object"),
            LabelTable::new("attribute"),
            LabelTable::new("condition"),
            [],
        )
        .expect("empty context is valid")
    }

    /// Interns labels in first-appearance order.
    pub fn from_labeled_triples<'a>(
        triples: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Self {
        let mut objects = LabelTable::new("object");
        let mut attributes = LabelTable::new("attribute");
        let mut conditions = LabelTable::new("condition");
        let ids: Vec<Triple> = triples
            .into_iter()
            .map(|(g, m, b)| {
                Triple::new(
                    objects.intern(g),
                    attributes.intern(m),
                    conditions.intern(b),
                )
            })
            .collect();
        TriadicContext::new(objects, attributes, conditions, ids).expect("interned ids are valid")
    }

    pub fn objects(&self) -> &LabelTable {
        &self.objects
    }

    pub fn attributes(&self) -> &LabelTable {
        &self.attributes
    }

    pub fn conditions(&self) -> &LabelTable {
        &self.conditions
    }

    pub fn axis(&self, axis: TriAxis) -> &LabelTable {
        match axis {
            TriAxis::Object => &self.objects,
            TriAxis::Attribute => &self.attributes,
            TriAxis::Condition => &self.conditions,
        }
    }

    /// `[|G|, |M|, |B|]`.
    pub fn dims(&self) -> [usize; 3] {
        [
            self.objects.len(),
            self.attributes.len(),
            self.conditions.len(),
        ]
    }

    /// Triples in ascending `(g, m, b)` order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn incidence_len(&self) -> usize {
        self.triples.len()
    }

    pub fn contains(&self, t: Triple) -> bool {
        self.primes[TriAxis::Condition as usize]
            .get(&(t.object, t.attribute))
            .is_some_and(|c| c.contains(t.condition))
    }

    /// Label form of a triple.
    pub fn describe(&self, t: Triple) -> String {
        format!(
            "({}, {}, {})",
            self.objects.label(t.object).unwrap_or("?"),
            self.attributes.label(t.attribute).unwrap_or("?"),
            self.conditions.label(t.condition).unwrap_or("?"),
        )
    }

    /// Triples whose object is `g`.
    pub fn triples_of_object(&self, g: ElementId) -> &[Triple] {
        let start = self.triples.partition_point(|t| t.object < g);
        let end = self.triples.partition_point(|t| t.object <= g);
        &self.triples[start..end]
    }

    /// Prime of a pair: every element on `missing` completing the pair to a
    /// triple of `I`. The pair is given in axis order of the remaining axes,
    /// e.g. `(g, m)` for `missing == Condition`.
    pub fn prime_pair(&self, missing: TriAxis, pair: (ElementId, ElementId)) -> Result<ElementSet> {
        let (j, k) = missing.others();
        self.axis(j).check_id(pair.0)?;
        self.axis(k).check_id(pair.1)?;
        Ok(self.prime_unchecked(missing, pair))
    }

    fn prime_unchecked(&self, missing: TriAxis, pair: (ElementId, ElementId)) -> ElementSet {
        self.primes[missing as usize]
            .get(&pair)
            .cloned()
            .unwrap_or_else(|| ElementSet::empty(self.axis(missing).len()))
    }

    /// Dyadic context `K^(i) = (X_i, X_j × X_k, I^(i))` with `j < k`. The
    /// composite attribute for `(x_j, x_k)` has id `x_j·|X_k| + x_k`.
    pub fn project_dyadic(&self, axis: TriAxis) -> DyadicContext {
        let (j, k) = axis.others();
        let (xj, xk) = (self.axis(j), self.axis(k));
        let mut composite = LabelTable::new("pair");
        for a in xj.labels() {
            for b in xk.labels() {
                composite.intern(&format!("({a},{b})"));
            }
        }
        let width = xk.len() as ElementId;
        let pairs = self
            .triples
            .iter()
            .map(|t| (t.get(axis), t.get(j) * width + t.get(k)));
        DyadicContext::new(self.axis(axis).clone(), composite, pairs)
            .expect("projected ids are valid")
    }

    /// Composite set `A_j × A_k` on the attribute axis of `project_dyadic(axis)`.
    pub fn pair_product(&self, axis: TriAxis, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let (_, k) = axis.others();
        let width = self.axis(k).len() as ElementId;
        let mut out = ElementSet::empty(a.universe() * b.universe());
        for x in a.iter() {
            for y in b.iter() {
                out.insert(x * width + y);
            }
        }
        out
    }

    fn check_sets(&self, a: &ElementSet, b: &ElementSet, c: &ElementSet) -> Result<()> {
        self.objects.check_set(a)?;
        self.attributes.check_set(b)?;
        self.conditions.check_set(c)
    }

    /// Number of triples of `I` inside `A × B × C`.
    pub fn count_inside(&self, a: &ElementSet, b: &ElementSet, c: &ElementSet) -> u64 {
        let by_gm = &self.primes[TriAxis::Condition as usize];
        let mut inside = 0u64;
        for g in a.iter() {
            for m in b.iter() {
                if let Some(conds) = by_gm.get(&(g, m)) {
                    inside += conds.intersection_len(c) as u64;
                }
            }
        }
        inside
    }

    /// `|I ∩ (A × B × C)| / (|A|·|B|·|C|)`.
    pub fn tricluster_density(
        &self,
        a: &ElementSet,
        b: &ElementSet,
        c: &ElementSet,
    ) -> Result<Rational> {
        self.check_sets(a, b, c)?;
        for (set, name) in [(a, "object"), (b, "attribute"), (c, "condition")] {
            if set.is_empty() {
                return Err(Error::EmptySet(name));
            }
        }
        let volume = (a.len() as u64) * (b.len() as u64) * (c.len() as u64);
        Ok(Rational::new(self.count_inside(a, b, c), volume))
    }

    /// Builds `((m,b)′, (g,b)′, (g,m)′)` for an incident triple.
    pub fn build_tricluster(&self, t: Triple) -> Result<Tricluster> {
        self.objects.check_id(t.object)?;
        self.attributes.check_id(t.attribute)?;
        self.conditions.check_id(t.condition)?;
        if !self.contains(t) {
            return Err(Error::NotIncident(self.describe(t)));
        }
        let (extent, intent, modus) = self.prime_sets(t);
        let density = self.tricluster_density(&extent, &intent, &modus)?;
        Ok(Tricluster::assemble(extent, intent, modus, t, density))
    }

    /// The three prime sets of an incident triple, without density.
    pub(crate) fn prime_sets(&self, t: Triple) -> (ElementSet, ElementSet, ElementSet) {
        (
            self.prime_unchecked(TriAxis::Object, (t.attribute, t.condition)),
            self.prime_unchecked(TriAxis::Attribute, (t.object, t.condition)),
            self.prime_unchecked(TriAxis::Condition, (t.object, t.attribute)),
        )
    }

    /// True when `A × B × C ⊆ I`, all three sets are nonempty, and no element
    /// can be added to any single axis without leaving `I`.
    pub fn is_triconcept(&self, a: &ElementSet, b: &ElementSet, c: &ElementSet) -> Result<bool> {
        self.check_sets(a, b, c)?;
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Ok(false);
        }
        let volume = (a.len() * b.len() * c.len()) as u64;
        if self.count_inside(a, b, c) != volume {
            return Ok(false);
        }
        let single = |universe: usize, id| ElementSet::from_ids(universe, [id]);
        let [ng, nm, nb] = self.dims();
        let grows = (0..ng as ElementId)
            .filter(|g| !a.contains(*g))
            .any(|g| self.count_inside(&single(ng, g), b, c) == (b.len() * c.len()) as u64)
            || (0..nm as ElementId)
                .filter(|m| !b.contains(*m))
                .any(|m| self.count_inside(a, &single(nm, m), c) == (a.len() * c.len()) as u64)
            || (0..nb as ElementId)
                .filter(|x| !c.contains(*x))
                .any(|x| self.count_inside(a, b, &single(nb, x)) == (a.len() * b.len()) as u64);
        Ok(!grows)
    }

    /// Relabels every axis in natural label order (`u2` before `u10`) and
    /// re-sorts triples. Two contexts with the same labeled incidence map to
    /// identical canonical contexts regardless of input line order.
    pub fn canonicalized(&self) -> TriadicContext {
        fn sorted(table: &LabelTable) -> (LabelTable, Vec<ElementId>) {
            let mut order: Vec<ElementId> = (0..table.len() as ElementId).collect();
            let labels = table.labels();
            order.sort_by(|&x, &y| label_order(&labels[x as usize], &labels[y as usize]));
            let mut remap = vec![0; table.len()];
            for (new, &old) in order.iter().enumerate() {
                remap[old as usize] = new as ElementId;
            }
            let relabeled = LabelTable::from_labels(
                table.name(),
                order.iter().map(|&i| labels[i as usize].clone()),
            )
            .expect("labels are distinct");
            (relabeled, remap)
        }
        let (objects, rg) = sorted(&self.objects);
        let (attributes, rm) = sorted(&self.attributes);
        let (conditions, rb) = sorted(&self.conditions);
        let triples = self.triples.iter().map(|t| {
            Triple::new(
                rg[t.object as usize],
                rm[t.attribute as usize],
                rb[t.condition as usize],
            )
        });
        TriadicContext::new(objects, attributes, conditions, triples)
            .expect("remapped ids are valid")
    }
}

/// Natural order with a plain byte-order tie-break so the order is total.
pub fn label_order(a: &str, b: &str) -> Ordering {
    natord::compare(a, b).then_with(|| a.cmp(b))
}

/// An OAC-tricluster `(A, B, C)` with cached density and content key.
#[derive(Clone, PartialEq, Eq)]
pub struct Tricluster {
    extent: ElementSet,
    intent: ElementSet,
    modus: ElementSet,
    generator: Triple,
    density: Rational,
    key: TriclusterKey,
}

impl Tricluster {
    pub(crate) fn assemble(
        extent: ElementSet,
        intent: ElementSet,
        modus: ElementSet,
        generator: Triple,
        density: Rational,
    ) -> Self {
        let key = canonical_key(&extent, &intent, &modus);
        Tricluster {
            extent,
            intent,
            modus,
            generator,
            density,
            key,
        }
    }

    /// Rebuilds a tricluster from stored parts, recomputing its density
    /// against `context` and checking that the generator is contained.
    pub fn from_parts(
        context: &TriadicContext,
        extent: ElementSet,
        intent: ElementSet,
        modus: ElementSet,
        generator: Triple,
    ) -> Result<Self> {
        let density = context.tricluster_density(&extent, &intent, &modus)?;
        if !context.contains(generator) {
            return Err(Error::NotIncident(context.describe(generator)));
        }
        if !(extent.contains(generator.object)
            && intent.contains(generator.attribute)
            && modus.contains(generator.condition))
        {
            return Err(Error::InvalidDocument(format!(
                "generator {} lies outside its tricluster",
                context.describe(generator)
            )));
        }
        Ok(Tricluster::assemble(
            extent, intent, modus, generator, density,
        ))
    }

    pub fn extent(&self) -> &ElementSet {
        &self.extent
    }

    pub fn intent(&self) -> &ElementSet {
        &self.intent
    }

    pub fn modus(&self) -> &ElementSet {
        &self.modus
    }

    pub fn component(&self, axis: TriAxis) -> &ElementSet {
        match axis {
            TriAxis::Object => &self.extent,
            TriAxis::Attribute => &self.intent,
            TriAxis::Condition => &self.modus,
        }
    }

    /// First-seen generating triple; informational only.
    pub fn generator(&self) -> Triple {
        self.generator
    }

    pub fn density(&self) -> Rational {
        self.density
    }

    pub fn key(&self) -> &TriclusterKey {
        &self.key
    }

    /// `|A|·|B|·|C|`.
    pub fn volume(&self) -> u64 {
        (self.extent.len() as u64) * (self.intent.len() as u64) * (self.modus.len() as u64)
    }

    pub fn same_sets(&self, other: &Tricluster) -> bool {
        self.extent == other.extent && self.intent == other.intent && self.modus == other.modus
    }

    pub fn describe(&self, context: &TriadicContext) -> String {
        format!(
            "({{{}}}, {{{}}}, {{{}}})",
            context.objects().labels_of(&self.extent).join(","),
            context.attributes().labels_of(&self.intent).join(","),
            context.conditions().labels_of(&self.modus).join(","),
        )
    }
}

impl fmt::Debug for Tricluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tricluster")
            .field("extent", &self.extent)
            .field("intent", &self.intent)
            .field("modus", &self.modus)
            .field("density", &self.density)
            .finish()
    }
}

/// A triadic concept: a maximal fully incident box.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triconcept {
    pub extent: ElementSet,
    pub intent: ElementSet,
    pub modus: ElementSet,
}
