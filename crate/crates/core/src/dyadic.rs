//! Dyadic formal contexts, Galois operators and OA-biclusters.

use crate::axis::{ElementId, LabelTable};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::ElementSet;

/// Which axis an argument set lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Objects,
    Attributes,
}

/// A formal context `(G, M, I)` with row and column bit sets.
#[derive(Clone, Debug)]
pub struct DyadicContext {
    objects: LabelTable,
    attributes: LabelTable,
    rows: Vec<ElementSet>,
    cols: Vec<ElementSet>,
    incidence_len: usize,
}

impl DyadicContext {
    /// Duplicate pairs are collapsed; every pair must reference valid ids.
    pub fn new(
        objects: LabelTable,
        attributes: LabelTable,
        pairs: impl IntoIterator<Item = (ElementId, ElementId)>,
    ) -> Result<Self> {
        let mut rows = vec![ElementSet::empty(attributes.len()); objects.len()];
        let mut cols = vec![ElementSet::empty(objects.len()); attributes.len()];
        let mut incidence_len = 0;
        for (g, m) in pairs {
            objects.check_id(g)?;
            attributes.check_id(m)?;
            if !rows[g as usize].contains(m) {
                incidence_len += 1;
                rows[g as usize].insert(m);
                cols[m as usize].insert(g);
            }
        }
        Ok(DyadicContext {
            objects,
            attributes,
            rows,
            cols,
            incidence_len,
        })
    }

    /// Convenience constructor interning labels in first-appearance order.
    pub fn from_labeled_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        let mut objects = LabelTable::new("object");
        let mut attributes = LabelTable::new("attribute");
        let ids: Vec<_> = pairs
            .into_iter()
            .map(|(g, m)| (objects.intern(g), attributes.intern(m)))
            .collect();
        DyadicContext::new(objects, attributes, ids).expect("interned ids are valid")
    }

    pub fn objects(&self) -> &LabelTable {
        &self.objects
    }

    pub fn attributes(&self) -> &LabelTable {
        &self.attributes
    }

    pub fn axis(&self, side: Side) -> &LabelTable {
        match side {
            Side::Objects => &self.objects,
            Side::Attributes => &self.attributes,
        }
    }

    pub fn incidence_len(&self) -> usize {
        self.incidence_len
    }

    pub fn incident(&self, g: ElementId, m: ElementId) -> bool {
        self.rows
            .get(g as usize)
            .is_some_and(|row| (m as usize) < row.universe() && row.contains(m))
    }

    /// Attributes of object `g` (`g′`).
    pub fn row(&self, g: ElementId) -> Result<&ElementSet> {
        self.objects.check_id(g)?;
        Ok(&self.rows[g as usize])
    }

    /// Objects having attribute `m` (`m′`).
    pub fn column(&self, m: ElementId) -> Result<&ElementSet> {
        self.attributes.check_id(m)?;
        Ok(&self.cols[m as usize])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().map(move |m| (g as ElementId, m)))
    }

    /// Galois operator. For `side == Objects`, returns the attributes shared by
    /// every object of `set`; dually for attributes. The empty set maps to the
    /// whole opposite axis.
    pub fn galois(&self, side: Side, set: &ElementSet) -> Result<ElementSet> {
        let (own, opposite, lines) = match side {
            Side::Objects => (&self.objects, &self.attributes, &self.rows),
            Side::Attributes => (&self.attributes, &self.objects, &self.cols),
        };
        own.check_set(set)?;
        let mut out = ElementSet::full(opposite.len());
        for id in set.iter() {
            out.intersect_with(&lines[id as usize]);
        }
        Ok(out)
    }

    /// Closure `S″`.
    pub fn closure(&self, side: Side, set: &ElementSet) -> Result<ElementSet> {
        let other = match side {
            Side::Objects => Side::Attributes,
            Side::Attributes => Side::Objects,
        };
        self.galois(other, &self.galois(side, set)?)
    }

    pub fn is_formal_concept(&self, extent: &ElementSet, intent: &ElementSet) -> Result<bool> {
        Ok(self.galois(Side::Objects, extent)? == *intent
            && self.galois(Side::Attributes, intent)? == *extent)
    }

    /// `|I ∩ (A × B)| / (|A|·|B|)`.
    pub fn bicluster_density(&self, extent: &ElementSet, intent: &ElementSet) -> Result<Rational> {
        self.objects.check_set(extent)?;
        self.attributes.check_set(intent)?;
        if extent.is_empty() {
            return Err(Error::EmptySet("object"));
        }
        if intent.is_empty() {
            return Err(Error::EmptySet("attribute"));
        }
        let inside: usize = extent
            .iter()
            .map(|g| self.rows[g as usize].intersection_len(intent))
            .sum();
        Ok(Rational::new(
            inside as u64,
            (extent.len() * intent.len()) as u64,
        ))
    }

    /// The OA-bicluster `(m′, g′)` generated by an incident pair.
    pub fn build_bicluster(&self, g: ElementId, m: ElementId) -> Result<OABicluster> {
        let intent = self.row(g)?.clone();
        let extent = self.column(m)?.clone();
        if !intent.contains(m) {
            return Err(Error::NotIncident(format!(
                "({}, {})",
                self.objects.label(g)?,
                self.attributes.label(m)?
            )));
        }
        let density = self.bicluster_density(&extent, &intent)?;
        Ok(OABicluster {
            extent,
            intent,
            generator: (g, m),
            density,
        })
    }
}

/// A pair `(A, B)` with `A′ = B` and `B′ = A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: ElementSet,
    pub intent: ElementSet,
}

/// Object-attribute bicluster `(m′, g′)` generated by `(g, m) ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OABicluster {
    pub extent: ElementSet,
    pub intent: ElementSet,
    pub generator: (ElementId, ElementId),
    pub density: Rational,
}

#[cfg(test)]
mod tests {
    use super::*;

    /// User × site projection of the sports bookmark example.
    fn user_site() -> DyadicContext {
        DyadicContext::from_labeled_pairs([
            ("u1", "s1"),
            ("u1", "s2"),
            ("u1", "s3"),
            ("u1", "s4"),
            ("u2", "s1"),
            ("u2", "s2"),
            ("u2", "s3"),
            ("u3", "s1"),
            ("u3", "s2"),
            ("u3", "s3"),
            ("u3", "s4"),
        ])
    }

    #[test]
    fn galois_of_two_users() {
        let ctx = user_site();
        let users = ctx.objects().set_of(["u1", "u3"]).unwrap();
        let sites = ctx.galois(Side::Objects, &users).unwrap();
        assert_eq!(ctx.attributes().labels_of(&sites), ["s1", "s2", "s3", "s4"]);
    }

    #[test]
    fn galois_of_empty_is_full_axis() {
        let ctx = user_site();
        let all = ctx.galois(Side::Objects, &ElementSet::empty(3)).unwrap();
        assert_eq!(all.len(), 4);
        let all = ctx.galois(Side::Attributes, &ElementSet::empty(4)).unwrap();
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn galois_rejects_foreign_universe() {
        let ctx = user_site();
        assert!(matches!(
            ctx.galois(Side::Objects, &ElementSet::empty(5)),
            Err(Error::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn bicluster_from_u2_s1() {
        let ctx = user_site();
        let g = ctx.objects().id("u2").unwrap();
        let m = ctx.attributes().id("s1").unwrap();
        let b = ctx.build_bicluster(g, m).unwrap();
        assert_eq!(ctx.objects().labels_of(&b.extent), ["u1", "u2", "u3"]);
        assert_eq!(ctx.attributes().labels_of(&b.intent), ["s1", "s2", "s3"]);
        assert_eq!(b.density, Rational::ONE);
    }

    #[test]
    fn bicluster_requires_incidence() {
        let ctx = user_site();
        let g = ctx.objects().id("u2").unwrap();
        let m = ctx.attributes().id("s4").unwrap();
        assert!(matches!(
            ctx.build_bicluster(g, m),
            Err(Error::NotIncident(_))
        ));
        assert!(matches!(
            ctx.build_bicluster(9, 0),
            Err(Error::UnknownId { .. })
        ));
    }

    #[test]
    fn singleton_bicluster() {
        let ctx = DyadicContext::from_labeled_pairs([("g", "m"), ("h", "n")]);
        let b = ctx.build_bicluster(0, 0).unwrap();
        assert_eq!(b.extent.to_vec(), [0]);
        assert_eq!(b.intent.to_vec(), [0]);
        assert_eq!(b.density, Rational::ONE);
    }

    #[test]
    fn density_of_whole_table() {
        let ctx = user_site();
        let a = ElementSet::full(3);
        let b = ElementSet::full(4);
        assert_eq!(
            ctx.bicluster_density(&a, &b).unwrap(),
            Rational::new(11, 12)
        );
    }

    #[test]
    fn density_of_full_and_empty_blocks() {
        let ctx = user_site();
        let a = ctx.objects().set_of(["u1", "u3"]).unwrap();
        assert_eq!(
            ctx.bicluster_density(&a, &ElementSet::full(4)).unwrap(),
            Rational::ONE
        );
        let ctx = DyadicContext::from_labeled_pairs([("g", "m"), ("h", "n")]);
        let a = ElementSet::from_ids(2, [0]);
        let b = ElementSet::from_ids(2, [1]);
        assert_eq!(ctx.bicluster_density(&a, &b).unwrap(), Rational::ZERO);
        assert!(matches!(
            ctx.bicluster_density(&ElementSet::empty(2), &b),
            Err(Error::EmptySet("object"))
        ));
        assert!(matches!(
            ctx.bicluster_density(&a, &ElementSet::empty(2)),
            Err(Error::EmptySet("attribute"))
        ));
    }
}
