//! Tricluster-based tag and resource recommendation.
//!
//! For each user the most similar tricluster is chosen by the mean of two
//! Jaccard indices (user tags vs. tricluster intent, user resources vs.
//! tricluster modus); the user is recommended whatever that tricluster has
//! and the user lacks.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::axis::ElementId;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::ElementSet;
use crate::triadic::{TriadicContext, Tricluster};
use crate::triclustering::{TriclusterKey, TriclusterStore};

/// A user's own tags `T_u` and resources `R_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserProfile {
    pub user: ElementId,
    pub tags: ElementSet,
    pub resources: ElementSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recommendation {
    pub user: ElementId,
    pub best_tricluster: TriclusterKey,
    pub similarity: Rational,
    pub recommended_tags: ElementSet,
    pub recommended_resources: ElementSet,
}

pub fn user_profile(context: &TriadicContext, user: ElementId) -> Result<UserProfile> {
    context.objects().check_id(user)?;
    let [_, nm, nb] = context.dims();
    let mut tags = ElementSet::empty(nm);
    let mut resources = ElementSet::empty(nb);
    for t in context.triples_of_object(user) {
        tags.insert(t.attribute);
        resources.insert(t.condition);
    }
    Ok(UserProfile {
        user,
        tags,
        resources,
    })
}

/// Jaccard index; an empty union scores 0.
fn jaccard(a: &ElementSet, b: &ElementSet) -> Rational {
    match a.union_len(b) {
        0 => Rational::ZERO,
        union => Rational::new(a.intersection_len(b) as u64, union as u64),
    }
}

/// `½(J(R_u, modus) + J(T_u, intent))`.
pub fn similarity(profile: &UserProfile, t: &Tricluster) -> Rational {
    Rational::mean(
        jaccard(&profile.resources, t.modus()),
        jaccard(&profile.tags, t.intent()),
    )
}

/// Higher similarity, then higher density, then smaller key wins.
fn rank(a: &(Rational, &Tricluster), b: &(Rational, &Tricluster)) -> Ordering {
    b.0.cmp(&a.0)
        .then_with(|| b.1.density().cmp(&a.1.density()))
        .then_with(|| a.1.key().cmp(b.1.key()))
}

pub fn recommend(
    context: &TriadicContext,
    store: &TriclusterStore,
    user: ElementId,
) -> Result<Recommendation> {
    let profile = user_profile(context, user)?;
    recommend_for(&profile, store)
}

pub fn recommend_for(profile: &UserProfile, store: &TriclusterStore) -> Result<Recommendation> {
    let (similarity, best) = store
        .iter()
        .map(|t| (similarity(profile, t), t))
        .min_by(rank)
        .ok_or(Error::EmptyStore)?;
    Ok(Recommendation {
        user: profile.user,
        best_tricluster: *best.key(),
        similarity,
        recommended_tags: best.intent().difference(&profile.tags),
        recommended_resources: best.modus().difference(&profile.resources),
    })
}

/// One recommendation per object, in id order.
pub fn recommend_all(
    context: &TriadicContext,
    store: &TriclusterStore,
) -> Result<Vec<Recommendation>> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    (0..context.objects().len() as ElementId)
        .into_par_iter()
        .map(|u| recommend(context, store, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::LabelTable;
    use crate::fixtures::sports;
    use crate::triadic::{TriAxis, Triple};
    use crate::triclustering::{enumerate_triclusters, ClusteringConfig};

    fn store(ctx: &TriadicContext) -> TriclusterStore {
        enumerate_triclusters(ctx, &ClusteringConfig::default()).unwrap()
    }

    fn find<'a>(ctx: &TriadicContext, store: &'a TriclusterStore, text: &str) -> &'a Tricluster {
        store.iter().find(|t| t.describe(ctx) == text).unwrap()
    }

    #[test]
    fn profiles() {
        let ctx = sports();
        let u2 = user_profile(&ctx, ctx.objects().id("u2").unwrap()).unwrap();
        assert_eq!(ctx.attributes().labels_of(&u2.tags), ["i1", "i2"]);
        assert_eq!(
            ctx.conditions().labels_of(&u2.resources),
            ["s1", "s2", "s3"]
        );
        let u1 = user_profile(&ctx, ctx.objects().id("u1").unwrap()).unwrap();
        assert_eq!(u1.resources.len(), 4);
        assert!(matches!(
            user_profile(&ctx, 3),
            Err(Error::UnknownId { .. })
        ));
    }

    #[test]
    fn inactive_user_has_empty_profile() {
        let ctx = TriadicContext::new(
            LabelTable::from_labels("object", ["busy", "idle"]).unwrap(),
            LabelTable::from_labels("attribute", ["tag"]).unwrap(),
            LabelTable::from_labels("condition", ["res"]).unwrap(),
            [Triple::new(0, 0, 0)],
        )
        .unwrap();
        let p = user_profile(&ctx, 1).unwrap();
        assert!(p.tags.is_empty() && p.resources.is_empty());
    }

    #[test]
    fn similarity_values_for_u2() {
        let ctx = sports();
        let store = store(&ctx);
        let u2 = user_profile(&ctx, ctx.objects().id("u2").unwrap()).unwrap();
        let sim = |text| similarity(&u2, find(&ctx, &store, text));
        assert_eq!(sim("({u1,u2,u3}, {i1}, {s1,s3})"), Rational::new(7, 12));
        assert_eq!(sim("({u1,u3}, {i2}, {s2,s4})"), Rational::new(3, 8));
        assert_eq!(sim("({u1,u2,u3}, {i2}, {s2,s4})"), Rational::new(3, 8));
        assert_eq!(sim("({u1,u2,u3}, {i2}, {s2})"), Rational::new(5, 12));
    }

    #[test]
    fn identical_profile_scores_one() {
        let ctx = sports();
        let store = store(&ctx);
        let t = find(&ctx, &store, "({u1,u3}, {i2}, {s2,s4})");
        let p = UserProfile {
            user: 0,
            tags: t.intent().clone(),
            resources: t.modus().clone(),
        };
        assert_eq!(similarity(&p, t), Rational::ONE);
        let r = recommend_for(&p, &store).unwrap();
        assert!(r.recommended_tags.is_empty() && r.recommended_resources.is_empty());
    }

    #[test]
    fn best_for_u2() {
        let ctx = sports();
        let store = store(&ctx);
        let r = recommend(&ctx, &store, ctx.objects().id("u2").unwrap()).unwrap();
        let best = store.get(&r.best_tricluster).unwrap();
        assert_eq!(best.describe(&ctx), "({u1,u2,u3}, {i1}, {s1,s3})");
        assert_eq!(r.similarity, Rational::new(7, 12));
        assert!(r.recommended_tags.is_empty());
        assert!(r.recommended_resources.is_empty());
    }

    #[test]
    fn single_tricluster_store_always_wins() {
        let ctx = sports();
        let full = store(&ctx);
        let mut single = TriclusterStore::new(Rational::ZERO, ctx.dims());
        let only = find(&ctx, &full, "({u1,u3}, {i2}, {s2,s4})").clone();
        single.insert(only.clone());
        for u in 0..3 {
            assert_eq!(
                recommend(&ctx, &single, u).unwrap().best_tricluster,
                *only.key()
            );
        }
    }

    #[test]
    fn empty_store_is_an_error() {
        let ctx = sports();
        let empty = TriclusterStore::new(Rational::ZERO, ctx.dims());
        assert!(matches!(recommend(&ctx, &empty, 0), Err(Error::EmptyStore)));
        assert!(matches!(
            recommend_all(&ctx, &empty),
            Err(Error::EmptyStore)
        ));
    }

    #[test]
    fn recommend_all_covers_every_user() {
        let ctx = sports();
        let recs = recommend_all(&ctx, &store(&ctx)).unwrap();
        assert_eq!(recs.iter().map(|r| r.user).collect::<Vec<_>>(), [0, 1, 2]);
    }

    #[test]
    fn idle_user_gets_tie_break_winner() {
        let ctx = TriadicContext::new(
            LabelTable::from_labels("object", ["a", "idle"]).unwrap(),
            LabelTable::from_labels("attribute", ["x", "y"]).unwrap(),
            LabelTable::from_labels("condition", ["p", "q"]).unwrap(),
            [
                Triple::new(0, 0, 0),
                Triple::new(0, 1, 1),
                Triple::new(0, 0, 1),
            ],
        )
        .unwrap();
        let store = store(&ctx);
        let r = recommend(&ctx, &store, 1).unwrap();
        assert_eq!(r.similarity, Rational::ZERO);
        let best = store.get(&r.best_tricluster).unwrap();
        assert_eq!(
            best.density(),
            store.iter().map(|t| t.density()).max().unwrap()
        );
        assert_eq!(&r.recommended_tags, best.component(TriAxis::Attribute));
        assert_eq!(&r.recommended_resources, best.modus());
    }
}
