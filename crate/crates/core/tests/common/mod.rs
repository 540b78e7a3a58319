//! Random small contexts and naive reference computations that avoid the
//! library's bit-set and index code paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use triscope_core::{DyadicContext, LabelTable, TriadicContext, Triple};

pub type NaiveTriples = BTreeSet<(u32, u32, u32)>;

pub fn context_from(dims: [usize; 3], triples: &NaiveTriples) -> TriadicContext {
    let table = |name, prefix: &str, n: usize| {
        LabelTable::from_labels(name, (0..n).map(|i| format!("{prefix}{i}"))).unwrap()
    };
    TriadicContext::new(
        table("object", "g", dims[0]),
        table("attribute", "m", dims[1]),
        table("condition", "b", dims[2]),
        triples.iter().map(|&(g, m, b)| Triple::new(g, m, b)),
    )
    .unwrap()
}

/// Dimensions in `1..=max` per axis, each triple kept with a random fill.
pub fn random_triples(rng: &mut StdRng, max: usize) -> ([usize; 3], NaiveTriples) {
    let dims = [
        rng.gen_range(1..=max),
        rng.gen_range(1..=max),
        rng.gen_range(1..=max),
    ];
    let fill: f64 = [0.25, 0.5, 0.75, 0.9][rng.gen_range(0..4)];
    let mut triples = NaiveTriples::new();
    for g in 0..dims[0] as u32 {
        for m in 0..dims[1] as u32 {
            for b in 0..dims[2] as u32 {
                if rng.gen_bool(fill) {
                    triples.insert((g, m, b));
                }
            }
        }
    }
    (dims, triples)
}

pub fn random_contexts(
    seed: u64,
    count: usize,
    max: usize,
) -> Vec<([usize; 3], NaiveTriples, TriadicContext)> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (dims, triples) = random_triples(&mut rng, max);
            let ctx = context_from(dims, &triples);
            (dims, triples, ctx)
        })
        .collect()
}

pub fn dyadic_from(n_obj: usize, n_attr: usize, pairs: &BTreeSet<(u32, u32)>) -> DyadicContext {
    DyadicContext::new(
        LabelTable::from_labels("object", (0..n_obj).map(|i| format!("g{i}"))).unwrap(),
        LabelTable::from_labels("attribute", (0..n_attr).map(|i| format!("m{i}"))).unwrap(),
        pairs.iter().copied(),
    )
    .unwrap()
}

/// Exact fraction as `(num, den)`; compare by cross-multiplying.
#[derive(Clone, Copy, Debug)]
pub struct Frac(pub u64, pub u64);

impl Frac {
    pub fn cmp(&self, other: &Frac) -> std::cmp::Ordering {
        (self.0 as u128 * other.1 as u128).cmp(&(other.0 as u128 * self.1 as u128))
    }

    pub fn eq_rational(&self, r: triscope_core::Rational) -> bool {
        self.0 as u128 * r.denom() as u128 == r.numer() as u128 * self.1 as u128
    }
}

pub fn naive_density(
    t: &NaiveTriples,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    c: &BTreeSet<u32>,
) -> Frac {
    let inside = t
        .iter()
        .filter(|(g, m, x)| a.contains(g) && b.contains(m) && c.contains(x))
        .count();
    Frac(inside as u64, (a.len() * b.len() * c.len()) as u64)
}

/// `((m,b)′, (g,b)′, (g,m)′)` by scanning the triple list.
pub fn naive_tricluster(t: &NaiveTriples, (g, m, b): (u32, u32, u32)) -> [BTreeSet<u32>; 3] {
    [
        t.iter()
            .filter(|x| x.1 == m && x.2 == b)
            .map(|x| x.0)
            .collect(),
        t.iter()
            .filter(|x| x.0 == g && x.2 == b)
            .map(|x| x.1)
            .collect(),
        t.iter()
            .filter(|x| x.0 == g && x.1 == m)
            .map(|x| x.2)
            .collect(),
    ]
}

pub fn ids(set: &triscope_core::ElementSet) -> BTreeSet<u32> {
    set.iter().collect()
}

/// Jaccard as an exact fraction; empty union scores 0.
pub fn naive_jaccard(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Frac {
    let union = a.union(b).count() as u64;
    if union == 0 {
        Frac(0, 1)
    } else {
        Frac(a.intersection(b).count() as u64, union)
    }
}

/// `½(x + y)` without reduction.
pub fn half_sum(x: Frac, y: Frac) -> Frac {
    Frac(x.0 * y.1 + y.0 * x.1, 2 * x.1 * y.1)
}
