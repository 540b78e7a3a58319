use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::axis::{ElementId, LabelTable};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::triadic::{TriadicContext, Triple};

pub const DEFAULT_GENERATION_CAP: u64 = 100_000_000;

/// Uniform random context: each of the `|G|·|M|·|B|` candidate triples is
/// included independently with probability `fill_density`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub n_objects: usize,
    pub n_attributes: usize,
    pub n_conditions: usize,
    pub fill_density: Rational,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_objects == 0 || self.n_attributes == 0 || self.n_conditions == 0 {
            return Err(Error::InvalidSpec(
                "every dimension must be at least 1".into(),
            ));
        }
        if self.fill_density.is_zero() || self.fill_density > Rational::ONE {
            return Err(Error::InvalidSpec(format!(
                "fill density {} is outside (0, 1]",
                self.fill_density
            )));
        }
        Ok(())
    }
}

pub fn generate_context(spec: &GeneratorSpec) -> Result<TriadicContext> {
    generate_context_capped(spec, DEFAULT_GENERATION_CAP)
}

/// Labels are `u1..`, `t1..`, `r1..` (users, tags, resources).
///
/// Randomness comes from xoshiro256** seeded through SplitMix64
/// (`seed_from_u64`). Candidates are visited in `(g, m, b)` order, one 64-bit
/// draw each; a candidate is kept when `draw · den < num · 2^64`, which is
/// an exact Bernoulli(num/den) test on the draw.
pub fn generate_context_capped(spec: &GeneratorSpec, cap: u64) -> Result<TriadicContext> {
    spec.validate()?;
    let cells = spec.n_objects as u128 * spec.n_attributes as u128 * spec.n_conditions as u128;
    if cells > cap as u128 {
        return Err(Error::Overflow { cells, cap });
    }
    let labels = |name, prefix: &str, n: usize| {
        LabelTable::from_labels(name, (1..=n).map(|i| format!("{prefix}{i}")))
    };
    let objects = labels("object", "u", spec.n_objects)?;
    let attributes = labels("attribute", "t", spec.n_attributes)?;
    let conditions = labels("condition", "r", spec.n_conditions)?;

    let num = spec.fill_density.numer() as u128;
    let den = spec.fill_density.denom() as u128;
    let threshold = num << 64;
    let mut rng = Xoshiro256StarStar::seed_from_u64(spec.seed);
    let mut triples = Vec::new();
    for g in 0..spec.n_objects as ElementId {
        for m in 0..spec.n_attributes as ElementId {
            for b in 0..spec.n_conditions as ElementId {
                if (rng.next_u64() as u128) * den < threshold {
                    triples.push(Triple::new(g, m, b));
                }
            }
        }
    }
    TriadicContext::new(objects, attributes, conditions, triples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: [usize; 3], density: Rational, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            n_objects: n[0],
            n_attributes: n[1],
            n_conditions: n[2],
            fill_density: density,
            seed,
        }
    }

    #[test]
    fn full_density_gives_every_triple() {
        let ctx = generate_context(&spec([3, 2, 4], Rational::ONE, 99)).unwrap();
        assert_eq!(ctx.incidence_len(), 24);
    }

    #[test]
    fn same_spec_same_context() {
        let s = spec([6, 5, 7], Rational::new(1, 3), 7);
        let a = generate_context(&s).unwrap();
        let b = generate_context(&s).unwrap();
        assert_eq!(a.triples(), b.triples());
        let c = generate_context(&GeneratorSpec { seed: 8, ..s }).unwrap();
        assert_ne!(a.triples(), c.triples());
    }

    #[test]
    fn twenty_by_twenty_by_two_hundred_is_near_expected_fill() {
        // Binomial(80000, 0.01): mean 800, sd = sqrt(80000·0.01·0.99) ≈ 28.14
        let ctx = generate_context(&spec([20, 20, 200], Rational::new(1, 100), 42)).unwrap();
        let n = ctx.incidence_len() as f64;
        let sd = (80000.0f64 * 0.01 * 0.99).sqrt();
        assert!((n - 800.0).abs() <= 4.0 * sd, "{n}");
        assert_eq!(ctx.dims(), [20, 20, 200]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            generate_context(&spec([0, 1, 1], Rational::ONE, 0)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            generate_context(&spec([1, 1, 1], Rational::ZERO, 0)),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            generate_context_capped(&spec([10, 10, 10], Rational::ONE, 0), 999),
            Err(Error::Overflow { cells: 1000, .. })
        ));
    }
}
