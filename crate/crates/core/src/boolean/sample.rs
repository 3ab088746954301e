//! Random elements for sample-based law checking.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::{Algebra, AtomSet, Element, FinCofin, Value};

/// Indices `0..SAMPLE_UNIVERSE` are used when sampling subsets of ℕ.
pub const SAMPLE_UNIVERSE: u64 = 12;

fn random_indices<R: Rng + ?Sized>(rng: &mut R) -> BTreeSet<u64> {
    (0..SAMPLE_UNIVERSE).filter(|_| rng.random_bool(0.35)).collect()
}

pub fn random_value<R: Rng + ?Sized>(algebra: &Algebra, rng: &mut R) -> Value {
    match algebra {
        Algebra::Finite(f) => {
            let full = AtomSet::full(f.len()).0;
            Value::Atoms(AtomSet(rng.random::<u64>() & full))
        }
        Algebra::FinSubsets => Value::Finite(random_indices(rng)),
        Algebra::FinCofin => Value::FinCofin(FinCofin {
            cofinite: rng.random_bool(0.5),
            support: random_indices(rng),
        }),
        Algebra::Product(l, r) => {
            Value::Pair(Box::new(random_value(l, rng)), Box::new(random_value(r, rng)))
        }
    }
}

pub fn random_element<R: Rng + ?Sized>(algebra: &Arc<Algebra>, rng: &mut R) -> Element {
    Element::new_unchecked(algebra.clone(), random_value(algebra, rng))
}
