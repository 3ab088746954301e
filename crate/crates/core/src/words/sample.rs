//! Random valid terms and elements, for property tests.

use num::BigRational;
use rand::Rng;

use super::term::{AlgElement, NormalTerm};
use crate::dynamics::{FiniteView, Word};

fn random_word<R: Rng + ?Sized>(labels: usize, max_len: usize, rng: &mut R) -> Word {
    if labels == 0 {
        return Word::empty();
    }
    let len = rng.random_range(0..=max_len);
    Word::from_letters((0..len).map(|_| rng.random_range(0..labels)).collect())
}

/// A uniformly drawn pair of words and an atom, retried until valid.
pub fn random_term<R: Rng + ?Sized>(fv: &FiniteView, max_len: usize, rng: &mut R) -> Option<NormalTerm> {
    if fv.n() == 0 {
        return None;
    }
    for _ in 0..200 {
        let left = random_word(fv.num_labels(), max_len, rng);
        let gen = fv.word_ideal(&left);
        if gen.is_empty() {
            continue;
        }
        let atoms = gen.to_vec();
        let atom = atoms[rng.random_range(0..atoms.len())];
        for _ in 0..20 {
            let right = random_word(fv.num_labels(), max_len, rng);
            if fv.word_ideal(&right).contains(atom) {
                return Some(NormalTerm::new(left, atom, right));
            }
        }
    }
    None
}

/// Up to `max_terms` random terms with small integer coefficients.
pub fn random_element<R: Rng + ?Sized>(
    fv: &FiniteView,
    max_terms: usize,
    max_len: usize,
    rng: &mut R,
) -> AlgElement {
    let k = rng.random_range(1..=max_terms.max(1));
    let mut x = AlgElement::zero();
    for _ in 0..k {
        if let Some(t) = random_term(fv, max_len, rng) {
            let c: i64 = rng.random_range(-3..=3);
            x.add_term(t, BigRational::from_integer(c.into()));
        }
    }
    x
}
