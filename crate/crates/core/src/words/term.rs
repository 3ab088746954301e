use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigRational, One, Zero};

use crate::dynamics::Word;

/// The spanning element `s_{α,a} s*_{β,a}` for an atom `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalTerm {
    pub left: Word,
    pub atom: usize,
    pub right: Word,
}

impl NormalTerm {
    pub fn new(left: Word, atom: usize, right: Word) -> Self {
        NormalTerm { left, atom, right }
    }

    /// `p_a`.
    pub fn projection(atom: usize) -> Self {
        NormalTerm::new(Word::empty(), atom, Word::empty())
    }

    /// Gauge degree `|α| − |β|`.
    pub fn degree(&self) -> i64 {
        self.left.len() as i64 - self.right.len() as i64
    }

    /// `min(|α|, |β|)`: the number of summation steps already applied.
    pub fn level(&self) -> usize {
        self.left.len().min(self.right.len())
    }

    pub fn max_len(&self) -> usize {
        self.left.len().max(self.right.len())
    }

    pub fn adjoint(&self) -> Self {
        NormalTerm::new(self.right.clone(), self.atom, self.left.clone())
    }
}

impl fmt::Debug for NormalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {}, {:?})", self.left.letters(), self.atom, self.right.letters())
    }
}

/// A finite rational linear combination of normal terms. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgElement {
    terms: BTreeMap<NormalTerm, BigRational>,
}

impl AlgElement {
    pub fn zero() -> Self {
        AlgElement::default()
    }

    pub fn from_term(t: NormalTerm) -> Self {
        AlgElement::from_scaled(t, BigRational::one())
    }

    pub fn from_scaled(t: NormalTerm, c: BigRational) -> Self {
        let mut x = AlgElement::zero();
        x.add_term(t, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalTerm, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &NormalTerm) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, t: NormalTerm, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &AlgElement, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (t, k) in &other.terms {
            self.add_term(t.clone(), k * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> AlgElement {
        let mut out = AlgElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn adjoint(&self) -> AlgElement {
        AlgElement {
            terms: self.terms.iter().map(|(t, c)| (t.adjoint(), c.clone())).collect(),
        }
    }

    /// Components by gauge degree.
    pub fn grading(&self) -> BTreeMap<i64, AlgElement> {
        let mut out: BTreeMap<i64, AlgElement> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.degree()).or_default().add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn gauge_invariant(&self) -> bool {
        self.terms.keys().all(|t| t.degree() == 0)
    }

    /// The degree if the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(NormalTerm::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(NormalTerm::max_len).max().unwrap_or(0)
    }

    pub fn max_level(&self) -> usize {
        self.terms.keys().map(NormalTerm::level).max().unwrap_or(0)
    }
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{c}·{t:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        out
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&AlgElement> for &BigRational {
    type Output = AlgElement;
    fn mul(self, rhs: &AlgElement) -> AlgElement {
        rhs.scale(self)
    }
}

impl FromIterator<(NormalTerm, BigRational)> for AlgElement {
    fn from_iter<I: IntoIterator<Item = (NormalTerm, BigRational)>>(iter: I) -> Self {
        let mut x = AlgElement::zero();
        for (t, c) in iter {
            x.add_term(t, c);
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let t = NormalTerm::projection(0);
        let mut x = AlgElement::from_term(t.clone());
        x.add_term(t, q(-1));
        assert!(x.is_zero());
    }

    #[test]
    fn adjoint_swaps_words() {
        let t = NormalTerm::new(Word::letter(0), 1, Word::empty());
        assert_eq!(t.adjoint(), NormalTerm::new(Word::empty(), 1, Word::letter(0)));
        let p = NormalTerm::projection(0);
        assert_eq!(p.adjoint(), p);
        let x = AlgElement::from_scaled(t, q(3));
        assert_eq!(x.adjoint().adjoint(), x);
        assert_eq!(x.degree(), Some(1));
        assert_eq!(x.adjoint().degree(), Some(-1));
    }
}
