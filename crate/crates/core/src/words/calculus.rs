use num::{BigRational, One};

use super::term::{AlgElement, NormalTerm};
use crate::boolean::AtomSet;
use crate::dynamics::{FiniteView, RelativeGBDS, Word};
use crate::error::{Error, Result};
use crate::repr::{path_representation, Representation};

/// Extra depth added to the longest word when comparing modulo the
/// summation relation.
pub const DEFAULT_SLACK: usize = 1;

/// Symbolic arithmetic in the spanning *-algebra of a finite system.
#[derive(Clone, Copy)]
pub struct Calculus<'a> {
    sys: &'a RelativeGBDS,
    fv: &'a FiniteView,
}

/// Outcome of [`Calculus::eq_modulo_ck`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Distinct,
    Inconclusive,
}

impl<'a> Calculus<'a> {
    pub fn new(sys: &'a RelativeGBDS) -> Result<Self> {
        Ok(Calculus {
            sys,
            fv: sys.finite()?,
        })
    }

    pub fn system(&self) -> &'a RelativeGBDS {
        self.sys
    }

    pub fn view(&self) -> &'a FiniteView {
        self.fv
    }

    fn in_range(&self, t: &NormalTerm) -> bool {
        let l = self.fv.num_labels();
        t.atom < self.fv.n()
            && t.left.letters().iter().all(|&x| x < l)
            && t.right.letters().iter().all(|&x| x < l)
    }

    /// `a ∈ I_α ∩ I_β`.
    pub fn is_valid(&self, t: &NormalTerm) -> bool {
        self.in_range(t)
            && self.fv.word_ideal(&t.left).contains(t.atom)
            && self.fv.word_ideal(&t.right).contains(t.atom)
    }

    pub fn check_term(&self, t: &NormalTerm) -> Result<()> {
        if !self.in_range(t) {
            return Err(Error::AlgebraMismatch);
        }
        if !self.is_valid(t) {
            return Err(Error::InvalidGenerator(format!(
                "atom {} is not in the ideals of both words of {}",
                self.atom_name(t.atom),
                self.show_term(t)
            )));
        }
        Ok(())
    }

    pub fn check(&self, x: &AlgElement) -> Result<()> {
        x.terms().try_for_each(|(t, _)| self.check_term(t))
    }

    fn atom_name(&self, a: usize) -> String {
        self.sys.show_atoms(AtomSet::singleton(a))
    }

    fn show_term(&self, t: &NormalTerm) -> String {
        let b = self.sys.bds();
        format!(
            "({}, {}, {})",
            b.show_word(&t.left),
            self.atom_name(t.atom),
            b.show_word(&t.right)
        )
    }

    fn emit(&self, t: NormalTerm) -> Result<AlgElement> {
        if !self.is_valid(&t) {
            return Err(Error::InternalInvariantViolation(format!(
                "product produced the invalid term {}",
                self.show_term(&t)
            )));
        }
        Ok(AlgElement::from_term(t))
    }

    /// `(s_{α,a}s*_{β,a})(s_{μ,c}s*_{ν,c})`.
    ///
    /// * `β = μ`: `(α,a,ν)` if `a = c`.
    /// * `β = μβ′`: `(α,a,νβ′)` if `a ⊆ θ_{β′}(c)`.
    /// * `μ = βμ′`: `(αμ′,c,ν)` if `c ⊆ θ_{μ′}(a)`.
    /// * otherwise `0`.
    pub fn term_mul(&self, t: &NormalTerm, u: &NormalTerm) -> Result<AlgElement> {
        self.check_term(t)?;
        self.check_term(u)?;
        self.term_mul_unchecked(t, u)
    }

    fn term_mul_unchecked(&self, t: &NormalTerm, u: &NormalTerm) -> Result<AlgElement> {
        if t.right == u.left {
            return if t.atom == u.atom {
                self.emit(NormalTerm::new(t.left.clone(), t.atom, u.right.clone()))
            } else {
                Ok(AlgElement::zero())
            };
        }
        if let Some(rest) = t.right.strip_prefix(&u.left) {
            let img = self.fv.theta_word(&rest, AtomSet::singleton(u.atom));
            return if img.contains(t.atom) {
                self.emit(NormalTerm::new(t.left.clone(), t.atom, u.right.concat(&rest)))
            } else {
                Ok(AlgElement::zero())
            };
        }
        if let Some(rest) = u.left.strip_prefix(&t.right) {
            let img = self.fv.theta_word(&rest, AtomSet::singleton(t.atom));
            return if img.contains(u.atom) {
                self.emit(NormalTerm::new(t.left.concat(&rest), u.atom, u.right.clone()))
            } else {
                Ok(AlgElement::zero())
            };
        }
        Ok(AlgElement::zero())
    }

    pub fn mul(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = AlgElement::zero();
        for (t, c) in x.terms() {
            for (u, d) in y.terms() {
                let prod = self.term_mul_unchecked(t, u)?;
                out.add_scaled(&prod, &(c * d));
            }
        }
        Ok(out)
    }

    /// `p_A = Σ_{a ⊆ A} p_a`.
    pub fn p(&self, a: AtomSet) -> AlgElement {
        a.iter()
            .map(|x| (NormalTerm::projection(x), BigRational::one()))
            .collect()
    }

    /// `s_{α,B} = Σ_{b ⊆ B} s_{α,b}`; needs `B ∈ I_α`.
    pub fn s(&self, word: &Word, b: AtomSet) -> Result<AlgElement> {
        let gen = self.fv.word_ideal(word);
        if !b.is_subset(gen) {
            return Err(Error::InvalidGenerator(format!(
                "{} is not in the ideal of `{}`",
                self.sys.show_atoms(b),
                self.sys.bds().show_word(word)
            )));
        }
        Ok(b.iter()
            .map(|x| (NormalTerm::new(word.clone(), x, Word::empty()), BigRational::one()))
            .collect())
    }

    /// `(label, θ_label({a}))` for each label in `Δ_a`.
    pub fn expansion(&self, a: usize) -> impl Iterator<Item = (usize, AtomSet)> + '_ {
        let single = AtomSet::singleton(a);
        (0..self.fv.num_labels())
            .map(move |l| (l, self.fv.theta(l, single)))
            .filter(|(_, img)| !img.is_empty())
    }

    /// `p_a − Σ s_{γ,θ_γ(a)} s*_{γ,θ_γ(a)}` over labels `γ` whose image of
    /// `a` is not inside `h`. With `h = ∅` this is the usual defect.
    pub fn defect(&self, a: usize, h: AtomSet) -> AlgElement {
        let mut x = AlgElement::from_term(NormalTerm::projection(a));
        let minus = -BigRational::one();
        for (g, img) in self.expansion(a) {
            if img.is_subset(h) {
                continue;
            }
            for d in img.iter() {
                x.add_term(NormalTerm::new(Word::letter(g), d, Word::letter(g)), minus.clone());
            }
        }
        x
    }

    /// `(α,a,β) ↦ Σ_{γ∈Δ_a} Σ_{d ⊆ θ_γ(a)} (αγ,d,βγ)` for `a ∈ J`.
    pub fn ck_expand(&self, t: &NormalTerm) -> Result<AlgElement> {
        self.check_term(t)?;
        if !self.fv.relative().contains(t.atom) {
            return Err(Error::NotExpandable(
                self.sys.atom_labels().map(|l| l[t.atom].clone()).unwrap_or_default(),
            ));
        }
        let mut out = AlgElement::zero();
        self.expand_into(t, &BigRational::one(), &mut |u, c| out.add_term(u, c));
        Ok(out)
    }

    fn expand_into(&self, t: &NormalTerm, c: &BigRational, sink: &mut impl FnMut(NormalTerm, BigRational)) {
        for (g, img) in self.expansion(t.atom) {
            let left = t.left.push(g);
            let right = t.right.push(g);
            for d in img.iter() {
                sink(NormalTerm::new(left.clone(), d, right.clone()), c.clone());
            }
        }
    }

    /// Expands every term whose atom lies in `J` and whose level is below
    /// `depth`, repeatedly. Terms are processed level by level so that all
    /// contributions to a term are combined before it is expanded.
    pub fn normal_form(&self, x: &AlgElement, depth: usize) -> AlgElement {
        let mut buckets: Vec<AlgElement> = vec![AlgElement::zero(); depth];
        let mut out = AlgElement::zero();
        let place = |t: NormalTerm, c: BigRational, buckets: &mut Vec<AlgElement>, out: &mut AlgElement| {
            let lvl = t.level();
            if lvl < depth && self.fv.relative().contains(t.atom) {
                buckets[lvl].add_term(t, c);
            } else {
                out.add_term(t, c);
            }
        };
        for (t, c) in x.terms() {
            place(t.clone(), c.clone(), &mut buckets, &mut out);
        }
        for lvl in 0..depth {
            let bucket = std::mem::take(&mut buckets[lvl]);
            for (t, c) in bucket.terms() {
                let mut next = Vec::new();
                self.expand_into(t, c, &mut |u, k| next.push((u, k)));
                for (u, k) in next {
                    place(u, k, &mut buckets, &mut out);
                }
            }
        }
        out
    }

    /// Compares `x` and `y` in the algebra: `Equal` when the difference has
    /// zero normal form at depth `max word length + slack`, `Distinct` when a
    /// representation separates them, `Inconclusive` otherwise.
    pub fn eq_modulo_ck(&self, x: &AlgElement, y: &AlgElement, slack: usize) -> Result<Equality> {
        self.eq_modulo_ck_with(x, y, slack, &[])
    }

    /// As [`Calculus::eq_modulo_ck`], also trying the given validated
    /// representations as separating witnesses. The path representation is
    /// always tried when the system has one.
    pub fn eq_modulo_ck_with(
        &self,
        x: &AlgElement,
        y: &AlgElement,
        slack: usize,
        reps: &[&dyn Representation],
    ) -> Result<Equality> {
        self.check(x)?;
        self.check(y)?;
        let diff = x - y;
        let depth = x.max_word_len().max(y.max_word_len()) + slack;
        if self.normal_form(&diff, depth).is_zero() {
            return Ok(Equality::Equal);
        }
        let path = path_representation(self.sys).ok();
        let mut all: Vec<&dyn Representation> = reps.to_vec();
        if let Some(p) = &path {
            all.push(p);
        }
        for r in all {
            if r.separates(self.sys, &diff)? {
                return Ok(Equality::Distinct);
            }
        }
        Ok(Equality::Inconclusive)
    }
}
