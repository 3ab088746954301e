//! Membership in the gauge-invariant ideal `I_{(H,S)}` and recovery of the
//! pair from the ideal.
//!
//! `I_{(H,S)}` is spanned by the terms `(α,a,β)` with `a ∈ H` and by the
//! defect vectors
//!
//! ```text
//! V(α,a,β) = (α,a,β) − Σ_{γ : θ_γ(a) ⊄ H} Σ_{d ⊆ θ_γ(a)} (αγ,d,βγ)      a ∈ S ∖ H
//! ```
//!
//! After normal forms at depth `d`, every family vector has a distinct
//! lowest-level term (the term itself, with everything else one level up),
//! so the family is triangular. Reducing `NF_d(x)` term by term in order of
//! increasing level either reaches zero, which exhibits `x` as a
//! combination, or leaves a term outside `H`. Defects with `a ∈ J` are
//! omitted: modulo `H`-terms their normal forms vanish.

use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

use super::calculus::Calculus;
use super::linalg::RationalMatrix;
use super::term::{AlgElement, NormalTerm};
use crate::boolean::AtomSet;
use crate::dynamics::{RelativeGBDS, Word};
use crate::error::{Error, Result};
use crate::lattice::{compute_bh, is_admissible, quotient_system, Pair};

/// A spanning vector of the ideal, named by its leading term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FamilyVector {
    /// `(α,a,β)` with `a ∈ H`.
    HTerm(NormalTerm),
    /// `V(α,a,β)` with `a ∈ S ∖ H`.
    Defect(NormalTerm),
}

/// `NF_d(x) = Σ c_i NF_d(f_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub depth: usize,
    pub combination: Vec<(FamilyVector, BigRational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    In(Certificate),
    NotIn,
    Inconclusive,
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }
}

fn check_pair(sys: &RelativeGBDS, pair: &Pair) -> Result<()> {
    if !is_admissible(sys.finite()?, pair) {
        return Err(Error::InvalidIdeal(format!(
            "({}, {}) is not an admissible pair",
            sys.show_atoms(pair.h),
            sys.show_atoms(pair.s)
        )));
    }
    Ok(())
}

impl Calculus<'_> {
    /// `V(α,a,β)` relative to `h`, before normal forms.
    pub fn defect_vector(&self, t: &NormalTerm, h: AtomSet) -> AlgElement {
        let mut v = AlgElement::from_term(t.clone());
        let minus = -BigRational::one();
        for (g, img) in self.expansion(t.atom) {
            if img.is_subset(h) {
                continue;
            }
            let left = t.left.push(g);
            let right = t.right.push(g);
            for d in img.iter() {
                v.add_term(NormalTerm::new(left.clone(), d, right.clone()), minus.clone());
            }
        }
        v
    }

    /// The family vector's normal form at `depth`.
    pub fn family_vector(&self, f: &FamilyVector, h: AtomSet, depth: usize) -> AlgElement {
        match f {
            FamilyVector::HTerm(t) => self.normal_form(&AlgElement::from_term(t.clone()), depth),
            FamilyVector::Defect(t) => self.normal_form(&self.defect_vector(t, h), depth),
        }
    }

    /// Triangular reduction of `NF_depth(x)` by the family; returns the
    /// remainder and the combination used.
    fn reduce(&self, x: &AlgElement, pair: &Pair, depth: usize) -> (AlgElement, Vec<(FamilyVector, BigRational)>) {
        let fv = self.view();
        let pivots_defect = pair.s - pair.h - fv.relative();
        let mut work: BTreeMap<(usize, NormalTerm), BigRational> = BTreeMap::new();
        let push = |work: &mut BTreeMap<(usize, NormalTerm), BigRational>, t: NormalTerm, c: BigRational| {
            let key = (t.level(), t);
            let e = work.entry(key).or_insert_with(BigRational::zero);
            *e += c;
        };
        for (t, c) in self.normal_form(x, depth).terms() {
            push(&mut work, t.clone(), c.clone());
        }
        let mut remainder = AlgElement::zero();
        let mut combination = Vec::new();
        while let Some(((lvl, t), c)) = work.pop_first() {
            if c.is_zero() {
                continue;
            }
            if pair.h.contains(t.atom) {
                combination.push((FamilyVector::HTerm(t), c));
            } else if pivots_defect.contains(t.atom) && lvl < depth {
                let f = FamilyVector::Defect(t.clone());
                let v = self.family_vector(&f, pair.h, depth);
                for (u, k) in v.terms() {
                    if *u != t {
                        push(&mut work, u.clone(), -(k * &c));
                    }
                }
                combination.push((f, c));
            } else {
                remainder.add_term(t, c);
            }
        }
        (remainder, combination)
    }

    fn component_membership(&self, y: &AlgElement, pair: &Pair, depth: usize) -> Membership {
        let start = y.max_level();
        let mut previous_nonzero = false;
        for d in start..=depth {
            let (rem, combination) = self.reduce(y, pair, d);
            if rem.is_zero() {
                return Membership::In(Certificate { depth: d, combination });
            }
            if previous_nonzero {
                return Membership::NotIn;
            }
            previous_nonzero = true;
        }
        Membership::Inconclusive
    }

    /// Decides `x ∈ I_{(H,S)}` using family vectors up to `depth`.
    ///
    /// `In` carries the combination. `NotIn` is reported when a term outside
    /// `H` survives the reduction at two consecutive depths, both at least the
    /// highest level in `x`. Each gauge-degree component is decided
    /// separately, since the ideal is graded.
    pub fn ideal_membership(&self, x: &AlgElement, pair: &Pair, depth: usize) -> Result<Membership> {
        self.check(x)?;
        check_pair(self.system(), pair)?;
        if x.is_zero() {
            return Ok(Membership::In(Certificate {
                depth: 0,
                combination: Vec::new(),
            }));
        }
        let mut certificates = Vec::new();
        let mut inconclusive = false;
        for y in x.grading().values() {
            match self.component_membership(y, pair, depth) {
                Membership::NotIn => return Ok(Membership::NotIn),
                Membership::Inconclusive => inconclusive = true,
                Membership::In(c) => certificates.push(c),
            }
        }
        if inconclusive {
            return Ok(Membership::Inconclusive);
        }
        let depth = certificates.iter().map(|c| c.depth).max().unwrap_or(0);
        Ok(Membership::In(Certificate {
            depth,
            combination: certificates.into_iter().flat_map(|c| c.combination).collect(),
        }))
    }

    /// Checks a certificate: the combination of family vectors, all in
    /// normal form at the certificate depth, equals `NF(x)`.
    pub fn verify_certificate(&self, x: &AlgElement, pair: &Pair, cert: &Certificate) -> bool {
        // components may have been certified at smaller depths; normal forms
        // at the largest depth agree with theirs after further expansion
        let mut sum = AlgElement::zero();
        for (f, c) in &cert.combination {
            sum.add_scaled(&self.family_vector(f, pair.h, cert.depth), c);
        }
        self.normal_form(&sum, cert.depth) == self.normal_form(x, cert.depth)
    }

    /// `x ∈ I_{(H,S)}` decided in the quotient system `(B/H, L, θ, [I_α]; [S])`:
    /// drop the terms over `H`, move the rest to the quotient, and test for a
    /// zero normal form there.
    pub fn membership_via_quotient(&self, x: &AlgElement, pair: &Pair) -> Result<bool> {
        self.check(x)?;
        check_pair(self.system(), pair)?;
        let q = quotient_system(self.system(), pair.h, Some(pair.s))?;
        let mut position = vec![None; self.view().n()];
        for (i, &a) in q.atoms.iter().enumerate() {
            position[a] = Some(i);
        }
        let mut image = AlgElement::zero();
        for (t, c) in x.terms() {
            if let Some(i) = position[t.atom] {
                image.add_term(NormalTerm::new(t.left.clone(), i, t.right.clone()), c.clone());
            }
        }
        let qc = Calculus::new(&q.system)?;
        qc.check(&image)?;
        Ok(qc.normal_form(&image, image.max_level() + 1).is_zero())
    }

    /// Reference decision by dense elimination over every family vector
    /// (including the redundant ones) whose words have length at most
    /// `max_len`. Exponential; meant for cross-checking on small systems.
    pub fn membership_dense(&self, x: &AlgElement, pair: &Pair, depth: usize, max_len: usize) -> Result<bool> {
        self.check(x)?;
        check_pair(self.system(), pair)?;
        let fv = self.view();
        let words = all_words(fv.num_labels(), max_len);
        let mut family: Vec<AlgElement> = Vec::new();
        for a in 0..fv.n() {
            let in_h = pair.h.contains(a);
            if !in_h && !pair.s.contains(a) {
                continue;
            }
            for l in &words {
                if !fv.word_ideal(l).contains(a) {
                    continue;
                }
                for r in &words {
                    if !fv.word_ideal(r).contains(a) {
                        continue;
                    }
                    let t = NormalTerm::new(l.clone(), a, r.clone());
                    let f = if in_h {
                        FamilyVector::HTerm(t)
                    } else {
                        FamilyVector::Defect(t)
                    };
                    family.push(self.family_vector(&f, pair.h, depth));
                }
            }
        }
        let target = self.normal_form(x, depth);
        let mut columns: BTreeMap<NormalTerm, usize> = BTreeMap::new();
        for v in family.iter().chain(std::iter::once(&target)) {
            for (t, _) in v.terms() {
                let n = columns.len();
                columns.entry(t.clone()).or_insert(n);
            }
        }
        let dense = |v: &AlgElement| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (t, c) in v.terms() {
                row[columns[t]] = c.clone();
            }
            row
        };
        let mut m = RationalMatrix::new(columns.len());
        for v in &family {
            m.push_row(dense(v));
        }
        Ok(m.row_space_contains(&dense(&target)))
    }

    /// Generators of `I_{(H,S)}`: `p_a` for atoms of `H` and the defect
    /// `p_a − Σ_{γ : θ_γ(a) ⊄ H} s_{γ,θ_γ(a)} s*_{γ,θ_γ(a)}` for the other
    /// atoms of `S`.
    pub fn ideal_generators(&self, pair: &Pair) -> Result<Vec<AlgElement>> {
        check_pair(self.system(), pair)?;
        Ok(pair
            .s
            .iter()
            .map(|a| {
                if pair.h.contains(a) {
                    AlgElement::from_term(NormalTerm::projection(a))
                } else {
                    self.defect_vector(&NormalTerm::projection(a), pair.h)
                }
            })
            .collect())
    }

    /// Reads `(H, S)` back from the ideal: `H` is the set of atoms whose
    /// projection is a member, `S` the atoms of `B_H` whose defect is.
    pub fn recover_pair(&self, pair: &Pair, depth: usize) -> Result<Pair> {
        check_pair(self.system(), pair)?;
        let fv = self.view();
        let decide = |x: &AlgElement, what: &dyn Fn() -> String| -> Result<bool> {
            match self.ideal_membership(x, pair, depth)? {
                Membership::In(_) => Ok(true),
                Membership::NotIn => Ok(false),
                Membership::Inconclusive => Err(Error::DepthExceeded { depth, detail: what() }),
            }
        };
        let mut h = AtomSet::EMPTY;
        for a in 0..fv.n() {
            let p = AlgElement::from_term(NormalTerm::projection(a));
            if decide(&p, &|| format!("membership of p_{}", self.system().show_atoms(AtomSet::singleton(a))))? {
                h = h.with(a);
            }
        }
        let mut s = AtomSet::EMPTY;
        for a in compute_bh(fv, h).iter() {
            let v = self.defect_vector(&NormalTerm::projection(a), h);
            if decide(&v, &|| format!("membership of the defect at {}", self.system().show_atoms(AtomSet::singleton(a))))? {
                s = s.with(a);
            }
        }
        Ok(Pair { h, s })
    }
}

fn all_words(labels: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in 0..labels {
                next.push(w.push(l));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Default membership depth for pair recovery: twice the number of atoms.
pub fn default_depth(sys: &RelativeGBDS) -> Result<usize> {
    Ok(2 * sys.finite()?.n())
}
