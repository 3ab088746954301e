//! Turning a relative system into a generalized one with the same algebra.
//!
//! Elements of the enlarged algebra are pairs `(A,[B]_J)` with
//! `[A]_{B_reg} = [B]_{B_reg}`. On atoms this is the original power set plus
//! one copy atom `x'` for each `x` regular but not in `J`: the original atom
//! `x` stands for `({x},[∅])` and the copy for `(∅,[{x}])`.

use std::collections::BTreeSet;

use crate::boolean::{AtomSet, Ideal};
use crate::dynamics::{finite_generalized, RelativeGBDS, Word};
use crate::error::{Error, Result};
use crate::words::{AlgElement, Calculus, Equality, NormalTerm, DEFAULT_SLACK};

/// The enlarged system with its atom bookkeeping.
#[derive(Clone, Debug)]
pub struct TildeResult {
    original: RelativeGBDS,
    system: RelativeGBDS,
    copies: AtomSet,
    // copy_atom[x] = index of x' for x in `copies`
    copy_atom: Vec<Option<usize>>,
    // underlying[d] = the original atom behind new atom d
    underlying: Vec<usize>,
}

/// A generator and its image under one of the two isomorphisms.
#[derive(Clone, Debug)]
pub struct GeneratorImage {
    pub generator: AlgElement,
    pub image: AlgElement,
}

#[derive(Clone, Debug)]
pub struct IsoGenerators {
    /// Original generators mapped into the enlarged system.
    pub phi: Vec<GeneratorImage>,
    /// Generators of the enlarged system mapped back.
    pub rho: Vec<GeneratorImage>,
}

/// A generator that a round trip did not fix.
#[derive(Clone, Debug)]
pub struct RoundTripFailure {
    /// `ρ∘φ` (original side) or `φ∘ρ` (enlarged side).
    pub direction: &'static str,
    pub generator: AlgElement,
    pub outcome: Equality,
}

fn unique_name(taken: &BTreeSet<String>, base: &str) -> String {
    let mut name = format!("{base}'");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Builds the enlarged system. The relative ideal of the result is its own
/// regular ideal, so it is a plain generalized system.
pub fn tilde(rsys: &RelativeGBDS) -> Result<TildeResult> {
    let fv = rsys.finite()?;
    let n = fv.n();
    let atom_labels = rsys.atom_labels()?;
    let copies = fv.regular() - fv.relative();

    let mut taken: BTreeSet<String> = atom_labels.iter().cloned().collect();
    let mut labels: Vec<String> = atom_labels.to_vec();
    let mut copy_atom = vec![None; n];
    let mut underlying: Vec<usize> = (0..n).collect();
    for x in copies.iter() {
        let name = unique_name(&taken, &atom_labels[x]);
        taken.insert(name.clone());
        copy_atom[x] = Some(labels.len());
        labels.push(name);
        underlying.push(x);
    }

    let encode = |a: AtomSet| -> AtomSet {
        (a & copies)
            .iter()
            .fold(a, |acc, x| acc.with(copy_atom[x].expect("copy atom")))
    };
    let maps: Vec<Vec<Option<usize>>> = (0..fv.num_labels())
        .map(|l| {
            let f = fv.dual(l);
            underlying.iter().map(|&x| f.image(x)).collect()
        })
        .collect();
    let ideals: Vec<AtomSet> = (0..fv.num_labels()).map(|l| encode(fv.ideal(l))).collect();
    let gen = finite_generalized(&labels, rsys.labels(), maps, Some(ideals))?;
    let system = RelativeGBDS::with_regular(gen)?;
    Ok(TildeResult {
        original: rsys.clone(),
        system,
        copies,
        copy_atom,
        underlying,
    })
}

impl TildeResult {
    pub fn original(&self) -> &RelativeGBDS {
        &self.original
    }

    pub fn system(&self) -> &RelativeGBDS {
        &self.system
    }

    /// Original atoms that received a copy: `gen(B_reg) ∖ gen(J)`.
    pub fn copies(&self) -> AtomSet {
        self.copies
    }

    /// Index of `x'` in the enlarged system.
    pub fn copy_atom(&self, x: usize) -> Option<usize> {
        self.copy_atom.get(x).copied().flatten()
    }

    /// The original atom behind a new atom.
    pub fn underlying(&self, d: usize) -> usize {
        self.underlying[d]
    }

    /// `(A,[B]_J)` as a set of new atoms; requires `A` and `B` to agree
    /// outside the regular atoms.
    pub fn encode(&self, a: AtomSet, b: AtomSet) -> Result<AtomSet> {
        let fv = self.original.finite()?;
        let reg = fv.regular();
        if a - reg != b - reg {
            return Err(Error::InvalidValue(format!(
                "{} and {} differ outside the regular sets",
                self.original.show_atoms(a),
                self.original.show_atoms(b)
            )));
        }
        Ok((b & self.copies)
            .iter()
            .fold(a, |acc, x| acc.with(self.copy_atom[x].expect("copy atom"))))
    }

    /// A representative `(A, B)` of an element of the enlarged algebra.
    pub fn decode(&self, e: AtomSet) -> (AtomSet, AtomSet) {
        let n = self.copy_atom.len();
        let a = e & AtomSet::full(n);
        let b = (a - self.copies)
            | e.iter().filter(|&d| d >= n).map(|d| self.underlying[d]).collect();
        (a, b)
    }

    /// `{(A,∅) : A ∈ B_reg}` in new coordinates.
    pub fn expected_regular(&self) -> Result<AtomSet> {
        let reg = self.original.finite()?.regular();
        self.encode(reg, AtomSet::EMPTY)
    }

    /// `φ((α,a,β)) = Σ_{d ⊆ (a,[a])} (α,d,β)`, extended linearly.
    pub fn phi(&self, x: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero();
        for (t, c) in x.terms() {
            out.add_term(t.clone(), c.clone());
            if let Some(d) = self.copy_atom(t.atom) {
                out.add_term(NormalTerm::new(t.left.clone(), d, t.right.clone()), c.clone());
            }
        }
        out
    }

    /// `ρ(p_{(A,[B])}) = p_A + q_{B∖A} − q_{A∖B}` on atoms, where `q` is the
    /// summation defect; partial isometries map by relabelling.
    fn rho_projection(&self, calc: &Calculus, d: usize) -> AlgElement {
        let x = self.underlying[d];
        let p = calc.p(AtomSet::singleton(x));
        let q = calc.defect(x, AtomSet::EMPTY);
        if d >= self.copy_atom.len() {
            q
        } else if self.copies.contains(x) {
            &p - &q
        } else {
            p
        }
    }

    /// `ρ((α,d,β)) = s_{α,x} ρ(p_d) s*_{β,x}` with `x` the atom behind `d`.
    pub fn rho(&self, x: &AlgElement) -> Result<AlgElement> {
        let calc = Calculus::new(&self.original)?;
        Calculus::new(&self.system)?.check(x)?;
        let mut out = AlgElement::zero();
        for (t, c) in x.terms() {
            let u = AtomSet::singleton(self.underlying[t.atom]);
            let left = calc.s(&t.left, u)?;
            let right = calc.s(&t.right, u)?.adjoint();
            let mid = self.rho_projection(&calc, t.atom);
            let img = calc.mul(&calc.mul(&left, &mid)?, &right)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// Projections on atoms and `s_{α,b}` for atoms `b` of `gen I_α`.
    fn generators(sys: &RelativeGBDS) -> Result<Vec<AlgElement>> {
        let fv = sys.finite()?;
        let mut out: Vec<AlgElement> = (0..fv.n())
            .map(|a| AlgElement::from_term(NormalTerm::projection(a)))
            .collect();
        for l in 0..fv.num_labels() {
            for b in fv.ideal(l).iter() {
                out.push(AlgElement::from_term(NormalTerm::new(Word::letter(l), b, Word::empty())));
            }
        }
        Ok(out)
    }

    /// The generator tables of both isomorphisms.
    pub fn iso_generators(&self) -> Result<IsoGenerators> {
        let phi = Self::generators(&self.original)?
            .into_iter()
            .map(|g| GeneratorImage {
                image: self.phi(&g),
                generator: g,
            })
            .collect();
        let rho = Self::generators(&self.system)?
            .into_iter()
            .map(|g| {
                Ok(GeneratorImage {
                    image: self.rho(&g)?,
                    generator: g,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IsoGenerators { phi, rho })
    }

    /// Checks `ρ∘φ` and `φ∘ρ` on every generator modulo the summation
    /// relation. An empty result means both round trips fix all generators.
    pub fn check_round_trips(&self) -> Result<Vec<RoundTripFailure>> {
        let orig = Calculus::new(&self.original)?;
        let new = Calculus::new(&self.system)?;
        let iso = self.iso_generators()?;
        let mut failures = Vec::new();
        for g in &iso.phi {
            let back = self.rho(&g.image)?;
            let outcome = orig.eq_modulo_ck(&back, &g.generator, DEFAULT_SLACK)?;
            if outcome != Equality::Equal {
                failures.push(RoundTripFailure {
                    direction: "ρ∘φ",
                    generator: g.generator.clone(),
                    outcome,
                });
            }
        }
        for g in &iso.rho {
            let back = self.phi(&g.image);
            let outcome = new.eq_modulo_ck(&back, &g.generator, DEFAULT_SLACK)?;
            if outcome != Equality::Equal {
                failures.push(RoundTripFailure {
                    direction: "φ∘ρ",
                    generator: g.generator.clone(),
                    outcome,
                });
            }
        }
        Ok(failures)
    }

    /// `Ĩ_α` as an ideal of the enlarged algebra.
    pub fn ideal(&self, label: usize) -> &Ideal {
        self.system.generalized().ideal(label)
    }
}
