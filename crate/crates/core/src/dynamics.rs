//! Boolean dynamical systems and their first-order invariants.
//!
//! A system is a Boolean algebra with one action `θ_α` per label. The
//! generalized variant adds an ideal `I_α ⊇ R_α` per label, and the relative
//! variant an ideal `J` of the regular sets on which the summation relation
//! is imposed.
//!
//! On a finite backend two reductions keep everything atom-wise:
//!
//! * `Δ_{A∪B} = Δ_A ∪ Δ_B` because each `θ_α` preserves unions, so `A` is
//!   regular (every nonempty `B ⊆ A` has `Δ_B ≠ ∅`) iff every atom of `A` has
//!   `Δ ≠ ∅`. The alphabet is finite, so `λ < ∞` holds automatically and the
//!   regular sets form the principal ideal generated by those atoms.
//! * `θ_α` is monotone, so `θ_α(⊤)` is the largest element of the range and
//!   `R_α` is principal with that generator. For a word `α = α_1⋯α_n` the
//!   same argument shows `I_α` is generated by `θ_{α_2⋯α_n}(gen I_{α_1})`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::boolean::sample::random_element;
use crate::boolean::{
    same_algebra, Action, ActionForm, Algebra, AtomSet, DualMap, Element, Ideal, IdealForm,
};
use crate::error::{Error, Result};

/// Number of random elements used when a containment can only be sampled.
const CONTAINMENT_SAMPLES: usize = 256;

/// A finite word over the alphabet, stored as label indices.
///
/// Words order lexicographically with a proper prefix first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(l: usize) -> Word {
        Word(vec![l])
    }

    pub fn from_letters(letters: Vec<usize>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: usize) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    /// `Some(rest)` when `self = prefix · rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Word(r.to_vec()))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// A Boolean algebra with one action per label.
#[derive(Clone, Debug)]
pub struct BooleanDynamicalSystem {
    algebra: Arc<Algebra>,
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    actions: Vec<Action>,
    regular_closed_form: Option<Ideal>,
}

impl BooleanDynamicalSystem {
    pub fn new(algebra: Arc<Algebra>, actions: Vec<(String, Action)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut index = BTreeMap::new();
        let mut acts = Vec::new();
        for (l, a) in actions {
            if !same_algebra(&algebra, a.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
            if index.insert(l.clone(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel(l));
            }
            labels.push(l);
            acts.push(a);
        }
        Ok(BooleanDynamicalSystem {
            algebra,
            labels,
            index,
            actions: acts,
            regular_closed_form: None,
        })
    }

    /// Supplies the regular ideal for a backend where it cannot be computed
    /// atom-wise. The caller is responsible for its correctness.
    pub fn with_regular_closed_form(mut self, regular: Ideal) -> Self {
        self.regular_closed_form = Some(regular);
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn action(&self, label: usize) -> &Action {
        &self.actions[label]
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn single_char_labels(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word. With single-character labels the word is read letter by
    /// letter (`"ee"`); otherwise labels are separated by `.`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Word::empty());
        }
        let letters = if self.single_char_labels() {
            s.chars()
                .map(|c| self.label_index(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.split('.')
                .map(|p| self.label_index(p.trim()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    pub fn show_word(&self, w: &Word) -> String {
        let parts: Vec<&str> = w.0.iter().map(|&l| self.labels[l].as_str()).collect();
        if self.single_char_labels() {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&l| l >= self.labels.len()) {
            Some(l) => Err(Error::UnknownLabel(format!("#{l}"))),
            None => Ok(()),
        }
    }

    /// `θ_w(a)`, applying the first letter first.
    pub fn apply_word(&self, w: &Word, a: &Element) -> Result<Element> {
        self.check_word(w)?;
        w.0.iter()
            .try_fold(a.clone(), |acc, &l| self.actions[l].apply(&acc))
    }

    /// Labels `α` with `θ_α(a) ≠ ∅`, as indices.
    pub fn delta(&self, a: &Element) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (l, act) in self.actions.iter().enumerate() {
            if !act.apply(a)?.is_empty() {
                out.push(l);
            }
        }
        Ok(out)
    }

    pub fn delta_labels(&self, a: &Element) -> Result<BTreeSet<String>> {
        Ok(self
            .delta(a)?
            .into_iter()
            .map(|l| self.labels[l].clone())
            .collect())
    }

    pub fn lambda(&self, a: &Element) -> Result<usize> {
        Ok(self.delta(a)?.len())
    }

    fn duals(&self) -> Option<Vec<&DualMap>> {
        self.actions.iter().map(Action::as_dual).collect()
    }

    /// The ideal of regular sets.
    pub fn regular_ideal(&self) -> Result<Ideal> {
        if let Some(r) = &self.regular_closed_form {
            return Ok(r.clone());
        }
        match (self.algebra.as_finite(), self.duals()) {
            (Some(_), Some(duals)) => {
                let gen = duals.iter().fold(AtomSet::EMPTY, |acc, d| acc | d.domain_targets());
                Ideal::principal_atoms(&self.algebra, gen)
            }
            _ => Err(Error::UnsupportedBackend(
                "regular sets of an infinite backend need a closed form".into(),
            )),
        }
    }

    /// The range ideal `R_α = {A : A ⊆ θ_α(B) for some B}`.
    pub fn range_ideal(&self, label: usize) -> Result<Ideal> {
        match self.actions[label].form() {
            ActionForm::Dual(d) => Ideal::principal_atoms(&self.algebra, d.domain()),
            ActionForm::Callable(c) => match &c.range_rule {
                Some(rule) => Ok(Ideal::range(&self.algebra, self.labels[label].clone(), rule.clone())),
                None => Err(Error::UnsupportedBackend(format!(
                    "action `{}` has no range rule",
                    self.labels[label]
                ))),
            },
        }
    }
}

impl DualMap {
    /// Atoms `y` with `θ({y}) ≠ ∅`, i.e. the image of the dual map.
    pub fn domain_targets(&self) -> AtomSet {
        self.images().iter().flatten().copied().collect()
    }
}

/// A system together with the ideals `I_α` in which `s_{α,B}` may live.
#[derive(Clone, Debug)]
pub struct GeneralizedBDS {
    base: BooleanDynamicalSystem,
    ideals: Vec<Ideal>,
}

impl GeneralizedBDS {
    /// Certifies `R_α ⊆ I_α` for every label.
    pub fn new(base: BooleanDynamicalSystem, ideals: Vec<Ideal>) -> Result<Self> {
        let g = GeneralizedBDS::new_unchecked(base, ideals)?;
        let mut report = ViolationReport::default();
        g.check_ranges(&mut report)?;
        if report.is_valid() {
            Ok(g)
        } else {
            Err(Error::InvalidSystem(report))
        }
    }

    /// Assembles without certifying `R_α ⊆ I_α`; see [`validate_system`].
    pub fn new_unchecked(base: BooleanDynamicalSystem, ideals: Vec<Ideal>) -> Result<Self> {
        if ideals.len() != base.labels.len() {
            return Err(Error::InvalidIdeal(format!(
                "{} ideals for {} labels",
                ideals.len(),
                base.labels.len()
            )));
        }
        if ideals.iter().any(|i| !same_algebra(i.algebra(), &base.algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(GeneralizedBDS { base, ideals })
    }

    /// `I_α = R_α` for every label.
    pub fn with_range_ideals(base: BooleanDynamicalSystem) -> Result<Self> {
        let ideals = (0..base.labels.len())
            .map(|l| base.range_ideal(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneralizedBDS { base, ideals })
    }

    pub fn base(&self) -> &BooleanDynamicalSystem {
        &self.base
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn ideal(&self, label: usize) -> &Ideal {
        &self.ideals[label]
    }

    /// `I_α` for a word: the whole algebra for the empty word, otherwise the
    /// principal ideal of `θ_{α_2⋯α_n}(gen I_{α_1})`.
    pub fn word_ideal(&self, w: &Word) -> Result<Ideal> {
        let alg = &self.base.algebra;
        if alg.as_finite().is_none() {
            return Err(Error::UnsupportedBackend("word ideals need a finite backend".into()));
        }
        self.base.check_word(w)?;
        let Some((&first, rest)) = w.0.split_first() else {
            return Ok(Ideal::principal(Element::top(alg).expect("finite algebras are unital")));
        };
        let gen = self.ideals[first]
            .generator()
            .ok_or_else(|| Error::UnsupportedIdealForm("non-principal ideal on a finite backend".into()))?;
        Ok(Ideal::principal(self.base.apply_word(&Word(rest.to_vec()), gen)?))
    }

    fn check_ranges(&self, report: &mut ViolationReport) -> Result<()> {
        let alg = &self.base.algebra;
        for (l, ideal) in self.ideals.iter().enumerate() {
            let label = self.base.labels[l].clone();
            if let IdealForm::Range { label: of, .. } = ideal.form() {
                if *of == label {
                    continue;
                }
            }
            if let (Some(f), ActionForm::Dual(d), Some(gen)) =
                (alg.as_finite(), self.base.actions[l].form(), ideal.generator_atoms())
            {
                if let Some(x) = (d.domain() - gen).iter().next() {
                    report.violations.push(Violation::RangeExceedsIdeal {
                        label,
                        witness: f.show(AtomSet::singleton(x)),
                    });
                }
                continue;
            }
            // R_α is generated by the images θ_α(B), so it suffices to test those.
            let mut rng = StdRng::seed_from_u64(l as u64);
            for _ in 0..CONTAINMENT_SAMPLES {
                let b = random_element(alg, &mut rng);
                let image = self.base.actions[l].apply(&b)?;
                if !ideal.contains(&image)? {
                    report.violations.push(Violation::RangeExceedsIdeal {
                        label: label.clone(),
                        witness: image.to_string(),
                    });
                    break;
                }
            }
        }
        Ok(())
    }
}

/// A generalized system with an ideal `J ⊆ B_reg`.
#[derive(Clone, Debug)]
pub struct RelativeGBDS {
    base: GeneralizedBDS,
    relative: Ideal,
    finite: Option<Arc<FiniteView>>,
}

impl RelativeGBDS {
    /// Certifies `R_α ⊆ I_α` and `J ⊆ B_reg`.
    pub fn new(base: GeneralizedBDS, relative: Ideal) -> Result<Self> {
        let sys = RelativeGBDS::new_unchecked(base, relative)?;
        let report = validate_system(&sys)?;
        if report.is_valid() {
            Ok(sys)
        } else {
            Err(Error::InvalidSystem(report))
        }
    }

    /// `J = B_reg`.
    pub fn with_regular(base: GeneralizedBDS) -> Result<Self> {
        let reg = base.base.regular_ideal()?;
        RelativeGBDS::new(base, reg)
    }

    pub fn new_unchecked(base: GeneralizedBDS, relative: Ideal) -> Result<Self> {
        if !same_algebra(relative.algebra(), &base.base.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let finite = FiniteView::build(&base, &relative)?.map(Arc::new);
        Ok(RelativeGBDS {
            base,
            relative,
            finite,
        })
    }

    pub fn generalized(&self) -> &GeneralizedBDS {
        &self.base
    }

    pub fn bds(&self) -> &BooleanDynamicalSystem {
        &self.base.base
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.base.base.algebra
    }

    pub fn labels(&self) -> &[String] {
        &self.base.base.labels
    }

    pub fn relative(&self) -> &Ideal {
        &self.relative
    }

    /// Replaces `J`, re-certifying the system.
    pub fn with_relative(&self, relative: Ideal) -> Result<RelativeGBDS> {
        RelativeGBDS::new(self.base.clone(), relative)
    }

    /// Precomputed atom-level data; only available on a finite backend.
    pub fn finite(&self) -> Result<&FiniteView> {
        self.finite
            .as_deref()
            .ok_or_else(|| Error::UnsupportedBackend("operation needs a finite backend".into()))
    }

    /// Atom label lookup on a finite backend.
    pub fn atom_labels(&self) -> Result<&[String]> {
        self.algebra()
            .as_finite()
            .map(|f| f.labels())
            .ok_or_else(|| Error::UnsupportedBackend("atoms exist only in finite backends".into()))
    }

    pub fn show_atoms(&self, set: AtomSet) -> String {
        match self.algebra().as_finite() {
            Some(f) => f.show(set),
            None => format!("{set:?}"),
        }
    }
}

/// Atom-level tables for a finite system: dual maps, ideal generators, `Δ`.
#[derive(Clone, Debug)]
pub struct FiniteView {
    n: usize,
    duals: Vec<DualMap>,
    ideals: Vec<AtomSet>,
    relative: AtomSet,
    regular: AtomSet,
    // bit l of delta[x] is set iff θ_l({x}) ≠ ∅
    delta: Vec<u64>,
}

impl FiniteView {
    fn build(g: &GeneralizedBDS, relative: &Ideal) -> Result<Option<FiniteView>> {
        let Some(f) = g.base.algebra.as_finite() else {
            return Ok(None);
        };
        let Some(duals) = g.base.duals() else {
            return Ok(None);
        };
        if g.base.labels.len() > 64 {
            return Err(Error::SizeLimit {
                atoms: g.base.labels.len(),
                limit: 64,
            });
        }
        let non_principal = || Error::UnsupportedIdealForm("non-principal ideal on a finite backend".into());
        let ideals = g
            .ideals
            .iter()
            .map(|i| i.generator_atoms().ok_or_else(non_principal))
            .collect::<Result<Vec<_>>>()?;
        let relative = relative.generator_atoms().ok_or_else(non_principal)?;
        let n = f.len();
        let mut delta = vec![0u64; n];
        for (l, d) in duals.iter().enumerate() {
            for y in d.domain_targets().iter() {
                delta[y] |= 1 << l;
            }
        }
        let regular = (0..n).filter(|&x| delta[x] != 0).collect();
        Ok(Some(FiniteView {
            n,
            duals: duals.into_iter().cloned().collect(),
            ideals,
            relative,
            regular,
            delta,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_labels(&self) -> usize {
        self.duals.len()
    }

    pub fn top(&self) -> AtomSet {
        AtomSet::full(self.n)
    }

    pub fn dual(&self, label: usize) -> &DualMap {
        &self.duals[label]
    }

    #[inline]
    pub fn theta(&self, label: usize, a: AtomSet) -> AtomSet {
        self.duals[label].apply(a)
    }

    pub fn theta_word(&self, w: &Word, a: AtomSet) -> AtomSet {
        w.0.iter().fold(a, |acc, &l| self.duals[l].apply(acc))
    }

    /// `gen I_α`.
    pub fn ideal(&self, label: usize) -> AtomSet {
        self.ideals[label]
    }

    pub fn relative(&self) -> AtomSet {
        self.relative
    }

    pub fn regular(&self) -> AtomSet {
        self.regular
    }

    /// `Δ_{x}` for an atom, as a bit mask over labels.
    pub fn delta_atom(&self, x: usize) -> u64 {
        self.delta[x]
    }

    pub fn delta(&self, a: AtomSet) -> u64 {
        a.iter().fold(0, |acc, x| acc | self.delta[x])
    }

    /// Generator of `I_w`.
    pub fn word_ideal(&self, w: &Word) -> AtomSet {
        match w.0.split_first() {
            None => self.top(),
            Some((&first, rest)) => rest
                .iter()
                .fold(self.ideals[first], |acc, &l| self.duals[l].apply(acc)),
        }
    }
}

/// Ways a relative system can fail its definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An element of `R_α` outside `I_α`.
    RangeExceedsIdeal { label: String, witness: String },
    /// An element of `J` that is not regular.
    RelativeNotRegular { witness: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RangeExceedsIdeal { label, witness } => {
                write!(f, "range of `{label}` is not contained in its ideal: witness {witness}")
            }
            Violation::RelativeNotRegular { witness } => {
                write!(f, "relative ideal is not contained in the regular sets: witness {witness}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks `R_α ⊆ I_α` for every label and `J ⊆ B_reg`, with a witness for
/// each failure. Containments that cannot be decided exactly on an infinite
/// backend are sampled.
pub fn validate_system(sys: &RelativeGBDS) -> Result<ViolationReport> {
    let mut report = ViolationReport::default();
    sys.base.check_ranges(&mut report)?;
    if let Ok(fv) = sys.finite() {
        if let Some(x) = (fv.relative - fv.regular).iter().next() {
            report.violations.push(Violation::RelativeNotRegular {
                witness: sys.show_atoms(AtomSet::singleton(x)),
            });
        }
        return Ok(report);
    }
    let reg = sys.bds().regular_ideal()?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..CONTAINMENT_SAMPLES {
        let b = random_element(sys.algebra(), &mut rng);
        if sys.relative.contains(&b)? && !reg.contains(&b)? {
            report.violations.push(Violation::RelativeNotRegular {
                witness: b.to_string(),
            });
            break;
        }
    }
    Ok(report)
}

/// An element of `I_α ∖ R_α`, if one is found. Exact on finite backends;
/// otherwise the generator of `I_α` (when principal) and seeded samples are
/// tried, so `None` only means no witness was seen.
pub fn range_gap_witness(sys: &GeneralizedBDS, label: usize) -> Result<Option<Element>> {
    let bds = sys.base();
    let ideal = sys.ideal(label);
    if let IdealForm::Range { label: of, .. } = ideal.form() {
        if *of == bds.labels[label] {
            return Ok(None);
        }
    }
    let range = bds.range_ideal(label)?;
    let alg = bds.algebra();
    if let (Some(g), Some(r)) = (ideal.generator_atoms(), range.generator_atoms()) {
        return (g - r)
            .iter()
            .next()
            .map(|x| Element::from_atoms(alg, AtomSet::singleton(x)))
            .transpose();
    }
    let mut rng = StdRng::seed_from_u64(label as u64);
    let candidates = ideal
        .generator()
        .cloned()
        .into_iter()
        .chain((0..CONTAINMENT_SAMPLES).map(|_| random_element(alg, &mut rng)));
    for c in candidates {
        if ideal.contains(&c)? && !range.contains(&c)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Builds a finite relative system from dual maps given as atom indices.
///
/// `ideals` defaults to `I_α = R_α` and `relative` to `B_reg`. The result is
/// certified.
pub fn finite_system<S: AsRef<str>, T: AsRef<str>>(
    atoms: &[S],
    labels: &[T],
    maps: Vec<Vec<Option<usize>>>,
    ideals: Option<Vec<AtomSet>>,
    relative: Option<AtomSet>,
) -> Result<RelativeGBDS> {
    let g = finite_generalized(atoms, labels, maps, ideals)?;
    match relative {
        Some(j) => {
            let j = Ideal::principal_atoms(g.base.algebra(), j)?;
            RelativeGBDS::new(g, j)
        }
        None => RelativeGBDS::with_regular(g),
    }
}

/// As [`finite_system`] without the relative ideal.
pub fn finite_generalized<S: AsRef<str>, T: AsRef<str>>(
    atoms: &[S],
    labels: &[T],
    maps: Vec<Vec<Option<usize>>>,
    ideals: Option<Vec<AtomSet>>,
) -> Result<GeneralizedBDS> {
    let alg = Algebra::finite(atoms)?;
    if maps.len() != labels.len() {
        return Err(Error::InvalidValue(format!(
            "{} dual maps for {} labels",
            maps.len(),
            labels.len()
        )));
    }
    let actions = labels
        .iter()
        .zip(maps)
        .map(|(l, m)| Ok((l.as_ref().to_string(), Action::dual(&alg, DualMap::new(m)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let bds = BooleanDynamicalSystem::new(alg.clone(), actions)?;
    match ideals {
        None => GeneralizedBDS::with_range_ideals(bds),
        Some(gens) => {
            let ideals = gens
                .into_iter()
                .map(|g| Ideal::principal_atoms(&alg, g))
                .collect::<Result<Vec<_>>>()?;
            GeneralizedBDS::new(bds, ideals)
        }
    }
}
