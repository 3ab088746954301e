use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::atoms::{AtomSet, MAX_ATOMS};
use crate::error::{Error, Result};

/// A (generalized) Boolean algebra backend.
///
/// Finite algebras are power sets of an explicit list of atoms. The two
/// countable backends are the finite subsets of ℕ and the finite-or-cofinite
/// subsets of ℕ; products combine any two backends coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    Finite(FiniteAlgebra),
    FinSubsets,
    FinCofin,
    Product(Arc<Algebra>, Arc<Algebra>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl FiniteAlgebra {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn atom_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownAtom(label.to_string()))
    }

    pub fn label(&self, atom: usize) -> &str {
        &self.labels[atom]
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<AtomSet> {
        labels
            .iter()
            .map(|l| self.atom_index(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(AtomSet::from_atoms)
    }

    pub fn labels_of(&self, set: AtomSet) -> Vec<String> {
        set.iter().map(|a| self.labels[a].clone()).collect()
    }

    /// `{v,w}` style rendering of an atom set.
    pub fn show(&self, set: AtomSet) -> String {
        format!("{{{}}}", self.labels_of(set).join(","))
    }
}

/// Canonical value of an element, per backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Atoms(AtomSet),
    Finite(BTreeSet<u64>),
    FinCofin(FinCofin),
    Pair(Box<Value>, Box<Value>),
}

/// A finite set `support`, or the cofinite set `ℕ ∖ support`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinCofin {
    pub cofinite: bool,
    pub support: BTreeSet<u64>,
}

impl FinCofin {
    pub fn finite<I: IntoIterator<Item = u64>>(it: I) -> Self {
        FinCofin {
            cofinite: false,
            support: it.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Self {
        FinCofin {
            cofinite: true,
            support: missing.into_iter().collect(),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.support.contains(&n) != self.cofinite
    }

    fn union(&self, o: &FinCofin) -> FinCofin {
        match (self.cofinite, o.cofinite) {
            (false, false) => FinCofin::finite(self.support.union(&o.support).copied()),
            (false, true) => FinCofin::cofinite(o.support.difference(&self.support).copied()),
            (true, false) => FinCofin::cofinite(self.support.difference(&o.support).copied()),
            (true, true) => FinCofin::cofinite(self.support.intersection(&o.support).copied()),
        }
    }

    fn intersection(&self, o: &FinCofin) -> FinCofin {
        match (self.cofinite, o.cofinite) {
            (false, false) => FinCofin::finite(self.support.intersection(&o.support).copied()),
            (false, true) => FinCofin::finite(self.support.difference(&o.support).copied()),
            (true, false) => FinCofin::finite(o.support.difference(&self.support).copied()),
            (true, true) => FinCofin::cofinite(self.support.union(&o.support).copied()),
        }
    }

    fn difference(&self, o: &FinCofin) -> FinCofin {
        match (self.cofinite, o.cofinite) {
            (false, false) => FinCofin::finite(self.support.difference(&o.support).copied()),
            (false, true) => FinCofin::finite(self.support.intersection(&o.support).copied()),
            (true, false) => FinCofin::cofinite(self.support.union(&o.support).copied()),
            (true, true) => FinCofin::finite(o.support.difference(&self.support).copied()),
        }
    }
}

impl fmt::Display for FinCofin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(u64::to_string).collect();
        match (self.cofinite, items.is_empty()) {
            (false, true) => write!(f, "∅"),
            (false, false) => write!(f, "{{{}}}", items.join(",")),
            (true, true) => write!(f, "ℕ"),
            (true, false) => write!(f, "ℕ∖{{{}}}", items.join(",")),
        }
    }
}

impl Algebra {
    /// A power-set algebra with one atom per label.
    pub fn finite<S: AsRef<str>>(labels: &[S]) -> Result<Arc<Algebra>> {
        if labels.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms {
                got: labels.len(),
                max: MAX_ATOMS,
            });
        }
        let mut index = BTreeMap::new();
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref().to_string();
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateAtom(l));
            }
            owned.push(l);
        }
        Ok(Arc::new(Algebra::Finite(FiniteAlgebra {
            labels: owned,
            index,
        })))
    }

    pub fn fin_subsets() -> Arc<Algebra> {
        Arc::new(Algebra::FinSubsets)
    }

    pub fn fin_cofin() -> Arc<Algebra> {
        Arc::new(Algebra::FinCofin)
    }

    pub fn product(left: Arc<Algebra>, right: Arc<Algebra>) -> Arc<Algebra> {
        Arc::new(Algebra::Product(left, right))
    }

    pub fn as_finite(&self) -> Option<&FiniteAlgebra> {
        match self {
            Algebra::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Algebra::Finite(_))
    }

    /// Number of elements, when it fits in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            Algebra::Finite(f) => Some(1u128 << f.len()),
            Algebra::Product(l, r) => l.cardinality()?.checked_mul(r.cardinality()?),
            _ => None,
        }
    }

    pub fn empty_value(&self) -> Value {
        match self {
            Algebra::Finite(_) => Value::Atoms(AtomSet::EMPTY),
            Algebra::FinSubsets => Value::Finite(BTreeSet::new()),
            Algebra::FinCofin => Value::FinCofin(FinCofin::finite([])),
            Algebra::Product(l, r) => {
                Value::Pair(Box::new(l.empty_value()), Box::new(r.empty_value()))
            }
        }
    }

    /// The unit, if the backend is unital.
    pub fn top_value(&self) -> Option<Value> {
        match self {
            Algebra::Finite(f) => Some(Value::Atoms(AtomSet::full(f.len()))),
            Algebra::FinSubsets => None,
            Algebra::FinCofin => Some(Value::FinCofin(FinCofin::cofinite([]))),
            Algebra::Product(l, r) => Some(Value::Pair(
                Box::new(l.top_value()?),
                Box::new(r.top_value()?),
            )),
        }
    }

    /// Checks that `v` is a well-formed canonical value of this backend.
    pub fn check_value(&self, v: &Value) -> Result<()> {
        match (self, v) {
            (Algebra::Finite(f), Value::Atoms(s)) => {
                if s.is_subset(AtomSet::full(f.len())) {
                    Ok(())
                } else {
                    Err(Error::InvalidValue(format!("{s:?} has atoms outside the algebra")))
                }
            }
            (Algebra::FinSubsets, Value::Finite(_)) => Ok(()),
            (Algebra::FinCofin, Value::FinCofin(_)) => Ok(()),
            (Algebra::Product(l, r), Value::Pair(a, b)) => {
                l.check_value(a)?;
                r.check_value(b)
            }
            _ => Err(Error::AlgebraMismatch),
        }
    }

    pub fn show(&self, v: &Value) -> String {
        match (self, v) {
            (Algebra::Finite(f), Value::Atoms(s)) => f.show(*s),
            (_, Value::Finite(s)) if s.is_empty() => "∅".into(),
            (_, Value::Finite(s)) => {
                let items: Vec<String> = s.iter().map(u64::to_string).collect();
                format!("{{{}}}", items.join(","))
            }
            (_, Value::FinCofin(fc)) => fc.to_string(),
            (Algebra::Product(l, r), Value::Pair(a, b)) => {
                format!("({}, {})", l.show(a), r.show(b))
            }
            (_, other) => format!("{other:?}"),
        }
    }
}

pub(crate) fn value_union(a: &Value, b: &Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Atoms(x), Value::Atoms(y)) => Value::Atoms(*x | *y),
        (Value::Finite(x), Value::Finite(y)) => Value::Finite(x.union(y).copied().collect()),
        (Value::FinCofin(x), Value::FinCofin(y)) => Value::FinCofin(x.union(y)),
        (Value::Pair(a1, a2), Value::Pair(b1, b2)) => Value::Pair(
            Box::new(value_union(a1, b1)?),
            Box::new(value_union(a2, b2)?),
        ),
        _ => return Err(Error::AlgebraMismatch),
    })
}

pub(crate) fn value_intersection(a: &Value, b: &Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Atoms(x), Value::Atoms(y)) => Value::Atoms(*x & *y),
        (Value::Finite(x), Value::Finite(y)) => {
            Value::Finite(x.intersection(y).copied().collect())
        }
        (Value::FinCofin(x), Value::FinCofin(y)) => Value::FinCofin(x.intersection(y)),
        (Value::Pair(a1, a2), Value::Pair(b1, b2)) => Value::Pair(
            Box::new(value_intersection(a1, b1)?),
            Box::new(value_intersection(a2, b2)?),
        ),
        _ => return Err(Error::AlgebraMismatch),
    })
}

pub(crate) fn value_difference(a: &Value, b: &Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Atoms(x), Value::Atoms(y)) => Value::Atoms(*x - *y),
        (Value::Finite(x), Value::Finite(y)) => Value::Finite(x.difference(y).copied().collect()),
        (Value::FinCofin(x), Value::FinCofin(y)) => Value::FinCofin(x.difference(y)),
        (Value::Pair(a1, a2), Value::Pair(b1, b2)) => Value::Pair(
            Box::new(value_difference(a1, b1)?),
            Box::new(value_difference(a2, b2)?),
        ),
        _ => return Err(Error::AlgebraMismatch),
    })
}

pub(crate) fn value_is_empty(a: &Value) -> bool {
    match a {
        Value::Atoms(x) => x.is_empty(),
        Value::Finite(x) => x.is_empty(),
        Value::FinCofin(x) => !x.cofinite && x.support.is_empty(),
        Value::Pair(l, r) => value_is_empty(l) && value_is_empty(r),
    }
}

/// An element of a specific algebra. Equality is structural because every
/// backend stores a canonical form.
#[derive(Clone, Debug)]
pub struct Element {
    algebra: Arc<Algebra>,
    value: Value,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Eq for Element {}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn new(algebra: Arc<Algebra>, value: Value) -> Result<Element> {
        algebra.check_value(&value)?;
        Ok(Element { algebra, value })
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, value: Value) -> Element {
        Element { algebra, value }
    }

    pub fn empty(algebra: &Arc<Algebra>) -> Element {
        Element {
            value: algebra.empty_value(),
            algebra: algebra.clone(),
        }
    }

    pub fn top(algebra: &Arc<Algebra>) -> Option<Element> {
        Some(Element {
            value: algebra.top_value()?,
            algebra: algebra.clone(),
        })
    }

    /// Finite backend: the element with the given atom labels.
    pub fn from_labels<S: AsRef<str>>(algebra: &Arc<Algebra>, labels: &[S]) -> Result<Element> {
        let f = algebra
            .as_finite()
            .ok_or_else(|| Error::UnsupportedBackend("labels name atoms of a finite algebra".into()))?;
        let mask = f.mask_of(labels)?;
        Ok(Element::new_unchecked(algebra.clone(), Value::Atoms(mask)))
    }

    pub fn from_atoms(algebra: &Arc<Algebra>, set: AtomSet) -> Result<Element> {
        Element::new(algebra.clone(), Value::Atoms(set))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn atoms(&self) -> Option<AtomSet> {
        match self.value {
            Value::Atoms(s) => Some(s),
            _ => None,
        }
    }

    fn check_owner(&self, other: &Element) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn with_value(&self, value: Value) -> Element {
        Element {
            algebra: self.algebra.clone(),
            value,
        }
    }

    pub fn union(&self, other: &Element) -> Result<Element> {
        self.check_owner(other)?;
        Ok(self.with_value(value_union(&self.value, &other.value)?))
    }

    pub fn intersect(&self, other: &Element) -> Result<Element> {
        self.check_owner(other)?;
        Ok(self.with_value(value_intersection(&self.value, &other.value)?))
    }

    pub fn difference(&self, other: &Element) -> Result<Element> {
        self.check_owner(other)?;
        Ok(self.with_value(value_difference(&self.value, &other.value)?))
    }

    /// `self ⊆ other`, i.e. `self ∩ other = self`.
    pub fn subseteq(&self, other: &Element) -> Result<bool> {
        self.check_owner(other)?;
        Ok(value_intersection(&self.value, &other.value)? == self.value)
    }

    pub fn equals(&self, other: &Element) -> Result<bool> {
        self.check_owner(other)?;
        Ok(self.value == other.value)
    }

    pub fn is_empty(&self) -> bool {
        value_is_empty(&self.value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.show(&self.value))
    }
}
