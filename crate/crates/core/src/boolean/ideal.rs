use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::algebra::{same_algebra, value_intersection, value_union, Algebra, Element, Value};
use super::atoms::AtomSet;
use super::sample::random_element;
use crate::error::{Error, Result};

/// A membership test with a human-readable description.
#[derive(Clone)]
pub struct MembershipRule {
    pub description: String,
    test: Arc<dyn Fn(&Value) -> bool + Send + Sync>,
}

impl MembershipRule {
    pub fn new<F>(description: impl Into<String>, test: F) -> Self
    where
        F: Fn(&Value) -> bool + Send + Sync + 'static,
    {
        MembershipRule {
            description: description.into(),
            test: Arc::new(test),
        }
    }

    pub fn test(&self, v: &Value) -> bool {
        (self.test)(v)
    }
}

impl fmt::Debug for MembershipRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MembershipRule({:?})", self.description)
    }
}

#[derive(Clone, Debug)]
pub enum IdealForm {
    /// `{B : B ⊆ g}`.
    Principal(Element),
    /// The range ideal of the action named `label`, given by a closed-form rule.
    Range { label: String, rule: MembershipRule },
    Predicate(MembershipRule),
}

/// An ideal of a Boolean algebra: downward closed and closed under finite
/// unions.
///
/// On a finite backend every ideal is principal, and the constructors
/// normalize to that form.
#[derive(Clone, Debug)]
pub struct Ideal {
    algebra: Arc<Algebra>,
    form: IdealForm,
}

impl Ideal {
    pub fn principal(generator: Element) -> Ideal {
        Ideal {
            algebra: generator.algebra().clone(),
            form: IdealForm::Principal(generator),
        }
    }

    pub fn principal_atoms(algebra: &Arc<Algebra>, generator: AtomSet) -> Result<Ideal> {
        Ok(Ideal::principal(Element::from_atoms(algebra, generator)?))
    }

    /// The zero ideal `{∅}`.
    pub fn zero(algebra: &Arc<Algebra>) -> Ideal {
        Ideal::principal(Element::empty(algebra))
    }

    pub fn range(algebra: &Arc<Algebra>, label: impl Into<String>, rule: MembershipRule) -> Ideal {
        Ideal {
            algebra: algebra.clone(),
            form: IdealForm::Range {
                label: label.into(),
                rule,
            },
        }
        .normalized()
    }

    pub fn predicate(algebra: &Arc<Algebra>, rule: MembershipRule) -> Ideal {
        Ideal {
            algebra: algebra.clone(),
            form: IdealForm::Predicate(rule),
        }
        .normalized()
    }

    /// On a finite backend, replaces a rule by its principal generator: the
    /// union of the atoms the rule accepts.
    fn normalized(self) -> Ideal {
        let Some(f) = self.algebra.as_finite() else {
            return self;
        };
        let rule = match &self.form {
            IdealForm::Principal(_) => return self,
            IdealForm::Range { rule, .. } | IdealForm::Predicate(rule) => rule,
        };
        let gen: AtomSet = (0..f.len())
            .filter(|&a| rule.test(&Value::Atoms(AtomSet::singleton(a))))
            .collect();
        Ideal::principal(Element::new_unchecked(self.algebra.clone(), Value::Atoms(gen)))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn form(&self) -> &IdealForm {
        &self.form
    }

    pub fn generator(&self) -> Option<&Element> {
        match &self.form {
            IdealForm::Principal(g) => Some(g),
            _ => None,
        }
    }

    /// Generator as an atom set; `None` unless principal over a finite backend.
    pub fn generator_atoms(&self) -> Option<AtomSet> {
        self.generator().and_then(Element::atoms)
    }

    pub fn contains(&self, a: &Element) -> Result<bool> {
        if !same_algebra(&self.algebra, a.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(match &self.form {
            IdealForm::Principal(g) => value_intersection(a.value(), g.value())? == *a.value(),
            IdealForm::Range { rule, .. } | IdealForm::Predicate(rule) => rule.test(a.value()),
        })
    }

    /// Smallest ideal containing both; only principal ideals have a closed form.
    pub fn join(&self, other: &Ideal) -> Result<Ideal> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        match (&self.form, &other.form) {
            (IdealForm::Principal(g), IdealForm::Principal(h)) => Ok(Ideal::principal(g.union(h)?)),
            _ => Err(Error::UnsupportedIdealForm(
                "join is only available for principal ideals".into(),
            )),
        }
    }

    /// Intersection of two ideals.
    pub fn meet(&self, other: &Ideal) -> Result<Ideal> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        match (&self.form, &other.form) {
            (IdealForm::Principal(g), IdealForm::Principal(h)) => {
                Ok(Ideal::principal(g.intersect(h)?))
            }
            (IdealForm::Principal(g), IdealForm::Range { rule, .. } | IdealForm::Predicate(rule))
            | (IdealForm::Range { rule, .. } | IdealForm::Predicate(rule), IdealForm::Principal(g)) => {
                let g = g.value().clone();
                let rule = rule.clone();
                let desc = format!("{} and contained in {}", rule.description, self.algebra.show(&g));
                Ok(Ideal::predicate(
                    &self.algebra,
                    MembershipRule::new(desc, move |v| {
                        rule.test(v) && matches!(value_intersection(v, &g), Ok(ref x) if x == v)
                    }),
                ))
            }
            _ => Err(Error::UnsupportedIdealForm(
                "meet of two rule-based ideals".into(),
            )),
        }
    }

    pub fn describe(&self) -> String {
        match &self.form {
            IdealForm::Principal(g) => format!("principal {g}"),
            IdealForm::Range { label, rule } => format!("range of `{label}`: {}", rule.description),
            IdealForm::Predicate(rule) => rule.description.clone(),
        }
    }
}

/// Sample check of the ideal axioms: for random `a`, `b` with `a ∈ I`, both
/// `a ∩ b` and (when `b ∈ I`) `a ∪ b` must be members. Returns the first
/// violating pair.
pub fn check_ideal_laws<R: Rng + ?Sized>(
    ideal: &Ideal,
    samples: usize,
    rng: &mut R,
) -> Result<Option<(Element, Element)>> {
    let alg = ideal.algebra().clone();
    for _ in 0..samples {
        let a = random_element(&alg, rng);
        let b = random_element(&alg, rng);
        if !ideal.contains(&a)? {
            continue;
        }
        if !ideal.contains(&a.intersect(&b)?)? {
            return Ok(Some((a, b)));
        }
        if ideal.contains(&b)? {
            let u = Element::new_unchecked(alg.clone(), value_union(a.value(), b.value())?);
            if !ideal.contains(&u)? {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::FinCofin;

    #[test]
    fn principal_membership_and_join() {
        let a = Algebra::finite(&["v", "w"]).unwrap();
        let vw = Ideal::principal(Element::from_labels(&a, &["v", "w"]).unwrap());
        let w = Element::from_labels(&a, &["w"]).unwrap();
        assert!(vw.contains(&w).unwrap());
        let iv = Ideal::principal(Element::from_labels(&a, &["v"]).unwrap());
        let iw = Ideal::principal(w.clone());
        let j = iv.join(&iw).unwrap();
        assert_eq!(j.generator(), vw.generator());
        assert!(iv.meet(&iw).unwrap().generator().unwrap().is_empty());
    }

    #[test]
    fn product_principal_contains_cofinite_second_coordinate() {
        let alg = Algebra::product(Algebra::fin_subsets(), Algebra::fin_cofin());
        let gen = Element::new(
            alg.clone(),
            Value::Pair(
                Box::new(Value::Finite(Default::default())),
                Box::new(Value::FinCofin(FinCofin::cofinite([]))),
            ),
        )
        .unwrap();
        let x = Element::new(
            alg.clone(),
            Value::Pair(
                Box::new(Value::Finite(Default::default())),
                Box::new(Value::FinCofin(FinCofin::cofinite([5]))),
            ),
        )
        .unwrap();
        assert!(Ideal::principal(gen).contains(&x).unwrap());
    }

    #[test]
    fn finite_rules_normalize_to_principal() {
        let a = Algebra::finite(&["x", "y", "z"]).unwrap();
        let rule = MembershipRule::new("avoids z", |v| match v {
            Value::Atoms(s) => !s.contains(2),
            _ => false,
        });
        let i = Ideal::predicate(&a, rule);
        assert_eq!(i.generator_atoms(), Some(AtomSet::from_atoms([0, 1])));
    }

    #[test]
    fn join_of_rules_is_unsupported() {
        let alg = Algebra::fin_subsets();
        let r = MembershipRule::new("everything", |_| true);
        let i = Ideal::predicate(&alg, r);
        assert!(matches!(i.join(&i), Err(Error::UnsupportedIdealForm(_))));
    }
}
