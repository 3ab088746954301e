use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use super::algebra::{same_algebra, Algebra, Element, Value};
use super::atoms::AtomSet;
use super::ideal::MembershipRule;
use super::sample::random_element;
use crate::error::{Error, Result};

/// A partial map `f` on atoms, read as the action `θ(A) = {x : f(x) ∈ A}`.
///
/// Preimages are Boolean homomorphisms, so every dual map is a valid action
/// and nothing needs to be checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    image: Vec<Option<usize>>,
    // preimage[y] = θ({y}) = {x : f(x) = y}
    preimage: Vec<AtomSet>,
}

impl DualMap {
    pub fn new(image: Vec<Option<usize>>) -> Result<DualMap> {
        let n = image.len();
        let mut preimage = vec![AtomSet::EMPTY; n];
        for (x, y) in image.iter().enumerate() {
            if let Some(y) = *y {
                if y >= n {
                    return Err(Error::InvalidValue(format!("dual map target {y} out of range")));
                }
                preimage[y] = preimage[y].with(x);
            }
        }
        Ok(DualMap { image, preimage })
    }

    pub fn empty(n: usize) -> DualMap {
        DualMap {
            image: vec![None; n],
            preimage: vec![AtomSet::EMPTY; n],
        }
    }

    pub fn image(&self, x: usize) -> Option<usize> {
        self.image[x]
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.image
    }

    /// `θ({y})`.
    pub fn preimage(&self, y: usize) -> AtomSet {
        self.preimage[y]
    }

    #[inline]
    pub fn apply(&self, a: AtomSet) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for y in a.iter() {
            out |= self.preimage[y];
        }
        out
    }

    /// Atoms on which `f` is defined; equal to `θ(⊤)`.
    pub fn domain(&self) -> AtomSet {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|_| x))
            .collect()
    }
}

type ActionFn = dyn Fn(&Value) -> Result<Value> + Send + Sync;

/// An action on an infinite backend given by code, plus an optional rule
/// deciding membership in its range ideal.
#[derive(Clone)]
pub struct CallableAction {
    pub description: String,
    /// Name under which the action is (de)serialized, if any.
    pub builtin: Option<String>,
    pub range_rule: Option<MembershipRule>,
    f: Arc<ActionFn>,
}

impl CallableAction {
    pub fn new<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Value) -> Result<Value> + Send + Sync + 'static,
    {
        CallableAction {
            description: description.into(),
            builtin: None,
            range_rule: None,
            f: Arc::new(f),
        }
    }

    pub fn with_range_rule(mut self, rule: MembershipRule) -> Self {
        self.range_rule = Some(rule);
        self
    }

    pub fn with_builtin(mut self, name: impl Into<String>) -> Self {
        self.builtin = Some(name.into());
        self
    }
}

impl fmt::Debug for CallableAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CallableAction({:?})", self.description)
    }
}

#[derive(Clone, Debug)]
pub enum ActionForm {
    Dual(DualMap),
    Callable(CallableAction),
}

/// A Boolean homomorphism `θ` with `θ(∅) = ∅`.
#[derive(Clone, Debug)]
pub struct Action {
    algebra: Arc<Algebra>,
    form: ActionForm,
}

impl Action {
    pub fn dual(algebra: &Arc<Algebra>, map: DualMap) -> Result<Action> {
        let f = algebra
            .as_finite()
            .ok_or_else(|| Error::UnsupportedBackend("dual maps need a finite algebra".into()))?;
        if map.images().len() != f.len() {
            return Err(Error::InvalidValue(format!(
                "dual map covers {} atoms, algebra has {}",
                map.images().len(),
                f.len()
            )));
        }
        Ok(Action {
            algebra: algebra.clone(),
            form: ActionForm::Dual(map),
        })
    }

    /// Dual map given by atom labels, `{"w": "v"}` meaning `f(w) = v`.
    pub fn dual_from_labels(algebra: &Arc<Algebra>, map: &BTreeMap<String, String>) -> Result<Action> {
        let f = algebra
            .as_finite()
            .ok_or_else(|| Error::UnsupportedBackend("dual maps need a finite algebra".into()))?;
        let mut image = vec![None; f.len()];
        for (x, y) in map {
            image[f.atom_index(x)?] = Some(f.atom_index(y)?);
        }
        Action::dual(algebra, DualMap::new(image)?)
    }

    /// The action with `θ(A) = ∅` for all `A`.
    pub fn zero(algebra: &Arc<Algebra>) -> Result<Action> {
        match algebra.as_finite() {
            Some(f) => Action::dual(algebra, DualMap::empty(f.len())),
            None => {
                let empty = algebra.empty_value();
                Ok(Action::callable(
                    algebra,
                    CallableAction::new("zero action", move |_| Ok(empty.clone())),
                ))
            }
        }
    }

    pub fn callable(algebra: &Arc<Algebra>, action: CallableAction) -> Action {
        Action {
            algebra: algebra.clone(),
            form: ActionForm::Callable(action),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn form(&self) -> &ActionForm {
        &self.form
    }

    pub fn as_dual(&self) -> Option<&DualMap> {
        match &self.form {
            ActionForm::Dual(d) => Some(d),
            _ => None,
        }
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        if !same_algebra(&self.algebra, a.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let value = self.apply_value(a.value())?;
        Ok(Element::new_unchecked(self.algebra.clone(), value))
    }

    pub(crate) fn apply_value(&self, v: &Value) -> Result<Value> {
        match (&self.form, v) {
            (ActionForm::Dual(d), Value::Atoms(s)) => Ok(Value::Atoms(d.apply(*s))),
            (ActionForm::Dual(_), _) => Err(Error::AlgebraMismatch),
            (ActionForm::Callable(c), v) => {
                let out = (c.f)(v).map_err(|e| match e {
                    Error::ActionEvaluationError(m) => Error::ActionEvaluationError(m),
                    other => Error::ActionEvaluationError(other.to_string()),
                })?;
                self.algebra.check_value(&out).map_err(|e| {
                    Error::ActionEvaluationError(format!("{}: {e}", c.description))
                })?;
                Ok(out)
            }
        }
    }
}

/// Outcome of [`validate_action`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub passed: bool,
    pub pairs_checked: usize,
    /// Law name and the offending pair, rendered.
    pub witness: Option<(String, String, String)>,
}

/// Checks `θ(∅) = ∅` and preservation of `∩`, `∪`, `∖` on `samples` random
/// pairs drawn with the given seed.
pub fn validate_action(theta: &Action, samples: usize, seed: u64) -> Result<ActionReport> {
    let alg = theta.algebra().clone();
    let empty = Element::empty(&alg);
    if !theta.apply(&empty)?.is_empty() {
        return Ok(ActionReport {
            passed: false,
            pairs_checked: 0,
            witness: Some(("θ(∅) = ∅".into(), empty.to_string(), empty.to_string())),
        });
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..samples {
        let a = random_element(&alg, &mut rng);
        let b = random_element(&alg, &mut rng);
        let ta = theta.apply(&a)?;
        let tb = theta.apply(&b)?;
        let laws: [(&str, Element, Element); 3] = [
            ("θ(A∩B) = θ(A)∩θ(B)", theta.apply(&a.intersect(&b)?)?, ta.intersect(&tb)?),
            ("θ(A∪B) = θ(A)∪θ(B)", theta.apply(&a.union(&b)?)?, ta.union(&tb)?),
            ("θ(A∖B) = θ(A)∖θ(B)", theta.apply(&a.difference(&b)?)?, ta.difference(&tb)?),
        ];
        for (law, lhs, rhs) in laws {
            if lhs != rhs {
                return Ok(ActionReport {
                    passed: false,
                    pairs_checked: i + 1,
                    witness: Some((law.to_string(), a.to_string(), b.to_string())),
                });
            }
        }
    }
    Ok(ActionReport {
        passed: true,
        pairs_checked: samples,
        witness: None,
    })
}
