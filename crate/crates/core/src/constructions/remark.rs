//! A system over finite subsets × finite/cofinite subsets of ℕ in which the
//! range ideal `R_a` is strictly smaller than `I_{r(a)}`:
//!
//! ```text
//! θ_a((A,B)) = (∅,A)
//! R_a        = {(∅,B′) : B′ finite}
//! I_{r(a)}   = {(∅,B′) : B′ ⊆ ℕ finite or cofinite}
//! ```
//!
//! `(∅,ℕ)` lies in the second ideal and not the first.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::boolean::sample::random_element;
use crate::boolean::{Action, Algebra, CallableAction, Element, FinCofin, Ideal, MembershipRule, Value};
use crate::dynamics::{BooleanDynamicalSystem, GeneralizedBDS, RelativeGBDS};
use crate::error::{Error, Result};
use crate::repr::{validate_on_elements, CMatrix, ElementRep, RelationReport, DEFAULT_TOLERANCE};

pub const REMARK_BUILTIN: &str = "remark";
pub const REMARK_LABEL: &str = "a";

/// Positions `1..=k` of ℕ are kept by the truncated representation.
pub const DEFAULT_TRUNCATION: usize = 8;

fn split(v: &Value) -> Result<(&BTreeSet<u64>, &FinCofin)> {
    match v {
        Value::Pair(l, r) => match (l.as_ref(), r.as_ref()) {
            (Value::Finite(a), Value::FinCofin(b)) => Ok((a, b)),
            _ => Err(Error::AlgebraMismatch),
        },
        _ => Err(Error::AlgebraMismatch),
    }
}

fn pair(a: BTreeSet<u64>, b: FinCofin) -> Value {
    Value::Pair(Box::new(Value::Finite(a)), Box::new(Value::FinCofin(b)))
}

/// The backend `FinSubsets × FinCofin`.
pub fn remark_algebra() -> Arc<Algebra> {
    Algebra::product(Algebra::fin_subsets(), Algebra::fin_cofin())
}

fn is_remark_algebra(alg: &Algebra) -> bool {
    matches!(alg, Algebra::Product(l, r)
        if matches!(l.as_ref(), Algebra::FinSubsets) && matches!(r.as_ref(), Algebra::FinCofin))
}

/// `(A′,B′) ∈ R_a ⇔ A′ = ∅` and `B′` finite.
pub fn range_rule() -> MembershipRule {
    MembershipRule::new("(∅, B) with B finite", |v| {
        matches!(split(v), Ok((a, b)) if a.is_empty() && !b.cofinite)
    })
}

/// `(A,B) ↦ (∅,A)`.
pub fn remark_action(alg: &Arc<Algebra>) -> Result<Action> {
    if !is_remark_algebra(alg) {
        return Err(Error::UnsupportedBackend(format!(
            "builtin `{REMARK_BUILTIN}` acts on finite × finite/cofinite subsets"
        )));
    }
    let f = CallableAction::new("(A, B) ↦ (∅, A)", |v| {
        let (a, _) = split(v)?;
        Ok(pair(BTreeSet::new(), FinCofin::finite(a.iter().copied())))
    })
    .with_range_rule(range_rule())
    .with_builtin(REMARK_BUILTIN);
    Ok(Action::callable(alg, f))
}

/// `B_reg = {(A,∅) : A finite}`: `Δ_{(A,B)} = {a}` exactly when `A ≠ ∅`, and
/// any element with `B ≠ ∅` has the singular subelement `(∅,B)`.
pub fn regular_closed_form(alg: &Arc<Algebra>) -> Ideal {
    Ideal::predicate(
        alg,
        MembershipRule::new("(A, ∅) with A finite", |v| {
            matches!(split(v), Ok((_, b)) if !b.cofinite && b.support.is_empty())
        }),
    )
}

/// The single-label system behind a builtin action name.
pub fn builtin_bds(alg: &Arc<Algebra>, label: &str, builtin: &str) -> Result<BooleanDynamicalSystem> {
    match builtin {
        REMARK_BUILTIN => {
            let action = remark_action(alg)?;
            Ok(BooleanDynamicalSystem::new(alg.clone(), vec![(label.to_string(), action)])?
                .with_regular_closed_form(regular_closed_form(alg)))
        }
        other => Err(Error::UnsupportedBackend(format!("unknown builtin action `{other}`"))),
    }
}

/// `(∅,ℕ)`.
pub fn witness(alg: &Arc<Algebra>) -> Result<Element> {
    Element::new(alg.clone(), pair(BTreeSet::new(), FinCofin::cofinite([])))
}

/// Both generalized structures on the same dynamics, each relative to
/// `B_reg`, and the element separating their ideals.
#[derive(Clone, Debug)]
pub struct RemarkExample {
    /// `I_a = R_a`.
    pub range_system: RelativeGBDS,
    /// `I_a = {B : B ⊆ (∅,ℕ)}`.
    pub principal_system: RelativeGBDS,
    pub witness: Element,
}

pub fn remark_example() -> Result<RemarkExample> {
    let alg = remark_algebra();
    let bds = builtin_bds(&alg, REMARK_LABEL, REMARK_BUILTIN)?;
    let witness = witness(&alg)?;
    let range = GeneralizedBDS::with_range_ideals(bds.clone())?;
    let principal = GeneralizedBDS::new(bds, vec![Ideal::principal(witness.clone())])?;
    Ok(RemarkExample {
        range_system: RelativeGBDS::with_regular(range)?,
        principal_system: RelativeGBDS::with_regular(principal)?,
        witness,
    })
}

impl RemarkExample {
    /// `(∈ I_{r(a)}, ∈ R_a)` for the witness.
    pub fn witness_membership(&self) -> Result<(bool, bool)> {
        Ok((
            self.principal_system.generalized().ideal(0).contains(&self.witness)?,
            self.range_system.generalized().ideal(0).contains(&self.witness)?,
        ))
    }
}

/// Two copies of `ℓ²({1..k, ∞})`: `P_{(A,B)} = diag(1_A, 1_B)` with the `∞`
/// slot recording whether `B` is cofinite, and `S_{a,(∅,C)}` carrying the
/// second block onto the first along `C`.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedRep {
    pub k: usize,
}

impl TruncatedRep {
    pub fn new(k: usize) -> Self {
        TruncatedRep { k }
    }

    fn block(&self) -> usize {
        self.k + 1
    }

    /// Slots of `1..=k` in a block, plus `∞` when asked.
    fn slots(&self, support: &BTreeSet<u64>, complement: bool, infinity: bool) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=self.k as u64)
            .filter(|i| support.contains(i) != complement)
            .map(|i| i as usize - 1)
            .collect();
        if infinity {
            out.push(self.k);
        }
        out
    }
}

impl ElementRep for TruncatedRep {
    fn dim(&self) -> usize {
        2 * self.block()
    }

    fn p(&self, a: &Element) -> Result<CMatrix> {
        let (fin, fc) = split(a.value())?;
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for i in self.slots(fin, false, false) {
            m[(i, i)] = 1.0.into();
        }
        for i in self.slots(&fc.support, fc.cofinite, fc.cofinite) {
            let j = self.block() + i;
            m[(j, j)] = 1.0.into();
        }
        Ok(m)
    }

    fn s(&self, label: usize, b: &Element) -> Result<CMatrix> {
        let (fin, fc) = split(b.value())?;
        if label != 0 || !fin.is_empty() {
            return Err(Error::InvalidGenerator(format!("{b} is not of the form (∅, C)")));
        }
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for i in self.slots(&fc.support, fc.cofinite, fc.cofinite) {
            m[(i, self.block() + i)] = 1.0.into();
        }
        Ok(m)
    }
}

/// Fixed elements exercising every case (empty, finite, cofinite, the
/// witness) plus `samples` seeded random ones.
pub fn remark_family(samples: usize, seed: u64) -> Result<Vec<Element>> {
    let alg = remark_algebra();
    let fixed = [
        pair(BTreeSet::new(), FinCofin::finite([])),
        pair(BTreeSet::new(), FinCofin::cofinite([])),
        pair([1, 2].into(), FinCofin::cofinite([3])),
        pair([1, 2, 9].into(), FinCofin::finite([])),
        pair(BTreeSet::new(), FinCofin::finite([2, 5, 8])),
        pair([4].into(), FinCofin::finite([4, 10])),
    ];
    let mut out = fixed
        .into_iter()
        .map(|v| Element::new(alg.clone(), v))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = StdRng::seed_from_u64(seed);
    out.extend((0..samples).map(|_| random_element(&alg, &mut rng)));
    Ok(out)
}

/// Relations of the truncated family on [`remark_family`].
pub fn validate_truncated(sys: &RelativeGBDS, k: usize, samples: usize, seed: u64) -> Result<RelationReport> {
    let family = remark_family(samples, seed)?;
    validate_on_elements(sys, &TruncatedRep::new(k), &family, DEFAULT_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_drops_the_second_coordinate() {
        let alg = remark_algebra();
        let theta = remark_action(&alg).unwrap();
        let x = Element::new(alg.clone(), pair([1, 2].into(), FinCofin::cofinite([3]))).unwrap();
        let y = Element::new(alg.clone(), pair(BTreeSet::new(), FinCofin::finite([1, 2]))).unwrap();
        assert_eq!(theta.apply(&x).unwrap(), y);
    }

    #[test]
    fn witness_separates_the_ideals() {
        let ex = remark_example().unwrap();
        assert_eq!(ex.witness_membership().unwrap(), (true, false));
        assert_eq!(ex.witness.to_string(), "(∅, ℕ)");
    }

    #[test]
    fn truncated_family_satisfies_the_relations() {
        let ex = remark_example().unwrap();
        for sys in [&ex.range_system, &ex.principal_system] {
            let r = validate_truncated(sys, DEFAULT_TRUNCATION, 24, 3).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.checks > 100);
        }
    }

    /// `S` without the `∞` slot: fine while every `C` is finite.
    struct NoInfinity(TruncatedRep);

    impl ElementRep for NoInfinity {
        fn dim(&self) -> usize {
            self.0.dim()
        }
        fn p(&self, a: &Element) -> Result<CMatrix> {
            self.0.p(a)
        }
        fn s(&self, label: usize, b: &Element) -> Result<CMatrix> {
            let mut m = self.0.s(label, b)?;
            let k = self.0.k;
            m[(k, 2 * k + 1)] = 0.0.into();
            Ok(m)
        }
    }

    #[test]
    fn infinity_slot_matters_only_for_the_larger_ideal() {
        let ex = remark_example().unwrap();
        let family = remark_family(24, 3).unwrap();
        let rep = NoInfinity(TruncatedRep::new(DEFAULT_TRUNCATION));
        let on_range = validate_on_elements(&ex.range_system, &rep, &family, DEFAULT_TOLERANCE).unwrap();
        assert!(on_range.passed(), "{on_range}");
        let on_principal = validate_on_elements(&ex.principal_system, &rep, &family, DEFAULT_TOLERANCE).unwrap();
        assert!(on_principal.failures.iter().any(|f| f.relation == "(iii)"));
    }
}
