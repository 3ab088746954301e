//! Boolean algebra backends, their elements, ideals and actions.
//!
//! Finite algebras are power sets of explicit atoms stored as bit masks, so an
//! element is an [`AtomSet`] and every ideal is principal. The countable
//! backends (finite subsets of ℕ, finite-or-cofinite subsets of ℕ, and
//! products) exist to express systems such as the one built by
//! [`crate::constructions::remark_example`].

mod action;
mod algebra;
mod atoms;
mod ideal;
pub mod sample;

pub use action::{validate_action, Action, ActionForm, ActionReport, CallableAction, DualMap};
pub use algebra::{same_algebra, Algebra, Element, FinCofin, FiniteAlgebra, Value};
pub use atoms::{AtomSet, Atoms, Subsets, MAX_ATOMS};
pub use ideal::{check_ideal_laws, Ideal, IdealForm, MembershipRule};
