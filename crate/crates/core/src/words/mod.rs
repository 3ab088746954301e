//! The spanning *-algebra of a finite relative system as a symbolic algebra.
//!
//! Elements are rational combinations of normal terms `(α, a, β)` standing
//! for `s_{α,a} s*_{β,a}`, where `a` is an atom in `I_α ∩ I_β`. Every element
//! of the dense subalgebra has this form because
//! `s_{α,A} s*_{β,B} = s_{α,A∩B} s*_{β,A∩B}` and sets split into atoms.
//!
//! The gauge action is kept as the grading by `|α| − |β|`: a term has degree
//! `|α| − |β|`, products add degrees, and the summation relation only relates
//! terms of equal degree.

mod calculus;
pub mod linalg;
mod membership;
pub mod sample;
mod term;

pub use calculus::{Calculus, Equality, DEFAULT_SLACK};
pub use membership::{default_depth, Certificate, FamilyVector, Membership};
pub use term::{AlgElement, NormalTerm};
