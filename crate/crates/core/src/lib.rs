//! Relative generalized Boolean dynamical systems `(B, L, θ, I_α; J)` over
//! finite and a few infinite Boolean algebras: regular sets, hereditary
//! saturated ideals and admissible pairs, the enlarged system absorbing `J`,
//! and exact computation in the algebra spanned by `p_A` and `s_{α,B}`.
//!
//! The guide under `book/` walks through each module; its snippets run as
//! doctests.

pub mod boolean;
pub mod constructions;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod lattice;
pub mod repr;
pub mod syntax;
pub mod words;

pub use error::{Error, Result};

// The guide's snippets are compiled and run by `cargo test --doc`.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
