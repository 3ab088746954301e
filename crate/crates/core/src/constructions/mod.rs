//! Building systems: the enlargement that absorbs a relative ideal, import
//! from labelled graphs, and a system on an infinite backend whose two
//! natural choices of `I_α` differ.

mod labelled;
pub mod remark;
mod tilde;

pub use labelled::{import_labelled_graph, Edge, LabelledGraph};
pub use remark::{remark_example, RemarkExample, TruncatedRep};
pub use tilde::{tilde, GeneratorImage, IsoGenerators, RoundTripFailure, TildeResult};
