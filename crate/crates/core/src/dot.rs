//! Graphviz export of a pair lattice as its Hasse diagram.

use std::fmt::Write;

use crate::dynamics::RelativeGBDS;
use crate::lattice::PairLattice;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per admissible pair, one edge per covering relation, drawn
/// bottom to top.
pub fn lattice_dot(sys: &RelativeGBDS, lat: &PairLattice) -> String {
    let mut out = String::from("digraph pairs {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, p) in lat.pairs().iter().enumerate() {
        let label = format!("H = {}\\nS = {}", escape(&sys.show_atoms(p.h)), escape(&sys.show_atoms(p.s)));
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for (i, j) in lat.covers() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::finite_system;
    use crate::lattice::{admissible_pairs, DEFAULT_MAX_ATOMS};

    #[test]
    fn one_edge_graph() {
        let sys = finite_system(&["v", "w"], &["e"], vec![vec![None, Some(0)]], None, None).unwrap();
        let lat = admissible_pairs(&sys, DEFAULT_MAX_ATOMS).unwrap();
        let dot = lattice_dot(&sys, &lat);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("n0 [label=\"H = {}\\nS = {v}\"]"));
    }
}
