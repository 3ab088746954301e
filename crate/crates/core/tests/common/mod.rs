//! Random finite systems and brute-force oracles written straight from the
//! definitions, independent of the library's atom-level shortcuts.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gbds::boolean::AtomSet;
use gbds::dynamics::{finite_system, RelativeGBDS};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The raw data a test system is built from.
#[derive(Clone, Debug)]
pub struct Raw {
    pub n: usize,
    /// `maps[l][x] = f_l(x)`, so `θ_l(A) = {x : f_l(x) ∈ A}`.
    pub maps: Vec<Vec<Option<usize>>>,
    pub ideals: Vec<AtomSet>,
    pub relative: AtomSet,
}

pub fn atom_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn label_names(k: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..k].iter().map(|s| s.to_string()).collect()
}

impl Raw {
    pub fn theta(&self, l: usize, a: AtomSet) -> AtomSet {
        (0..self.n)
            .filter(|&x| matches!(self.maps[l][x], Some(y) if a.contains(y)))
            .collect()
    }

    pub fn top(&self) -> AtomSet {
        AtomSet::full(self.n)
    }

    /// Largest `A` with every nonempty `B ⊆ A` moved by some label.
    pub fn regular(&self) -> AtomSet {
        let mut gen = AtomSet::EMPTY;
        for a in self.top().subsets() {
            let ok = a
                .subsets()
                .filter(|b| !b.is_empty())
                .all(|b| (0..self.maps.len()).any(|l| !self.theta(l, b).is_empty()));
            if ok {
                gen = gen | a;
            }
        }
        gen
    }

    pub fn build(&self) -> RelativeGBDS {
        finite_system(
            &atom_names(self.n),
            &label_names(self.maps.len()),
            self.maps.clone(),
            Some(self.ideals.clone()),
            Some(self.relative),
        )
        .expect("random systems are valid by construction")
    }

    pub fn is_hereditary(&self, h: AtomSet) -> bool {
        (0..self.maps.len()).all(|l| self.theta(l, h).is_subset(h))
    }

    pub fn is_saturated(&self, h: AtomSet) -> bool {
        self.relative.subsets().all(|a| {
            let lands = (0..self.maps.len()).all(|l| self.theta(l, a).is_subset(h));
            !lands || a.is_subset(h)
        })
    }

    pub fn hsat(&self) -> BTreeSet<u64> {
        self.top()
            .subsets()
            .filter(|&h| self.is_hereditary(h) && self.is_saturated(h))
            .map(|h| h.0)
            .collect()
    }

    /// Sets whose class modulo `H` is regular in the quotient.
    pub fn b_h(&self, h: AtomSet) -> AtomSet {
        let mut gen = AtomSet::EMPTY;
        for a in self.top().subsets() {
            let ok = (a - h)
                .subsets()
                .filter(|b| !b.is_empty())
                .all(|b| (0..self.maps.len()).any(|l| !(self.theta(l, b) - h).is_empty()));
            if ok {
                gen = gen | a;
            }
        }
        gen
    }

    /// Every admissible `(H, S)` as raw bitmasks.
    pub fn pairs(&self) -> BTreeSet<(u64, u64)> {
        let mut out = BTreeSet::new();
        for h in self.hsat() {
            let h = AtomSet(h);
            let bh = self.b_h(h);
            for s in self.top().subsets() {
                if (h | self.relative).is_subset(s) && s.is_subset(bh) {
                    out.insert((h.0, s.0));
                }
            }
        }
        out
    }
}

/// A random system: each atom has an image under each label with
/// probability 0.6, `I_α` adds random atoms to the range, `J` is a random
/// part of `B_reg`.
pub fn random_raw(rng: &mut StdRng, max_atoms: usize, max_labels: usize) -> Raw {
    let n = rng.random_range(1..=max_atoms);
    let k = rng.random_range(1..=max_labels);
    let maps: Vec<Vec<Option<usize>>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| rng.random_bool(0.6).then(|| rng.random_range(0..n)))
                .collect()
        })
        .collect();
    let mut raw = Raw {
        n,
        maps,
        ideals: Vec::new(),
        relative: AtomSet::EMPTY,
    };
    let top = raw.top();
    raw.ideals = (0..k)
        .map(|l| raw.theta(l, top) | AtomSet(rng.random::<u64>() & top.0 & rng.random::<u64>()))
        .collect();
    raw.relative = AtomSet(raw.regular().0 & rng.random::<u64>());
    raw
}

/// Like [`random_raw`] but with `f_l(x) < x`, so long words act as zero and
/// the path representation exists.
pub fn random_acyclic_raw(rng: &mut StdRng, max_atoms: usize, max_labels: usize) -> Raw {
    let mut raw = random_raw(rng, max_atoms, max_labels);
    for m in &mut raw.maps {
        for (x, y) in m.iter_mut().enumerate() {
            *y = if x == 0 { None } else { y.map(|_| rng.random_range(0..x)) };
        }
    }
    let top = raw.top();
    raw.ideals = (0..raw.maps.len())
        .map(|l| raw.theta(l, top) | AtomSet(rng.random::<u64>() & top.0 & rng.random::<u64>()))
        .collect();
    raw.relative = AtomSet(raw.regular().0 & rng.random::<u64>());
    raw
}

pub fn corpus(seed: u64, count: usize, max_atoms: usize, max_labels: usize) -> Vec<Raw> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_raw(&mut rng, max_atoms, max_labels)).collect()
}

/// The one-edge graph `v → w`: `f_e(w) = v`.
pub fn one_edge(relative: AtomSet) -> Raw {
    Raw {
        n: 2,
        maps: vec![vec![None, Some(0)]],
        ideals: vec![AtomSet::singleton(1)],
        relative,
    }
}
