//! Hereditary saturated ideals, quotients, and the lattice of admissible
//! pairs `(H, S)`.
//!
//! Everything here works on a finite backend, where an ideal is an atom set.
//! Saturation is checked atom by atom: if `A ∈ J` has all its images inside
//! `H`, then so does every atom of `A` (images of atoms are contained in
//! images of `A`, and `Δ` of an atom is a subset of `Δ_A`), and conversely
//! `A ∈ H` once all its atoms are, since `H` is closed under unions.

use std::collections::{BTreeSet, VecDeque};

use crate::boolean::{AtomSet, Ideal};
use crate::dynamics::{FiniteView, RelativeGBDS};
use crate::error::{Error, Result};

/// Exhaustive `2^n` enumeration is only attempted up to this many atoms.
pub const BRUTE_FORCE_ATOMS: usize = 16;

/// Default bound on the number of atoms for enumeration.
pub const DEFAULT_MAX_ATOMS: usize = 16;

/// First `(label, atom)` with `θ_label({atom}) ⊄ g`, for an atom of `g`.
pub fn hereditary_witness(fv: &FiniteView, g: AtomSet) -> Option<(usize, usize)> {
    for l in 0..fv.num_labels() {
        let img = fv.theta(l, g);
        if !img.is_subset(g) {
            let bad = img - g;
            let atom = g.iter().find(|&y| !fv.theta(l, AtomSet::singleton(y)).intersection(bad).is_empty());
            return atom.map(|a| (l, a));
        }
    }
    None
}

pub fn is_hereditary(fv: &FiniteView, g: AtomSet) -> bool {
    (0..fv.num_labels()).all(|l| fv.theta(l, g).is_subset(g))
}

/// Atoms of `gen(J)` outside `g` whose every image lies in `g`.
pub fn forced_atoms(fv: &FiniteView, g: AtomSet) -> AtomSet {
    (fv.relative() - g)
        .iter()
        .filter(|&a| {
            let a = AtomSet::singleton(a);
            (0..fv.num_labels()).all(|l| fv.theta(l, a).is_subset(g))
        })
        .collect()
}

pub fn is_j_saturated(fv: &FiniteView, g: AtomSet) -> bool {
    forced_atoms(fv, g).is_empty()
}

pub fn is_hereditary_saturated(fv: &FiniteView, g: AtomSet) -> bool {
    is_hereditary(fv, g) && is_j_saturated(fv, g)
}

/// Least hereditary `J`-saturated ideal containing `g`: alternately close
/// under the actions and add forced atoms until nothing changes.
pub fn saturation_closure(fv: &FiniteView, g: AtomSet) -> AtomSet {
    let mut cur = g;
    loop {
        loop {
            let next = (0..fv.num_labels()).fold(cur, |acc, l| acc | fv.theta(l, cur));
            if next == cur {
                break;
            }
            cur = next;
        }
        let forced = forced_atoms(fv, cur);
        if forced.is_empty() {
            return cur;
        }
        cur |= forced;
    }
}

/// Sort key: size first, then the sorted atom list.
pub fn set_key(s: AtomSet) -> (usize, Vec<usize>) {
    (s.len(), s.to_vec())
}

fn sort_sets(v: &mut [AtomSet]) {
    v.sort_by_cached_key(|&s| set_key(s));
}

/// All hereditary saturated ideals by filtering every subset of atoms.
pub fn enumerate_hsat_brute(fv: &FiniteView) -> Result<Vec<AtomSet>> {
    if fv.n() > BRUTE_FORCE_ATOMS {
        return Err(Error::SizeLimit {
            atoms: fv.n(),
            limit: BRUTE_FORCE_ATOMS,
        });
    }
    let mut out: Vec<AtomSet> = fv
        .top()
        .subsets()
        .filter(|&g| is_hereditary_saturated(fv, g))
        .collect();
    sort_sets(&mut out);
    Ok(out)
}

/// All hereditary saturated ideals by closing upward from the least one.
///
/// Every such `K` is reached: starting from `closure(∅) ⊆ K`, adding any atom
/// of `K` and closing stays inside `K` and strictly grows.
pub fn enumerate_hsat_closure(fv: &FiniteView) -> Vec<AtomSet> {
    let start = saturation_closure(fv, AtomSet::EMPTY);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        for x in (fv.top() - h).iter() {
            let next = saturation_closure(fv, h.with(x));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<AtomSet> = seen.into_iter().collect();
    sort_sets(&mut out);
    out
}

/// Hereditary saturated ideals, sorted by generator. Both enumeration
/// strategies run when the brute force is affordable and must agree.
pub fn enumerate_hsat(fv: &FiniteView, max_atoms: usize) -> Result<Vec<AtomSet>> {
    if fv.n() > max_atoms {
        return Err(Error::SizeLimit {
            atoms: fv.n(),
            limit: max_atoms,
        });
    }
    let closure = enumerate_hsat_closure(fv);
    if fv.n() <= BRUTE_FORCE_ATOMS {
        let brute = enumerate_hsat_brute(fv)?;
        if brute != closure {
            return Err(Error::InternalInvariantViolation(format!(
                "hereditary saturated enumeration disagrees: brute {brute:?}, closure {closure:?}"
            )));
        }
    }
    Ok(closure)
}

/// Generator of `B_H`: `H` plus the atoms whose class is regular in `B/H`.
pub fn compute_bh(fv: &FiniteView, h: AtomSet) -> AtomSet {
    let extra: AtomSet = (fv.top() - h)
        .iter()
        .filter(|&x| {
            let x = AtomSet::singleton(x);
            (0..fv.num_labels()).any(|l| !fv.theta(l, x).is_subset(h))
        })
        .collect();
    h | extra
}

fn require_hsat(sys: &RelativeGBDS, h: AtomSet) -> Result<()> {
    let fv = sys.finite()?;
    if !h.is_subset(fv.top()) {
        return Err(Error::InvalidIdeal(format!("{h:?} has atoms outside the algebra")));
    }
    if let Some((l, a)) = hereditary_witness(fv, h) {
        return Err(Error::InvalidIdeal(format!(
            "{} is not hereditary: the image of {} under `{}` leaves it",
            sys.show_atoms(h),
            sys.show_atoms(AtomSet::singleton(a)),
            sys.labels()[l]
        )));
    }
    if let Some(a) = forced_atoms(fv, h).iter().next() {
        return Err(Error::InvalidIdeal(format!(
            "{} is not saturated: it must contain {}",
            sys.show_atoms(h),
            sys.show_atoms(AtomSet::singleton(a))
        )));
    }
    Ok(())
}

/// The quotient system over `B/H`, with its atoms listed as indices into the
/// original atoms.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub system: RelativeGBDS,
    /// `atoms[i]` is the original atom behind quotient atom `i`.
    pub atoms: Vec<usize>,
}

impl Quotient {
    /// Quotient class of a set of original atoms.
    pub fn project(&self, a: AtomSet) -> AtomSet {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, &x)| a.contains(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Original atoms behind a set of quotient atoms.
    pub fn lift(&self, a: AtomSet) -> AtomSet {
        a.iter().map(|i| self.atoms[i]).collect()
    }
}

/// The system `(B/H, L, θ, [I_α]; [S])`, or `[J]` when no `S` is given.
///
/// Because `H` is hereditary, `θ_α(D) ∖ H` depends only on the class of `D`,
/// so on atoms outside `H` the quotient dual map is the original one with
/// targets in `H` dropped.
pub fn quotient_system(sys: &RelativeGBDS, h: AtomSet, s: Option<AtomSet>) -> Result<Quotient> {
    require_hsat(sys, h)?;
    let fv = sys.finite()?;
    let atom_labels = sys.atom_labels()?;
    let atoms: Vec<usize> = (fv.top() - h).to_vec();
    let mut position = vec![None; fv.n()];
    for (i, &x) in atoms.iter().enumerate() {
        position[x] = Some(i);
    }
    let names: Vec<&str> = atoms.iter().map(|&x| atom_labels[x].as_str()).collect();
    let maps = (0..fv.num_labels())
        .map(|l| {
            atoms
                .iter()
                .map(|&x| fv.dual(l).image(x).and_then(|y| position[y]))
                .collect()
        })
        .collect();
    let q = Quotient {
        system: sys.clone(),
        atoms,
    };
    let ideals = (0..fv.num_labels()).map(|l| q.project(fv.ideal(l))).collect();
    let relative = q.project(s.unwrap_or(fv.relative()));
    let system = crate::dynamics::finite_system(&names, sys.labels(), maps, Some(ideals), Some(relative))?;
    Ok(Quotient { system, ..q })
}

/// An admissible pair: `H` hereditary saturated and `S` with
/// `H ∪ J ⊆ S ⊆ B_H`, both as atom-set generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub h: AtomSet,
    pub s: AtomSet,
}

impl Pair {
    pub fn leq(&self, other: &Pair) -> bool {
        self.h.is_subset(other.h) && self.s.is_subset(other.s)
    }

    fn key(&self) -> ((usize, Vec<usize>), Vec<usize>) {
        (set_key(self.h), self.s.to_vec())
    }
}

/// Checks the admissibility conditions for `(H, S)`.
pub fn is_admissible(fv: &FiniteView, pair: &Pair) -> bool {
    is_hereditary_saturated(fv, pair.h)
        && (pair.h | fv.relative()).is_subset(pair.s)
        && pair.s.is_subset(compute_bh(fv, pair.h))
}

/// A fixed-width bit row.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_subset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            AtomSet(bits).iter().map(move |b| w * 64 + b)
        })
    }
}

/// The admissible pairs of a system with their componentwise order.
#[derive(Clone, Debug)]
pub struct PairLattice {
    pairs: Vec<Pair>,
    // down[i] = {k : pairs[k] ≤ pairs[i]}
    down: Vec<Bits>,
    up: Vec<Bits>,
}

impl PairLattice {
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, p: &Pair) -> Option<usize> {
        self.pairs.iter().position(|q| q == p)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].get(i)
    }

    /// Greatest lower bound found by search over the common lower bounds:
    /// the candidate whose down-set contains all of them.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        Self::extremum(&self.down[i].and(&self.down[j]), &self.down)
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        Self::extremum(&self.up[i].and(&self.up[j]), &self.up)
    }

    fn extremum(common: &Bits, cones: &[Bits]) -> Option<usize> {
        let best = common.iter().max_by_key(|&k| cones[k].count())?;
        common.is_subset(&cones[best]).then_some(best)
    }

    /// Every two pairs have a meet and a join.
    pub fn is_lattice(&self) -> bool {
        (0..self.len()).all(|i| (i..self.len()).all(|j| self.meet(i, j).is_some() && self.join(i, j).is_some()))
    }

    /// All strictly comparable `(i, j)` with `pairs[i] < pairs[j]`.
    pub fn order(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in self.down[j].iter() {
                if i != j {
                    out.push((i, j));
                }
            }
        }
        out.sort();
        out
    }

    /// Covering relations of the order (its transitive reduction).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order()
            .into_iter()
            .filter(|&(i, j)| {
                !self.down[j]
                    .iter()
                    .any(|k| k != i && k != j && self.down[k].get(i))
            })
            .collect()
    }
}

/// Every admissible pair, sorted by `(|H|, H, S)` with sets compared as
/// sorted atom lists.
pub fn admissible_pairs(sys: &RelativeGBDS, max_atoms: usize) -> Result<PairLattice> {
    let fv = sys.finite()?;
    let mut pairs = Vec::new();
    for h in enumerate_hsat(fv, max_atoms)? {
        let base = h | fv.relative();
        let bh = compute_bh(fv, h);
        if !base.is_subset(bh) {
            return Err(Error::InternalInvariantViolation(format!(
                "H ∪ J ⊄ B_H for H = {}",
                sys.show_atoms(h)
            )));
        }
        for extra in (bh - base).subsets() {
            pairs.push(Pair { h, s: base | extra });
        }
    }
    pairs.sort_by_cached_key(Pair::key);
    Ok(lattice_from_pairs(pairs))
}

fn lattice_from_pairs(pairs: Vec<Pair>) -> PairLattice {
    let n = pairs.len();
    let mut down = vec![Bits::new(n); n];
    let mut up = vec![Bits::new(n); n];
    for i in 0..n {
        for j in 0..n {
            if pairs[i].leq(&pairs[j]) {
                down[j].set(i);
                up[i].set(j);
            }
        }
    }
    PairLattice { pairs, down, up }
}

/// Comparison between the pair lattice of a quotient and the interval above
/// a pair in the original lattice. Exploratory: nothing here is asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalComparison {
    pub quotient_pairs: usize,
    pub interval_pairs: usize,
    /// `(H̄, S̄) ↦ (H ∪ lift H̄, H ∪ lift S̄)` lands in the interval.
    pub lands_in_interval: bool,
    /// The map is a bijection onto the interval preserving and reflecting order.
    pub order_isomorphic: bool,
}

pub fn compare_quotient_interval(
    sys: &RelativeGBDS,
    pair: &Pair,
    max_atoms: usize,
) -> Result<IntervalComparison> {
    let full = admissible_pairs(sys, max_atoms)?;
    let interval: Vec<Pair> = full.pairs().iter().copied().filter(|p| pair.leq(p)).collect();
    let q = quotient_system(sys, pair.h, Some(pair.s))?;
    let ql = admissible_pairs(&q.system, max_atoms)?;
    let image: Vec<Pair> = ql
        .pairs()
        .iter()
        .map(|p| Pair {
            h: pair.h | q.lift(p.h),
            s: pair.h | q.lift(p.s),
        })
        .collect();
    let lands = image.iter().all(|p| interval.contains(p));
    let distinct: BTreeSet<(u64, u64)> = image.iter().map(|p| (p.h.0, p.s.0)).collect();
    let bijective = lands && distinct.len() == image.len() && image.len() == interval.len();
    let order_ok = bijective
        && (0..ql.len()).all(|i| (0..ql.len()).all(|j| ql.leq(i, j) == image[i].leq(&image[j])));
    Ok(IntervalComparison {
        quotient_pairs: ql.len(),
        interval_pairs: interval.len(),
        lands_in_interval: lands,
        order_isomorphic: order_ok,
    })
}

/// `H` as an ideal of the system's algebra.
pub fn as_ideal(sys: &RelativeGBDS, g: AtomSet) -> Result<Ideal> {
    Ideal::principal_atoms(sys.algebra(), g)
}
