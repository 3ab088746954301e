use std::fmt;

/// Largest number of atoms a finite algebra may carry.
pub const MAX_ATOMS: usize = 64;

/// A set of atoms of a finite Boolean algebra, stored as a bit mask.
///
/// Bit `i` is set iff atom `i` belongs to the set. Every element of a finite
/// power-set algebra is one of these, so the lattice operations are single
/// machine instructions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(atom: usize) -> Self {
        debug_assert!(atom < MAX_ATOMS);
        AtomSet(1u64 << atom)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ATOMS);
        if n == 64 {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Self {
        atoms
            .into_iter()
            .fold(AtomSet::EMPTY, |acc, a| acc | AtomSet::singleton(a))
    }

    #[inline]
    pub fn contains(self, atom: usize) -> bool {
        atom < MAX_ATOMS && self.0 >> atom & 1 == 1
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn with(self, atom: usize) -> AtomSet {
        self | AtomSet::singleton(atom)
    }

    /// Atoms in increasing index order.
    pub fn iter(self) -> Atoms {
        Atoms(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing numeric order of their masks.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl std::ops::BitOr for AtomSet {
    type Output = AtomSet;
    fn bitor(self, rhs: AtomSet) -> AtomSet {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for AtomSet {
    fn bitor_assign(&mut self, rhs: AtomSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for AtomSet {
    type Output = AtomSet;
    fn bitand(self, rhs: AtomSet) -> AtomSet {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for AtomSet {
    type Output = AtomSet;
    fn sub(self, rhs: AtomSet) -> AtomSet {
        self.difference(rhs)
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for AtomSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        AtomSet::from_atoms(iter)
    }
}

pub struct Atoms(u64);

impl Iterator for Atoms {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Atoms {}

/// Enumerates the subsets of a mask with the usual `(s - mask) & mask` trick.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = AtomSet;

    fn next(&mut self) -> Option<AtomSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(AtomSet(cur))
    }
}
