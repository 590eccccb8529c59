use std::collections::HashMap;
use std::fmt;

/// Hard width of [`PropSet`].
pub const MAX_PROPS: usize = 64;

/// Default cap on the proposition universe accepted by the product solvers.
pub const DEFAULT_AP_CAP: usize = 30;

/// Dense index into a proposition universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropId(pub usize);

/// Subset of a proposition universe of at most [`MAX_PROPS`] elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropSet(u64);

impl PropSet {
    pub const EMPTY: PropSet = PropSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PropSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(p: PropId) -> Self {
        assert!(p.0 < MAX_PROPS, "proposition id {} out of range", p.0);
        PropSet(1 << p.0)
    }

    /// The first `n` propositions.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PROPS);
        if n == MAX_PROPS {
            PropSet(u64::MAX)
        } else {
            PropSet((1u64 << n) - 1)
        }
    }

    pub fn insert(&mut self, p: PropId) {
        *self = self.union(PropSet::singleton(p));
    }

    pub fn contains(self, p: PropId) -> bool {
        p.0 < MAX_PROPS && self.0 & (1 << p.0) != 0
    }

    pub fn union(self, other: PropSet) -> PropSet {
        PropSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PropSet) -> PropSet {
        PropSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: PropSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Index one past the largest member, 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_PROPS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = PropId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(PropId(i))
        })
    }

    /// All subsets of `self`, ordered by cardinality and then by bit pattern.
    pub fn subsets_by_size(self) -> SubsetsBySize {
        SubsetsBySize {
            members: self.iter().collect(),
            size: 0,
            mask: Some(0),
        }
    }
}

/// Iterator returned by [`PropSet::subsets_by_size`].
#[derive(Debug, Clone)]
pub struct SubsetsBySize {
    members: Vec<PropId>,
    size: usize,
    /// Current combination over member indices, `None` when exhausted.
    mask: Option<u128>,
}

impl Iterator for SubsetsBySize {
    type Item = PropSet;

    fn next(&mut self) -> Option<PropSet> {
        let mask = self.mask?;
        let k = self.members.len();
        let set = self
            .members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        // next combination of the same size (Gosper), else the smallest of the next size
        let next = if mask == 0 {
            None
        } else {
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            Some((((ripple ^ mask) >> 2) / low) | ripple).filter(|&m| m < (1u128 << k))
        };
        self.mask = next.or_else(|| {
            self.size += 1;
            (self.size <= k).then(|| (1u128 << self.size) - 1)
        });
        Some(set)
    }
}

impl FromIterator<PropId> for PropSet {
    fn from_iter<I: IntoIterator<Item = PropId>>(iter: I) -> Self {
        iter.into_iter()
            .fold(PropSet::EMPTY, |acc, p| acc.union(PropSet::singleton(p)))
    }
}

impl fmt::Debug for PropSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

/// Insertion-ordered name table mapping names to dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id of `name`, adding it if absent.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}
