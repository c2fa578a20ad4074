//! Small set types over colours and vertices.

use std::fmt;

/// A set of colours, stored 0-based. Printed 1-based to match the usual
/// colour numbering `1..=N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u32);

/// Upper bound on the number of colours a [`ColorSet`] can address.
pub const MAX_COLOURS: usize = 32;

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// All colours `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_COLOURS, "at most {MAX_COLOURS} colours supported");
        if n == MAX_COLOURS {
            ColorSet(u32::MAX)
        } else {
            ColorSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_COLOURS);
        ColorSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut bits = 0u32;
        for i in it {
            assert!(i < MAX_COLOURS);
            bits |= 1 << i;
        }
        ColorSet(bits)
    }

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_COLOURS && self.0 & (1 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Complement inside `0..n`.
    pub fn complement(self, n: usize) -> Self {
        ColorSet(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_full(self, n: usize) -> bool {
        self == Self::full(n)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_COLOURS).filter(move |&i| self.contains(i))
    }

    /// 1-based member list, the form used in files and reports.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Every subset of `0..n`, ordered by size and then lexicographically
    /// on the sorted member list.
    pub fn all_subsets(n: usize) -> Vec<ColorSet> {
        let mut out: Vec<ColorSet> = (0..(1u64 << n)).map(|b| ColorSet(b as u32)).collect();
        out.sort_by(|a, b| canonical_order(*a, *b));
        out
    }
}

/// Canonical part ordering: by size, then lexicographic on members.
pub fn canonical_order(a: ColorSet, b: ColorSet) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().collect::<Vec<_>>().cmp(&b.iter().collect::<Vec<_>>()))
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A subset of the vertices of a fixed graph, as a bitset over the vertex
/// order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(len: usize) -> Self {
        VertexSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for v in 0..len {
            s.insert(v);
        }
        s
    }

    pub fn singleton(len: usize, v: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(v);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Size of the ambient vertex set.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.len, "vertex {v} out of range {}", self.len);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.len);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.len).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.len, other.len, "vertex sets over different graphs");
        VertexSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
