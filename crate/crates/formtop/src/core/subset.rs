use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// Index of an element in a site's base. Codes are assigned in construction order.
pub type Elem = u32;

/// Sorted, duplicate-free finite set of indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSubset(Vec<u32>);

impl FinSubset {
    pub fn new<I: IntoIterator<Item = u32>>(items: I) -> Self {
        let mut v: Vec<u32> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FinSubset(v)
    }

    pub fn empty() -> Self {
        FinSubset(Vec::new())
    }

    pub fn singleton(e: u32) -> Self {
        FinSubset(vec![e])
    }

    /// Caller guarantees `v` is sorted and deduplicated.
    pub(crate) fn from_sorted(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        FinSubset(v)
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        FinSubset(bits.ones().map(|i| i as u32).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        FinSubset((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, e: u32) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn insert(&mut self, e: u32) {
        if let Err(pos) = self.0.binary_search(&e) {
            self.0.insert(pos, e);
        }
    }

    pub fn with(&self, e: u32) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FinSubset(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        FinSubset(self.0.iter().copied().filter(|e| other.contains(*e)).collect())
    }

    pub fn difference(&self, other: &Self) -> Self {
        FinSubset(self.0.iter().copied().filter(|e| !other.contains(*e)).collect())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut j = 0;
        for &x in &self.0 {
            while j < other.0.len() && other.0[j] < x {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self ≬ other`: the two sets share an element.
    pub fn meets(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &e in &self.0 {
            b.insert(e as usize);
        }
        b
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &e| m | 1 << e)
    }

    /// All subsets, ordered by size and then lexicographically.
    pub fn subsets(&self) -> Vec<FinSubset> {
        let n = self.0.len();
        let mut out: Vec<FinSubset> = (0u64..1 << n)
            .map(|m| FinSubset((0..n).filter(|i| m >> i & 1 == 1).map(|i| self.0[i]).collect()))
            .collect();
        out.sort_by(canonical_cmp);
        out
    }
}

/// Size first, then lexicographic.
pub fn canonical_cmp(a: &FinSubset, b: &FinSubset) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

pub fn sort_canonical(v: &mut [FinSubset]) {
    v.sort_by(canonical_cmp);
}

impl FromIterator<u32> for FinSubset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        FinSubset::new(iter)
    }
}

impl fmt::Debug for FinSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Iterate the submasks of `mask`, including `mask` and 0.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let m = cur?;
        cur = if m == 0 { None } else { Some((m - 1) & mask) };
        Some(m)
    })
}
