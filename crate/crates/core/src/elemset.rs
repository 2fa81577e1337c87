//! Fixed-width subsets of the ground set `{1, ..., n}` with `n <= 31`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Largest supported ground-set size.
pub const MAX_N: usize = 31;

/// A subset of `{1, ..., 31}` stored as a bit set; element `i` lives in bit `i - 1`.
///
/// Iteration is always in increasing element order. The derived `Ord` compares raw
/// bit patterns and is only meant for use as a map key; use [`ElemSet::lex_cmp`]
/// for the lexicographic order on sorted element lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(u32);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        ElemSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full ground set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_N, "ground set larger than {MAX_N}");
        if n == 0 {
            ElemSet(0)
        } else {
            ElemSet(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_N).contains(&i), "element {i} out of range");
        ElemSet(1 << (i - 1))
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems
            .into_iter()
            .fold(ElemSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_N).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn with(self, i: usize) -> Self {
        self | ElemSet::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        self - ElemSet::singleton(i)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted element lists (a proper prefix is smaller).
    pub fn lex_cmp(self, other: ElemSet) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Elements above the first difference.
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            // self has the smaller element at the first difference unless other stops there.
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// All subsets of `self` with exactly `k` elements, in increasing bit-pattern order.
    pub fn subsets_of_size(self, k: usize) -> Vec<ElemSet> {
        let elems = self.to_vec();
        let m = elems.len();
        if k > m {
            return Vec::new();
        }
        if k == 0 {
            return vec![ElemSet::EMPTY];
        }
        // Gosper's hack over positions in `elems`; increasing position patterns
        // map to increasing bit patterns because `elems` is sorted.
        let mut out = Vec::new();
        let limit: u64 = 1 << m;
        let mut c: u64 = (1 << k) - 1;
        while c < limit {
            out.push(ElemSet::from_elems(
                (0..m).filter(|j| c >> j & 1 == 1).map(|j| elems[j]),
            ));
            let u = c & c.wrapping_neg();
            let v = c + u;
            c = v + (((v ^ c) / u) >> 2);
        }
        out
    }

    /// Every subset of `self`, in increasing bit-pattern order.
    pub fn all_subsets(self) -> impl Iterator<Item = ElemSet> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(ElemSet(cur))
        })
    }

    /// Image under a map `old element -> new element` (1-indexed, `map[i - 1]`).
    pub fn map_through(self, map: &[usize]) -> ElemSet {
        ElemSet::from_elems(self.iter().map(|i| map[i - 1]))
    }
}

pub struct Iter(u32);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElemSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElemSet::from_elems(iter)
    }
}

impl std::ops::BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElemSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        let mut set = ElemSet::EMPTY;
        for i in elems {
            if !(1..=MAX_N).contains(&i) {
                return Err(serde::de::Error::custom(format!(
                    "element {i} outside 1..={MAX_N}"
                )));
            }
            set = set.with(i);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn basic_ops() {
        let a = s(&[1, 3, 5]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(3) && !a.contains(2));
        assert_eq!(a.to_vec(), vec![1, 3, 5]);
        assert_eq!(a.min(), Some(1));
        assert_eq!(a.max(), Some(5));
        assert_eq!(ElemSet::full(4), s(&[1, 2, 3, 4]));
        assert_eq!(ElemSet::full(31).len(), 31);
        assert_eq!(a - s(&[3]), s(&[1, 5]));
        assert!(s(&[1, 5]).is_subset(a));
    }

    #[test]
    fn lex_order() {
        assert_eq!(s(&[1, 2, 6]).lex_cmp(s(&[1, 3, 4])), Ordering::Less);
        assert_eq!(s(&[4, 5, 6]).lex_cmp(s(&[3, 5, 6])), Ordering::Greater);
        assert_eq!(s(&[1, 2]).lex_cmp(s(&[1, 2, 3])), Ordering::Less);
        assert_eq!(s(&[1, 2, 3]).lex_cmp(s(&[1, 2])), Ordering::Greater);
        assert_eq!(s(&[2]).lex_cmp(s(&[1, 3])), Ordering::Greater);
        assert_eq!(s(&[1, 3]).lex_cmp(s(&[2])), Ordering::Less);
        assert_eq!(ElemSet::EMPTY.lex_cmp(s(&[1])), Ordering::Less);
    }

    #[test]
    fn lex_order_matches_vec_order() {
        let full = ElemSet::full(6);
        let all: Vec<_> = full.all_subsets().collect();
        for &a in &all {
            for &b in &all {
                assert_eq!(a.lex_cmp(b), a.to_vec().cmp(&b.to_vec()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn subsets() {
        let f = ElemSet::full(5);
        assert_eq!(f.subsets_of_size(2).len(), 10);
        assert_eq!(f.subsets_of_size(0), vec![ElemSet::EMPTY]);
        assert_eq!(f.subsets_of_size(5), vec![f]);
        assert!(f.subsets_of_size(6).is_empty());
        assert_eq!(f.all_subsets().count(), 32);
        assert_eq!(s(&[2, 4]).all_subsets().count(), 4);
        assert_eq!(ElemSet::EMPTY.all_subsets().count(), 1);
    }

    #[test]
    fn serde_round_trip() {
        let a = s(&[1, 4, 31]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, "[1,4,31]");
        assert_eq!(serde_json::from_str::<ElemSet>(&js).unwrap(), a);
        assert!(serde_json::from_str::<ElemSet>("[0]").is_err());
        assert!(serde_json::from_str::<ElemSet>("[32]").is_err());
    }
}
