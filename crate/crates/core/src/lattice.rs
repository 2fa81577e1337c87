//! Lattice of flats, order filters and flip sequences.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// The flats of a loopless matroid, grouped by rank.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    n: usize,
    flats_by_rank: Vec<Vec<ElemSet>>,
    rank_of: HashMap<ElemSet, usize>,
}

fn sort_lex(v: &mut [ElemSet]) {
    v.sort_by(|a, b| a.lex_cmp(*b));
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> Result<Self> {
        m.require_loopless()?;
        let r = m.rank_total();
        let mut levels: Vec<Vec<ElemSet>> = vec![vec![ElemSet::EMPTY]];
        for k in 0..r {
            let mut next = BTreeSet::new();
            for &f in &levels[k] {
                for x in m.ground() - f {
                    next.insert(m.closure(f.with(x)));
                }
            }
            let mut next: Vec<ElemSet> = next.into_iter().collect();
            sort_lex(&mut next);
            levels.push(next);
        }
        let rank_of = levels
            .iter()
            .enumerate()
            .flat_map(|(k, l)| l.iter().map(move |&f| (f, k)))
            .collect();
        Ok(FlatLattice {
            n: m.n(),
            flats_by_rank: levels,
            rank_of,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.flats_by_rank.len() - 1
    }

    pub fn flats_by_rank(&self) -> &[Vec<ElemSet>] {
        &self.flats_by_rank
    }

    pub fn flats_of_rank(&self, k: usize) -> &[ElemSet] {
        &self.flats_by_rank[k]
    }

    /// Rank of a flat, or `None` if the set is not a flat.
    pub fn rank_of(&self, f: ElemSet) -> Option<usize> {
        self.rank_of.get(&f).copied()
    }

    pub fn is_flat(&self, f: ElemSet) -> bool {
        self.rank_of.contains_key(&f)
    }

    /// Proper nonempty flats by increasing rank, lexicographic within a rank.
    pub fn proper_flats(&self) -> Vec<ElemSet> {
        let r = self.rank();
        (1..r)
            .flat_map(|k| self.flats_by_rank[k].iter().copied())
            .collect()
    }

    pub fn num_flats(&self) -> usize {
        self.rank_of.len()
    }

    fn is_proper(&self, f: ElemSet) -> bool {
        matches!(self.rank_of(f), Some(k) if k > 0 && k < self.rank())
    }

    pub fn is_order_filter(&self, p: &[ElemSet]) -> Result<bool> {
        for &f in p {
            if !self.is_proper(f) {
                return Err(Error::UnknownFlat(f));
            }
        }
        let set: BTreeSet<ElemSet> = p.iter().copied().collect();
        Ok(set.iter().all(|&f| {
            self.proper_flats()
                .into_iter()
                .filter(|&g| f.is_subset(g))
                .all(|g| set.contains(&g))
        }))
    }

    /// Decreasing rank, lexicographic tie-break; every prefix is an order filter.
    pub fn flip_sequence(&self) -> FlipSequence {
        let r = self.rank();
        FlipSequence {
            centers: (1..r)
                .rev()
                .flat_map(|k| self.flats_by_rank[k].iter().copied())
                .collect(),
        }
    }
}

/// Upward-closed set of proper nonempty flats.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct OrderFilter {
    flats: BTreeSet<ElemSet>,
}

impl OrderFilter {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(lattice: &FlatLattice) -> Self {
        OrderFilter {
            flats: lattice.proper_flats().into_iter().collect(),
        }
    }

    pub fn new(lattice: &FlatLattice, flats: &[ElemSet]) -> Result<Self> {
        if !lattice.is_order_filter(flats)? {
            return Err(Error::InvalidOrderFilter);
        }
        Ok(OrderFilter {
            flats: flats.iter().copied().collect(),
        })
    }

    pub fn contains(&self, f: ElemSet) -> bool {
        self.flats.contains(&f)
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// Members in bit-pattern order.
    pub fn iter(&self) -> impl Iterator<Item = ElemSet> + '_ {
        self.flats.iter().copied()
    }

    /// `self ∪ {z}`, validated.
    pub fn with(&self, lattice: &FlatLattice, z: ElemSet) -> Result<Self> {
        let mut v: Vec<ElemSet> = self.iter().collect();
        v.push(z);
        Self::new(lattice, &v)
    }
}

/// Ordered flip centers `Z_1, ..., Z_q` covering every proper nonempty flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipSequence {
    pub centers: Vec<ElemSet>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// The order filter `{Z_1, ..., Z_k}`.
    pub fn prefix(&self, k: usize) -> OrderFilter {
        OrderFilter {
            flats: self.centers[..k.min(self.centers.len())]
                .iter()
                .copied()
                .collect(),
        }
    }
}

pub fn flats(m: &Matroid) -> Result<FlatLattice> {
    FlatLattice::new(m)
}

pub fn flip_sequence(m: &Matroid) -> Result<FlipSequence> {
    Ok(FlatLattice::new(m)?.flip_sequence())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn uniform_lattices() {
        let l = flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(l.flats_of_rank(0), &[ElemSet::EMPTY]);
        assert_eq!(l.flats_of_rank(1), &[s(&[1]), s(&[2]), s(&[3])]);
        assert_eq!(l.flats_of_rank(2), &[s(&[1, 2, 3])]);
        let l = flats(&Matroid::uniform(3, 5).unwrap()).unwrap();
        assert_eq!(l.proper_flats().len(), 15);
        assert_eq!(l.flats_of_rank(2).len(), 10);
    }

    #[test]
    fn loopy_rejected() {
        let m = Matroid::new_from_bases(2, [s(&[1])]).unwrap();
        assert_eq!(flats(&m).unwrap_err(), Error::LoopyMatroid);
    }

    #[test]
    fn order_filters() {
        let u23 = flats(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert!(u23.is_order_filter(&[]).unwrap());
        let u35 = flats(&Matroid::uniform(3, 5).unwrap()).unwrap();
        assert!(u35.is_order_filter(u35.flats_of_rank(2)).unwrap());
        assert!(!u35.is_order_filter(&[s(&[1])]).unwrap());
        assert_eq!(
            u35.is_order_filter(&[s(&[1, 2, 3])]),
            Err(Error::UnknownFlat(s(&[1, 2, 3])))
        );
        assert_eq!(
            OrderFilter::new(&u35, &[s(&[1])]),
            Err(Error::InvalidOrderFilter)
        );
    }

    #[test]
    fn flip_sequences() {
        let seq = flip_sequence(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(seq.centers, vec![s(&[1]), s(&[2]), s(&[3])]);
        let seq = flip_sequence(&Matroid::uniform(3, 3).unwrap()).unwrap();
        assert_eq!(
            seq.centers,
            vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3]), s(&[1]), s(&[2]), s(&[3])]
        );
        let m = Matroid::uniform(3, 5).unwrap();
        let l = flats(&m).unwrap();
        let seq = l.flip_sequence();
        assert!(seq.centers[..10].iter().all(|f| f.len() == 2));
        assert!(seq.centers[10..].iter().all(|f| f.len() == 1));
        for k in 0..=seq.len() {
            let p: Vec<_> = seq.prefix(k).iter().collect();
            assert!(l.is_order_filter(&p).unwrap());
        }
    }
}
