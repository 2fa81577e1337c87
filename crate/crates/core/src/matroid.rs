//! Matroids given by their bases.

use crate::elemset::{ElemSet, MAX_N};
use crate::error::{Error, Result};
use crate::poly::TuttePolynomial;
use std::collections::HashSet;

/// A matroid on `{1, ..., n}` stored by its basis family.
///
/// Construction validates the exchange axiom, so every value of this type is a
/// genuine matroid. Bases are kept sorted by bit pattern.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: Vec<ElemSet>,
    lookup: HashSet<ElemSet>,
    loopless: bool,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

/// Activity statistics of a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Activity {
    pub ia: usize,
    pub ea: usize,
    pub ep: usize,
}

/// Order-preserving identification of a subset of an old ground set with `{1, ..., m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    to_old: Vec<usize>,
}

impl Relabeling {
    fn onto(set: ElemSet) -> Self {
        Relabeling {
            to_old: set.to_vec(),
        }
    }

    /// Old element carried by the new element `i`.
    pub fn old(&self, i: usize) -> usize {
        self.to_old[i - 1]
    }

    /// New label of an old element, if it survives.
    pub fn new_label(&self, old: usize) -> Option<usize> {
        self.to_old.binary_search(&old).ok().map(|k| k + 1)
    }

    pub fn old_set(&self, set: ElemSet) -> ElemSet {
        set.iter().map(|i| self.old(i)).collect()
    }

    /// Relabels an old set; elements outside the domain are dropped.
    pub fn new_set(&self, set: ElemSet) -> ElemSet {
        set.iter().filter_map(|i| self.new_label(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_old.is_empty()
    }
}

impl Matroid {
    pub fn new_from_bases(n: usize, bases: impl IntoIterator<Item = ElemSet>) -> Result<Self> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::InvalidGroundSet(n));
        }
        let ground = ElemSet::full(n);
        let mut list: Vec<ElemSet> = bases.into_iter().collect();
        list.sort();
        list.dedup();
        let first = *list.first().ok_or(Error::EmptyBasisFamily)?;
        let r = first.len();
        for &b in &list {
            if !b.is_subset(ground) {
                return Err(Error::OutOfGroundSet { set: b, n });
            }
            if b.len() != r {
                return Err(Error::UnequalCardinality {
                    first,
                    other: b,
                    expected: r,
                    found: b.len(),
                });
            }
        }
        let lookup: HashSet<ElemSet> = list.iter().copied().collect();
        for &b1 in &list {
            for &b2 in &list {
                for x in b1 - b2 {
                    let ok = (b2 - b1)
                        .iter()
                        .any(|y| lookup.contains(&b1.without(x).with(y)));
                    if !ok {
                        return Err(Error::ExchangeAxiomViolation { b1, b2, x });
                    }
                }
            }
        }
        let covered = list.iter().fold(ElemSet::EMPTY, |acc, &b| acc | b);
        Ok(Matroid {
            n,
            r,
            loopless: covered == ground,
            bases: list,
            lookup,
        })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r < 1 || r > n || n > MAX_N {
            return Err(Error::InvalidRank { r, n });
        }
        Self::new_from_bases(n, ElemSet::full(n).subsets_of_size(r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank_total(&self) -> usize {
        self.r
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    pub fn bases(&self) -> &[ElemSet] {
        &self.bases
    }

    pub fn is_basis(&self, b: ElemSet) -> bool {
        self.lookup.contains(&b)
    }

    pub fn is_loopless(&self) -> bool {
        self.loopless
    }

    pub fn require_loopless(&self) -> Result<()> {
        if self.loopless {
            Ok(())
        } else {
            Err(Error::LoopyMatroid)
        }
    }

    pub fn rank(&self, a: ElemSet) -> usize {
        let cap = a.len().min(self.r);
        let mut best = 0;
        for &b in &self.bases {
            best = best.max((b & a).len());
            if best == cap {
                break;
            }
        }
        best
    }

    pub fn is_independent(&self, a: ElemSet) -> bool {
        self.rank(a) == a.len()
    }

    pub fn closure(&self, a: ElemSet) -> ElemSet {
        let ra = self.rank(a);
        let mut out = a;
        for x in self.ground() - a {
            if self.rank(a.with(x)) == ra {
                out = out.with(x);
            }
        }
        out
    }

    pub fn is_flat(&self, a: ElemSet) -> bool {
        a.is_subset(self.ground()) && self.closure(a) == a
    }

    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        let bases: Vec<ElemSet> = self.bases.iter().map(|&b| g - b).collect();
        Self::from_valid(self.n, bases)
    }

    /// Builds a matroid from a family already known to satisfy the axioms.
    fn from_valid(n: usize, mut bases: Vec<ElemSet>) -> Matroid {
        bases.sort();
        bases.dedup();
        let r = bases[0].len();
        let covered = bases.iter().fold(ElemSet::EMPTY, |acc, &b| acc | b);
        Matroid {
            n,
            r,
            loopless: covered == ElemSet::full(n),
            lookup: bases.iter().copied().collect(),
            bases,
        }
    }

    /// `M|_W`, relabeled order-preservingly onto `{1, ..., |W|}`.
    pub fn restriction(&self, w: ElemSet) -> Result<(Matroid, Relabeling)> {
        if w.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if !w.is_subset(self.ground()) {
            return Err(Error::OutOfGroundSet { set: w, n: self.n });
        }
        let k = self.rank(w);
        let map = Relabeling::onto(w);
        let bases = self
            .bases
            .iter()
            .map(|&b| b & w)
            .filter(|b| b.len() == k)
            .map(|b| map.new_set(b))
            .collect();
        Ok((Self::from_valid(w.len(), bases), map))
    }

    /// `M_F` for a flat `F`, relabeled order-preservingly onto `{1, ..., n - |F|}`.
    pub fn contraction(&self, f: ElemSet) -> Result<(Matroid, Relabeling)> {
        if !self.is_flat(f) {
            return Err(Error::NotAFlat(f));
        }
        let rest = self.ground() - f;
        if rest.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        let rf = self.rank(f);
        let map = Relabeling::onto(rest);
        let bases = self
            .bases
            .iter()
            .filter(|b| (**b & f).len() == rf)
            .map(|&b| map.new_set(b - f))
            .collect();
        Ok((Self::from_valid(rest.len(), bases), map))
    }

    /// The matroid obtained by renaming element `i` to `perm[i - 1]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Matroid> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p < 1 || p > self.n || std::mem::replace(&mut seen[p - 1], true))
        {
            return Err(Error::InvalidParams(format!(
                "{perm:?} is not a permutation of 1..={}",
                self.n
            )));
        }
        let bases = self.bases.iter().map(|b| b.map_through(perm)).collect();
        Ok(Self::from_valid(self.n, bases))
    }

    fn check_basis(&self, b: ElemSet) -> Result<()> {
        if self.is_basis(b) {
            Ok(())
        } else {
            Err(Error::NotABasis(b))
        }
    }

    /// The unique circuit in `B ∪ x`.
    pub fn fundamental_circuit(&self, b: ElemSet, x: usize) -> Result<ElemSet> {
        self.check_basis(b)?;
        if b.contains(x) {
            return Err(Error::ElementInBasis { basis: b, x });
        }
        if !self.ground().contains(x) {
            return Err(Error::OutOfGroundSet {
                set: ElemSet::singleton(x),
                n: self.n,
            });
        }
        Ok(self.circuit_unchecked(b, x))
    }

    fn circuit_unchecked(&self, b: ElemSet, x: usize) -> ElemSet {
        let mut c = ElemSet::singleton(x);
        for y in b {
            if self.lookup.contains(&b.without(y).with(x)) {
                c = c.with(y);
            }
        }
        c
    }

    /// Fundamental cocircuit of `y ∈ B`: `y` together with every `z ∉ B` exchangeable for it.
    fn cocircuit_unchecked(&self, b: ElemSet, y: usize) -> ElemSet {
        let mut c = ElemSet::singleton(y);
        for z in self.ground() - b {
            if self.lookup.contains(&b.without(y).with(z)) {
                c = c.with(z);
            }
        }
        c
    }

    pub fn externally_passive_set(&self, b: ElemSet) -> Result<ElemSet> {
        self.check_basis(b)?;
        Ok((self.ground() - b)
            .iter()
            .filter(|&x| self.circuit_unchecked(b, x).min() != Some(x))
            .collect())
    }

    pub fn externally_active_set(&self, b: ElemSet) -> Result<ElemSet> {
        self.check_basis(b)?;
        Ok((self.ground() - b)
            .iter()
            .filter(|&x| self.circuit_unchecked(b, x).min() == Some(x))
            .collect())
    }

    pub fn internally_active_set(&self, b: ElemSet) -> Result<ElemSet> {
        self.check_basis(b)?;
        Ok(b.iter()
            .filter(|&y| self.cocircuit_unchecked(b, y).min() == Some(y))
            .collect())
    }

    pub fn activity(&self, b: ElemSet) -> Result<Activity> {
        let ea = self.externally_active_set(b)?.len();
        let ia = self.internally_active_set(b)?.len();
        Ok(Activity {
            ia,
            ea,
            ep: self.n - self.r - ea,
        })
    }

    pub fn ep(&self, b: ElemSet) -> Result<usize> {
        Ok(self.externally_passive_set(b)?.len())
    }

    pub fn tutte(&self) -> TuttePolynomial {
        let mut t = TuttePolynomial::zero();
        for &b in &self.bases {
            let a = self.activity(b).expect("iterating over bases");
            t.add_term(a.ia, a.ea, 1);
        }
        t
    }

    /// Bases without externally active elements, sorted lexicographically.
    pub fn nbc_bases(&self) -> Vec<ElemSet> {
        let mut out: Vec<ElemSet> = self
            .bases
            .iter()
            .copied()
            .filter(|&b| {
                (self.ground() - b)
                    .iter()
                    .all(|x| self.circuit_unchecked(b, x).min() != Some(x))
            })
            .collect();
        out.sort_by(|a, b| a.lex_cmp(*b));
        out
    }

    pub fn lex_max_basis(&self) -> ElemSet {
        self.bases
            .iter()
            .copied()
            .max_by(|a, b| a.lex_cmp(*b))
            .expect("basis family is nonempty")
    }

    /// Bases sorted lexicographically by their element lists.
    pub fn bases_lex(&self) -> Vec<ElemSet> {
        let mut v = self.bases.clone();
        v.sort_by(|a, b| a.lex_cmp(*b));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    fn six() -> Matroid {
        let bases = [
            125, 126, 135, 136, 145, 146, 235, 236, 245, 246, 256, 345, 346, 356, 456,
        ];
        Matroid::new_from_bases(
            6,
            bases.iter().map(|&d: &usize| {
                ElemSet::from_elems([d / 100, d / 10 % 10, d % 10])
            }),
        )
        .unwrap()
    }

    #[test]
    fn construction() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.rank_total(), 2);
        assert!(u23.is_loopless());
        assert_eq!(u23.bases().len(), 3);
        let m = six();
        assert_eq!(m.bases().len(), 15);
        assert_eq!(m.rank_total(), 3);
        assert!(m.is_loopless());
        assert_eq!(Matroid::uniform(3, 5).unwrap().bases().len(), 10);
        assert_eq!(
            Matroid::uniform(1, 2).unwrap().bases(),
            &[s(&[1]), s(&[2])]
        );
        assert_eq!(Matroid::uniform(3, 3).unwrap().bases(), &[s(&[1, 2, 3])]);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Matroid::new_from_bases(3, [s(&[1, 2]), s(&[3])]),
            Err(Error::UnequalCardinality { .. })
        ));
        assert_eq!(
            Matroid::new_from_bases(3, []),
            Err(Error::EmptyBasisFamily)
        );
        // {1,2},{3,4}: exchanging 1 out of {1,2} needs {2,3} or {2,4}.
        assert!(matches!(
            Matroid::new_from_bases(4, [s(&[1, 2]), s(&[3, 4])]),
            Err(Error::ExchangeAxiomViolation { .. })
        ));
        assert!(matches!(
            Matroid::uniform(0, 3),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            Matroid::uniform(4, 3),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            Matroid::new_from_bases(3, [s(&[4])]),
            Err(Error::OutOfGroundSet { .. })
        ));
    }

    #[test]
    fn loops_detected() {
        let m = Matroid::new_from_bases(3, [s(&[1]), s(&[2])]).unwrap();
        assert!(!m.is_loopless());
        assert_eq!(m.closure(ElemSet::EMPTY), s(&[3]));
    }

    #[test]
    fn rank_and_closure() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.rank(s(&[1])), 1);
        assert_eq!(u23.rank(s(&[1, 2, 3])), 2);
        assert_eq!(six().rank(s(&[1, 2])), 2);
        assert_eq!(u23.closure(s(&[1])), s(&[1]));
        assert_eq!(u23.closure(s(&[1, 2])), s(&[1, 2, 3]));
        assert_eq!(u23.closure(ElemSet::EMPTY), ElemSet::EMPTY);
    }

    #[test]
    fn duality() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.dual(), Matroid::uniform(1, 3).unwrap());
        assert_eq!(
            Matroid::uniform(2, 5).unwrap().dual(),
            Matroid::uniform(3, 5).unwrap()
        );
        let d = six().dual();
        assert_eq!(d.rank_total(), 3);
        assert_eq!(d.bases().len(), 15);
        assert_eq!(d.dual(), six());
    }

    #[test]
    fn minors() {
        let u35 = Matroid::uniform(3, 5).unwrap();
        let (r, map) = u35.restriction(s(&[1, 2])).unwrap();
        assert_eq!(r, Matroid::uniform(2, 2).unwrap());
        assert_eq!(map.old(2), 2);
        let (r, map) = u35.restriction(s(&[2, 3, 4, 5])).unwrap();
        assert_eq!(r, Matroid::uniform(3, 4).unwrap());
        assert_eq!(map.old(1), 2);
        assert_eq!(map.new_label(5), Some(4));
        assert_eq!(map.new_label(1), None);
        let (r, _) = six().restriction(s(&[1, 2, 5])).unwrap();
        assert_eq!(r, Matroid::uniform(3, 3).unwrap());
        assert_eq!(u35.restriction(ElemSet::EMPTY), Err(Error::EmptyGroundSet));

        let (c, map) = u35.contraction(s(&[1, 2])).unwrap();
        assert_eq!(c, Matroid::uniform(1, 3).unwrap());
        assert_eq!(map.old(1), 3);
        let (c, _) = Matroid::uniform(2, 3).unwrap().contraction(s(&[1])).unwrap();
        assert_eq!(c, Matroid::uniform(1, 2).unwrap());
        let (c, _) = six().contraction(ElemSet::EMPTY).unwrap();
        assert_eq!(c, six());
        assert_eq!(
            Matroid::uniform(2, 3).unwrap().contraction(s(&[1, 2])),
            Err(Error::NotAFlat(s(&[1, 2])))
        );
    }

    #[test]
    fn circuits() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.fundamental_circuit(s(&[1, 2]), 3).unwrap(), s(&[1, 2, 3]));
        let u35 = Matroid::uniform(3, 5).unwrap();
        assert_eq!(
            u35.fundamental_circuit(s(&[1, 2, 3]), 5).unwrap(),
            s(&[1, 2, 3, 5])
        );
        // 256 and 126 are bases, 156 is not.
        assert_eq!(
            six().fundamental_circuit(s(&[1, 2, 5]), 6).unwrap(),
            s(&[1, 5, 6])
        );
        assert_eq!(
            u23.fundamental_circuit(s(&[1, 2]), 2),
            Err(Error::ElementInBasis {
                basis: s(&[1, 2]),
                x: 2
            })
        );
        assert_eq!(
            u23.fundamental_circuit(s(&[1]), 2),
            Err(Error::NotABasis(s(&[1])))
        );
    }

    #[test]
    fn activities() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.externally_passive_set(s(&[1, 2])).unwrap(), s(&[3]));
        assert_eq!(u23.externally_passive_set(s(&[2, 3])).unwrap(), ElemSet::EMPTY);
        assert_eq!(
            u23.activity(s(&[1, 2])).unwrap(),
            Activity { ia: 2, ea: 0, ep: 1 }
        );
        assert_eq!(
            u23.activity(s(&[2, 3])).unwrap(),
            Activity { ia: 0, ea: 1, ep: 0 }
        );
        assert_eq!(
            u23.activity(s(&[1, 3])).unwrap(),
            Activity { ia: 1, ea: 0, ep: 1 }
        );
        let u35 = Matroid::uniform(3, 5).unwrap();
        for &b in u35.bases() {
            assert_eq!(u35.ep(b).unwrap(), 3 - b.min().unwrap());
        }
    }

    #[test]
    fn nbc_and_lex_max() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.nbc_bases(), vec![s(&[1, 2]), s(&[1, 3])]);
        let u35 = Matroid::uniform(3, 5).unwrap();
        let nbc = u35.nbc_bases();
        assert_eq!(nbc.len(), 6);
        assert!(nbc.iter().all(|b| b.contains(1)));
        assert_eq!(six().nbc_bases().len(), 6);
        assert_eq!(u23.lex_max_basis(), s(&[2, 3]));
        assert_eq!(u35.lex_max_basis(), s(&[3, 4, 5]));
        assert_eq!(six().lex_max_basis(), s(&[4, 5, 6]));
    }

    #[test]
    fn tutte_small() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().tutte().to_string(), "x^2 + x + y");
        assert_eq!(Matroid::uniform(1, 2).unwrap().tutte().to_string(), "x + y");
        let t = six().tutte();
        assert_eq!(t.total(), 15);
        assert_eq!(t.eval(1, 0), 6);
    }

    #[test]
    fn permutation() {
        let m = six();
        let p = m.permuted(&[6, 5, 4, 3, 2, 1]).unwrap();
        assert_eq!(p.bases().len(), 15);
        assert!(p.is_basis(s(&[2, 5, 6])));
        assert!(m.permuted(&[1, 1, 2, 3, 4, 5]).is_err());
    }
}
