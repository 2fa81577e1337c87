//! Reduced simplicial cohomology over ℚ and Hochster's formula for `ℂ[NS(M)]`.

use crate::complex::SimplicialComplex;
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::fan::non_spanning_complex;
use crate::linalg::{self, SparseVec};
use crate::matroid::Matroid;
use crate::poly::BigradedSeries;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use std::collections::HashMap;
use std::sync::Mutex;

/// `dim H̃^i(K; ℚ)` for `i = -1, 0, 1, ...`, stored at index `i + 1`.
///
/// The complex `{∅}` gives `[1]`; the void complex gives an empty list.
pub fn reduced_cohomology_dims(k: &SimplicialComplex) -> Vec<u64> {
    let faces = k.faces_by_size();
    let index: Vec<FxHashMap<ElemSet, u32>> = faces
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect())
        .collect();
    // ranks[j]: rank of the boundary from faces of size j to faces of size j-1
    let mut ranks = vec![0usize; faces.len() + 1];
    for j in 1..faces.len() {
        let rows: Vec<SparseVec> = faces[j]
            .iter()
            .map(|&f| {
                let mut row: SparseVec = f
                    .iter()
                    .enumerate()
                    .map(|(pos, v)| {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        (index[j - 1][&f.without(v)], sign)
                    })
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        ranks[j] = linalg::rank(rows);
    }
    // over a field, cohomology and homology have equal dimensions
    (0..faces.len())
        .map(|j| (faces[j].len() - ranks[j] - ranks[j + 1]) as u64)
        .collect()
}

/// `χ̃(K) = Σ_{i ≥ -1} (-1)^i f_i`, from face counts.
pub fn reduced_euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.faces_by_size()
        .iter()
        .enumerate()
        .map(|(j, l)| if j % 2 == 1 { l.len() as i64 } else { -(l.len() as i64) })
        .sum()
}

/// Faces of `K` inside `W`, relabeled onto `{1, ..., |W|}`.
pub fn restrict_complex(k: &SimplicialComplex, w: ElemSet) -> SimplicialComplex {
    k.restrict(w)
}

fn degree_dim(dims: &[u64], i: isize) -> u64 {
    usize::try_from(i + 1)
        .ok()
        .and_then(|j| dims.get(j).copied())
        .unwrap_or(0)
}

/// Memoizes cohomology of vertex restrictions by their facet lists.
struct RestrictionCache {
    complex: SimplicialComplex,
    seen: Mutex<HashMap<Vec<ElemSet>, Vec<u64>>>,
}

impl RestrictionCache {
    fn new(complex: SimplicialComplex) -> Self {
        RestrictionCache {
            complex,
            seen: Mutex::new(HashMap::new()),
        }
    }

    fn dims(&self, w: ElemSet) -> Vec<u64> {
        let sub = self.complex.restrict(w);
        if let Some(d) = self.seen.lock().unwrap().get(&sub.facets) {
            return d.clone();
        }
        let d = reduced_cohomology_dims(&sub);
        self.seen.lock().unwrap().insert(sub.facets, d.clone());
        d
    }
}

/// `β_{t,s} = Σ_{|W| = t+s} dim H̃^{s-1}(NS(M)|_W)`.
pub fn hochster_betti(m: &Matroid, t: usize, s: usize) -> Result<u64> {
    let cache = RestrictionCache::new(non_spanning_complex(m)?);
    Ok(betti_from(&cache, m.ground(), t, s))
}

fn betti_from(cache: &RestrictionCache, ground: ElemSet, t: usize, s: usize) -> u64 {
    if t + s > ground.len() {
        return 0;
    }
    ground
        .subsets_of_size(t + s)
        .into_par_iter()
        .map(|w| degree_dim(&cache.dims(w), s as isize - 1))
        .sum()
}

/// All `β_{t,s}` with `t ≤ t_max`, `s ≤ s_max`, sharing one restriction cache.
pub fn hochster_table(m: &Matroid, t_max: usize, s_max: usize) -> Result<BigradedSeries> {
    let cache = RestrictionCache::new(non_spanning_complex(m)?);
    let ground = m.ground();
    // one pass over all W, then distribute by (|W|, degree)
    let per_w: Vec<(usize, Vec<u64>)> = ground
        .all_subsets()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| (w.len(), cache.dims(w)))
        .collect();
    let mut out = BigradedSeries::zero();
    for (size, dims) in per_w {
        for s in 0..=s_max {
            if s <= size && size - s <= t_max {
                out.add_term(size - s, s, degree_dim(&dims, s as isize - 1) as i64);
            }
        }
    }
    Ok(out)
}

/// Whether `NS(M)` has reduced cohomology only in degree `r - 2`, of dimension `|NBC(M)|`.
pub fn ns_cohomology_check(m: &Matroid) -> Result<bool> {
    let dims = reduced_cohomology_dims(&non_spanning_complex(m)?);
    let r = m.rank_total() as isize;
    let nbc = m.nbc_bases().len() as u64;
    let top = (dims.len() as isize).max(r);
    Ok((-1..top).all(|i| {
        let expected = if i == r - 2 { nbc } else { 0 };
        degree_dim(&dims, i) == expected
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn small_complexes() {
        let empty = SimplicialComplex::from_generators(0, [ElemSet::EMPTY]);
        assert_eq!(reduced_cohomology_dims(&empty), vec![1]);
        let ns = non_spanning_complex(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(reduced_cohomology_dims(&ns), vec![0, 2]);
        let simplex = SimplicialComplex::from_generators(3, [s(&[1, 2, 3])]);
        assert!(reduced_cohomology_dims(&simplex).iter().all(|&d| d == 0));
        let circle = SimplicialComplex::from_generators(3, [s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);
        assert_eq!(reduced_cohomology_dims(&circle), vec![0, 0, 1]);
    }

    #[test]
    fn restrictions() {
        let ns = non_spanning_complex(&Matroid::uniform(3, 5).unwrap()).unwrap();
        let expected = non_spanning_complex(&Matroid::uniform(3, 4).unwrap()).unwrap();
        assert_eq!(restrict_complex(&ns, s(&[1, 3, 4, 5])), expected);
        assert_eq!(restrict_complex(&ns, ElemSet::EMPTY).facets, vec![ElemSet::EMPTY]);
        assert_eq!(restrict_complex(&ns, ElemSet::full(5)), ns);
    }

    #[test]
    fn betti_numbers() {
        let m = Matroid::uniform(2, 3).unwrap();
        assert_eq!(hochster_betti(&m, 2, 1).unwrap(), 2);
        assert_eq!(hochster_betti(&m, 1, 1).unwrap(), 3);
        assert_eq!(hochster_betti(&m, 0, 0).unwrap(), 1);
        let table = hochster_table(&m, 3, 3).unwrap();
        assert_eq!(table.to_string(), "1 + 3*x*y + 2*x^2*y");
    }

    #[test]
    fn non_spanning_cohomology() {
        for (r, n) in [(2, 3), (3, 5), (1, 4), (4, 4), (3, 6)] {
            assert!(ns_cohomology_check(&Matroid::uniform(r, n).unwrap()).unwrap());
        }
        let dims = reduced_cohomology_dims(&non_spanning_complex(&Matroid::uniform(3, 5).unwrap()).unwrap());
        assert_eq!(dims, vec![0, 0, 6]);
    }

    #[test]
    fn euler_characteristic() {
        for (r, n) in [(2, 3), (3, 5), (2, 5), (4, 6)] {
            let k = non_spanning_complex(&Matroid::uniform(r, n).unwrap()).unwrap();
            let dims = reduced_cohomology_dims(&k);
            let alt: i64 = dims
                .iter()
                .enumerate()
                .map(|(j, &d)| if j % 2 == 0 { -(d as i64) } else { d as i64 })
                .sum();
            assert_eq!(alt, reduced_euler_characteristic(&k));
        }
    }
}
