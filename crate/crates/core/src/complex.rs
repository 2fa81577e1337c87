//! Simplicial complexes: face enumeration, f- and h-vectors, standard monomials.

use crate::elemset::ElemSet;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

/// A face as a strictly increasing list of vertex indices.
pub type Face = Vec<u16>;

/// A simplicial complex on vertices `0..num_vertices`, stored by its full face list.
///
/// The empty face is always present. A vertex `v` belongs to the complex iff `[v]`
/// is a face.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    num_vertices: usize,
    by_size: Vec<Vec<Face>>,
    index: FxHashSet<Face>,
}

impl FaceComplex {
    /// Enumerates all faces of a downward-closed predicate.
    pub fn from_oracle(num_vertices: usize, is_face: impl Fn(&[u16]) -> bool) -> Self {
        let mut by_size: Vec<Vec<Face>> = vec![vec![Vec::new()]];
        loop {
            let last = by_size.last().unwrap();
            let mut next = Vec::new();
            for f in last {
                let start = f.last().map_or(0, |&v| v as usize + 1);
                for v in start..num_vertices {
                    let mut g = f.clone();
                    g.push(v as u16);
                    // Every codimension-one subface must already be present.
                    if g.len() > 1 && !drops_are_faces(&g, last) {
                        continue;
                    }
                    if is_face(&g) {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            by_size.push(next);
        }
        Self::from_levels(num_vertices, by_size)
    }

    fn from_levels(num_vertices: usize, by_size: Vec<Vec<Face>>) -> Self {
        let index = by_size.iter().flatten().cloned().collect();
        FaceComplex {
            num_vertices,
            by_size,
            index,
        }
    }

    /// The subcomplex of faces satisfying a downward-closed predicate.
    pub fn filtered(&self, keep: impl Fn(&[u16]) -> bool) -> Self {
        let mut by_size: Vec<Vec<Face>> = self
            .by_size
            .iter()
            .map(|l| l.iter().filter(|f| keep(f)).cloned().collect())
            .collect();
        while by_size.len() > 1 && by_size.last().is_some_and(|l| l.is_empty()) {
            by_size.pop();
        }
        Self::from_levels(self.num_vertices, by_size)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn is_face(&self, f: &[u16]) -> bool {
        self.index.contains(f)
    }

    /// Vertices `v` with `[v]` a face.
    pub fn vertices(&self) -> Vec<u16> {
        self.by_size
            .get(1)
            .map(|l| l.iter().map(|f| f[0]).collect())
            .unwrap_or_default()
    }

    /// Largest face size (the Krull dimension of the Stanley-Reisner ring).
    pub fn max_face_size(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn faces_of_size(&self, k: usize) -> &[Face] {
        self.by_size.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.by_size.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.index.len()
    }

    /// `f[k]` = number of faces with `k` vertices (`f[0] = 1`).
    pub fn f_vector(&self) -> Vec<u64> {
        self.by_size.iter().map(|l| l.len() as u64).collect()
    }

    /// Coefficients of `h(t)` with `Σ_F t^|F| / (1-t)^|F| = h(t) / (1-t)^d`.
    pub fn h_vector(&self) -> Vec<i64> {
        let f = self.f_vector();
        let d = self.max_face_size();
        (0..=d)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, k - i) as i64 * f[i] as i64
                    })
                    .sum()
            })
            .collect()
    }

    /// Faces contained in no other face.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (k, level) in self.by_size.iter().enumerate() {
            let above = self.by_size.get(k + 1);
            for f in level {
                let covered = above.is_some_and(|_| {
                    (0..self.num_vertices as u16).any(|v| {
                        f.binary_search(&v).is_err() && self.index.contains(&insert_sorted(f, v))
                    })
                });
                if !covered {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Minimal vertex sets (over the complex's vertices) that are not faces.
    pub fn minimal_nonfaces(&self) -> Vec<Face> {
        let verts = self.vertices();
        let mut out = Vec::new();
        for f in self.faces() {
            let start = f.last().map_or(0, |&v| v + 1);
            for &v in verts.iter().filter(|&&v| v >= start) {
                let mut g = f.clone();
                g.push(v);
                if !self.index.contains(&g) && (0..g.len()).all(|i| self.index.contains(&drop_at(&g, i))) {
                    out.push(g);
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Number of degree-`s` monomials supported on a face.
    pub fn graded_dimension(&self, s: usize) -> u64 {
        if s == 0 {
            return 1;
        }
        self.by_size
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, l)| l.len() as u64 * binomial(s - 1, k - 1))
            .sum()
    }

    /// Degree-`s` standard monomials as sorted multisets of vertices, in lexicographic
    /// order (equivalently, decreasing lexicographic order of exponent vectors).
    pub fn monomials(&self, s: usize) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        if s == 0 {
            out.push(Vec::new());
            return out;
        }
        for level in self.by_size.iter().skip(1).take(s) {
            for f in level {
                let extra = s - f.len();
                distribute(f, extra, &mut out);
            }
        }
        out.sort();
        out
    }
}

/// Sorted multisets of size `|f| + extra` with support exactly `f`.
fn distribute(f: &[u16], extra: usize, out: &mut Vec<Vec<u16>>) {
    fn rec(f: &[u16], i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == f.len() - 1 {
            let len = cur.len();
            cur.extend(std::iter::repeat(f[i]).take(left + 1));
            out.push(cur.clone());
            cur.truncate(len);
            return;
        }
        for e in 0..=left {
            let len = cur.len();
            cur.extend(std::iter::repeat(f[i]).take(e + 1));
            rec(f, i + 1, left - e, cur, out);
            cur.truncate(len);
        }
    }
    rec(f, 0, extra, &mut Vec::new(), out);
}

fn drops_are_faces(g: &[u16], prev: &[Face]) -> bool {
    (0..g.len() - 1).all(|i| prev.binary_search(&drop_at(g, i)).is_ok())
}

fn drop_at(g: &[u16], i: usize) -> Face {
    let mut h = g.to_vec();
    h.remove(i);
    h
}

fn insert_sorted(f: &[u16], v: u16) -> Face {
    let mut g = f.to_vec();
    let pos = g.binary_search(&v).unwrap_err();
    g.insert(pos, v);
    g
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Lookup tables for standard monomials in each degree.
#[derive(Clone, Debug, Default)]
pub struct MonomialTable {
    monos: Vec<Vec<Vec<u16>>>,
    index: Vec<FxHashMap<Vec<u16>, u32>>,
}

impl MonomialTable {
    pub fn new(complex: &FaceComplex, max_degree: usize) -> Self {
        let monos: Vec<Vec<Vec<u16>>> = (0..=max_degree).map(|s| complex.monomials(s)).collect();
        let index = monos
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i as u32))
                    .collect()
            })
            .collect();
        MonomialTable { monos, index }
    }

    pub fn max_degree(&self) -> usize {
        self.monos.len() - 1
    }

    pub fn dim(&self, s: usize) -> usize {
        self.monos.get(s).map_or(0, |l| l.len())
    }

    pub fn monomials(&self, s: usize) -> &[Vec<u16>] {
        &self.monos[s]
    }

    pub fn index_of(&self, s: usize, m: &[u16]) -> Option<u32> {
        self.index.get(s)?.get(m).copied()
    }

    /// Index of `x_v * m` in degree `s + 1`, or `None` if the product vanishes.
    pub fn times(&self, s: usize, i: u32, v: u16) -> Option<u32> {
        let m = &self.monos[s][i as usize];
        let pos = m.partition_point(|&w| w <= v);
        let mut p = Vec::with_capacity(m.len() + 1);
        p.extend_from_slice(&m[..pos]);
        p.push(v);
        p.extend_from_slice(&m[pos..]);
        self.index_of(s + 1, &p)
    }
}

/// A simplicial complex on `{1, ..., m}` (m ≤ 31) stored by facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimplicialComplex {
    pub num_vertices: usize,
    /// Facets, sorted by bit pattern. The complex `{∅}` has the single facet `∅`;
    /// the void complex has none.
    pub facets: Vec<ElemSet>,
}

impl SimplicialComplex {
    /// Builds the complex generated by `sets`, keeping only inclusion-maximal ones.
    pub fn from_generators(num_vertices: usize, sets: impl IntoIterator<Item = ElemSet>) -> Self {
        let mut all: Vec<ElemSet> = sets.into_iter().collect();
        all.sort();
        all.dedup();
        let facets: Vec<ElemSet> = all
            .iter()
            .copied()
            .filter(|&f| !all.iter().any(|&g| g != f && f.is_subset(g)))
            .collect();
        SimplicialComplex {
            num_vertices,
            facets,
        }
    }

    pub fn is_face(&self, s: ElemSet) -> bool {
        self.facets.iter().any(|&f| s.is_subset(f))
    }

    /// All faces, grouped by size.
    pub fn faces_by_size(&self) -> Vec<Vec<ElemSet>> {
        let mut set = FxHashSet::default();
        for &f in &self.facets {
            for g in f.all_subsets() {
                set.insert(g);
            }
        }
        let top = set.iter().map(|f| f.len()).max();
        let mut out = vec![Vec::new(); top.map_or(0, |t| t + 1)];
        for f in set {
            out[f.len()].push(f);
        }
        for l in &mut out {
            l.sort_by(|a, b| a.lex_cmp(*b));
        }
        out
    }

    /// Faces contained in `w`, relabeled order-preservingly onto `{1, ..., |w|}`.
    pub fn restrict(&self, w: ElemSet) -> SimplicialComplex {
        let map: Vec<usize> = {
            let mut m = vec![0; self.num_vertices.max(w.max().unwrap_or(0))];
            for (k, i) in w.iter().enumerate() {
                m[i - 1] = k + 1;
            }
            m
        };
        let gens: Vec<ElemSet> = self
            .facets
            .iter()
            .map(|&f| (f & w).map_through(&map))
            .collect();
        if gens.is_empty() {
            return SimplicialComplex {
                num_vertices: w.len(),
                facets: Vec::new(),
            };
        }
        Self::from_generators(w.len(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_of_triangle() -> FaceComplex {
        FaceComplex::from_oracle(3, |f| f.len() <= 2)
    }

    #[test]
    fn enumeration() {
        let c = boundary_of_triangle();
        assert_eq!(c.f_vector(), vec![1, 3, 3]);
        assert_eq!(c.max_face_size(), 2);
        assert_eq!(c.h_vector(), vec![1, 1, 1]);
        assert_eq!(c.facets().len(), 3);
        assert_eq!(c.minimal_nonfaces(), vec![vec![0, 1, 2]]);
        assert_eq!(c.vertices(), vec![0, 1, 2]);
    }

    #[test]
    fn monomials_match_dimension() {
        let c = boundary_of_triangle();
        for s in 0..6 {
            assert_eq!(c.monomials(s).len() as u64, c.graded_dimension(s));
        }
        let points = FaceComplex::from_oracle(3, |f| f.len() <= 1);
        assert_eq!(
            points.monomials(2),
            vec![vec![0, 0], vec![1, 1], vec![2, 2]]
        );
        assert_eq!(points.monomials(0), vec![Vec::<u16>::new()]);
    }

    #[test]
    fn monomial_table_products() {
        let c = boundary_of_triangle();
        let t = MonomialTable::new(&c, 3);
        let i = t.index_of(1, &[0]).unwrap();
        assert!(t.times(1, i, 1).is_some());
        let j = t.index_of(2, &[0, 1]).unwrap();
        assert_eq!(t.times(2, j, 2), None);
        assert_eq!(t.times(2, j, 0), t.index_of(3, &[0, 0, 1]));
    }

    #[test]
    fn filtered_subcomplex() {
        let c = boundary_of_triangle();
        let sub = c.filtered(|f| !f.contains(&2));
        assert_eq!(sub.f_vector(), vec![1, 2, 1]);
        assert!(!sub.is_face(&[2]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(30, 15), 155117520);
    }

    #[test]
    fn simplicial_restriction() {
        let s = |v: &[usize]| ElemSet::from_elems(v.iter().copied());
        let k = SimplicialComplex::from_generators(4, [s(&[1, 2]), s(&[2, 3]), s(&[1]), s(&[3, 4])]);
        assert_eq!(k.facets.len(), 3);
        let r = k.restrict(s(&[2, 3, 4]));
        assert_eq!(r.facets, vec![s(&[1, 2]), s(&[2, 3])]);
        let e = k.restrict(ElemSet::EMPTY);
        assert_eq!(e.facets, vec![ElemSet::EMPTY]);
        assert_eq!(k.restrict(s(&[1, 2, 3, 4])), k);
    }
}
