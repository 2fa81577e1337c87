//! The square-free Koszul subcomplex of `ℂ[Σ_{M,∅}]` over `S°_M`, and explicit `Tor_1` cycles.
//!
//! A square-free basis element is `x_S ⊗ ξ` with `S` non-spanning and
//! `ξ = (x_{i_1} - x_p) ∧ … ∧ (x_{i_t} - x_p)`, where `p = max([n] \ S)` and no `i_k`
//! lies in `S ∪ {p}`. Differentials are evaluated in the global coordinates
//! `g_i = x_i - x_n` (so `g_n = 0`), where the whole Koszul complex is spanned by
//! `x_ℓ ⊗ g_J`; ranks of image vectors there equal ranks inside the subcomplex.

use crate::complex::{binomial, MonomialTable};
use crate::elemset::ElemSet;
use crate::error::Result;
use crate::fan::BergmanFan;
use crate::koszul::{self, RingChoice};
use crate::linalg::{self, SparseVec};
use crate::matroid::Matroid;
use crate::poly::BigradedSeries;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

/// A monomial `x_S` or `x_S · x_j` (with `j ∈ S`), tensored with `g_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct AmbientKey {
    support: ElemSet,
    squared: u8,
    wedge: u32,
}

/// Elements of `Λ V` in the `g` basis: bit `i - 1` of a mask stands for `g_i`.
type Wedge = Vec<(u32, i64)>;

/// `ω ∧ (g_a - g_b)`, dropping `g_n`.
fn wedge_with_difference(w: &Wedge, a: usize, b: usize, n: usize) -> Wedge {
    let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
    for (j, c) in [(a, 1i64), (b, -1i64)] {
        if j == n {
            continue;
        }
        let bit = 1u32 << (j - 1);
        for &(mask, x) in w {
            if mask & bit != 0 {
                continue;
            }
            // moving g_j from the end past the larger indices
            let sign = if (mask & !(bit | (bit - 1))).count_ones() % 2 == 0 { 1 } else { -1 };
            *acc.entry(mask | bit).or_insert(0) += sign * c * x;
        }
    }
    let mut out: Wedge = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

/// The square-free basis in bidegree `(t, s)`: pairs `(S, T)` with `ξ` built on `T`.
fn basis(m: &Matroid, t: usize, s: usize) -> Vec<(ElemSet, ElemSet)> {
    let n = m.n();
    let r = m.rank_total();
    let mut out = Vec::new();
    for set in m.ground().subsets_of_size(s) {
        if m.rank(set) == r {
            continue;
        }
        let rest = m.ground() - set;
        let p = rest.max().expect("non-spanning sets miss an element");
        for tt in rest.without(p).subsets_of_size(t) {
            out.push((set, tt));
        }
    }
    debug_assert!(out.iter().all(|(set, _)| set.len() == s && set.len() < n));
    out
}

/// `d(x_S ⊗ ξ)` in ambient coordinates.
fn differential(m: &Matroid, set: ElemSet, xi: &Wedge) -> Vec<(AmbientKey, i64)> {
    let n = m.n();
    let r = m.rank_total();
    let mut acc: FxHashMap<AmbientKey, i64> = FxHashMap::default();
    let mut times = |j: usize, wedge: u32, c: i64| {
        let key = if set.contains(j) {
            AmbientKey {
                support: set,
                squared: j as u8,
                wedge,
            }
        } else {
            let bigger = set.with(j);
            if m.rank(bigger) == r {
                return;
            }
            AmbientKey {
                support: bigger,
                squared: 0,
                wedge,
            }
        };
        *acc.entry(key).or_insert(0) += c;
    };
    for &(mask, c) in xi {
        let mut k = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            let sign = if k % 2 == 0 { c } else { -c };
            let rest = mask & !(1 << (i - 1));
            // θ(g_i) = x_i - x_n
            times(i, rest, sign);
            times(n, rest, -sign);
            k += 1;
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

fn xi_of(tt: ElemSet, p: usize, n: usize) -> Wedge {
    tt.iter()
        .fold(vec![(0u32, 1i64)], |w, i| wedge_with_difference(&w, i, p, n))
}

/// Rank of `d` on the square-free elements of bidegree `(t, s)`.
fn piece_rank(m: &Matroid, t: usize, s: usize) -> usize {
    if t == 0 {
        return 0;
    }
    let n = m.n();
    let images: Vec<Vec<(AmbientKey, i64)>> = basis(m, t, s)
        .into_par_iter()
        .map(|(set, tt)| {
            let p = (m.ground() - set).max().unwrap();
            differential(m, set, &xi_of(tt, p, n))
        })
        .collect();
    let mut keys: Vec<AmbientKey> = images.iter().flatten().map(|&(k, _)| k).collect();
    keys.sort_unstable();
    keys.dedup();
    let index: FxHashMap<AmbientKey, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let rows: Vec<SparseVec> = images
        .into_iter()
        .map(|img| {
            let mut row: SparseVec = img.into_iter().map(|(k, c)| (index[&k], c)).collect();
            row.sort_unstable();
            row
        })
        .collect();
    linalg::rank(rows)
}

/// Dimension of the square-free subcomplex in bidegree `(t, s)`.
pub fn squarefree_dim(m: &Matroid, t: usize, s: usize) -> usize {
    basis(m, t, s).len()
}

/// Tor of `ℂ[Σ_{M,∅}]` over `S°_M` from the finite square-free subcomplex.
pub fn squarefree_tor_table(m: &Matroid) -> Result<BigradedSeries> {
    m.require_loopless()?;
    let n = m.n();
    let s_top = (0..=n)
        .rev()
        .find(|&s| m.ground().subsets_of_size(s).iter().any(|&a| m.rank(a) < m.rank_total()))
        .unwrap_or(0);
    let spots: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..=s_top).map(move |s| (t, s))).collect();
    let ranks: FxHashMap<(usize, usize), usize> = spots
        .par_iter()
        .map(|&(t, s)| ((t, s), piece_rank(m, t, s)))
        .collect();
    let mut out = BigradedSeries::zero();
    for &(t, s) in &spots {
        let incoming = if s >= 1 {
            ranks.get(&(t + 1, s - 1)).copied().unwrap_or(0)
        } else {
            0
        };
        let dim = squarefree_dim(m, t, s) - ranks[&(t, s)] - incoming;
        out.add_term(t, s, dim as i64);
    }
    Ok(out)
}

/// The cycle `η_B = x_{B \ i} ⊗ (x_i - x_j)` attached to a basis `B ≠ B_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tor1Cycle {
    pub basis: ElemSet,
    /// `max EP(B)`
    pub j: usize,
    /// `min C_{B ∪ j}`
    pub i: usize,
}

impl Tor1Cycle {
    pub fn monomial(&self) -> ElemSet {
        self.basis.without(self.i)
    }
}

pub fn tor1_cycles(m: &Matroid) -> Result<Vec<Tor1Cycle>> {
    m.require_loopless()?;
    let bmax = m.lex_max_basis();
    m.bases_lex()
        .into_iter()
        .filter(|&b| b != bmax)
        .map(|b| {
            let j = m.externally_passive_set(b)?.max().expect("ep(B) > 0 for B ≠ B_max");
            let i = m.fundamental_circuit(b, j)?.min().unwrap();
            Ok(Tor1Cycle { basis: b, j, i })
        })
        .collect()
}

/// Outcome of checking [`tor1_cycles`] inside the Koszul complex of `ℂ[Σ_{M,∅}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tor1Check {
    pub count: usize,
    pub cocycles: bool,
    /// Rank of the classes modulo boundaries.
    pub independent_classes: usize,
    /// `Σ_s dim Tor_1(·)_s` from the Koszul ranks.
    pub h1_dim: u64,
}

impl Tor1Check {
    pub fn passed(&self) -> bool {
        self.cocycles && self.independent_classes == self.count && self.h1_dim == self.count as u64
    }
}

pub fn check_tor1_cycles(m: &Matroid) -> Result<Tor1Check> {
    let cycles = tor1_cycles(m)?;
    let fan = BergmanFan::empty(m)?;
    let forms = koszul::structure_forms(&fan, RingChoice::OverSMcirc);
    let nf = forms.len();
    let r = m.rank_total();
    let table = MonomialTable::new(fan.complex(), r - 1);
    // rays of the empty fan are x_1, ..., x_n in order; form k is g_{k+1}
    let vectors: Vec<SparseVec> = cycles
        .iter()
        .map(|c| {
            let mono: Vec<u16> = c.monomial().iter().map(|e| e as u16 - 1).collect();
            let row = table.index_of(r - 1, &mono).expect("B \\ i is independent") as u32 * nf as u32;
            let mut v: SparseVec = vec![(row + c.i as u32 - 1, 1)];
            if c.j < m.n() {
                v.push((row + c.j as u32 - 1, -1));
            }
            v.sort_unstable();
            v
        })
        .collect();
    let d1 = koszul::koszul_matrix(fan.complex(), &forms, 1, r - 1);
    let cocycles = vectors.iter().all(|v| {
        let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
        for &(c, x) in v {
            for &(c2, y) in &d1.rows[c as usize] {
                *acc.entry(c2).or_insert(0) += x * y;
            }
        }
        acc.values().all(|&x| x == 0)
    });
    let boundaries = if r >= 2 && nf >= 2 {
        koszul::koszul_matrix(fan.complex(), &forms, 2, r - 2).rows
    } else {
        Vec::new()
    };
    let base = linalg::rank(boundaries.clone());
    let mut all = boundaries;
    all.extend(vectors);
    let independent_classes = linalg::rank(all) - base;
    let (_, s_max) = koszul::default_window(&fan, RingChoice::OverSMcirc);
    let tor = koszul::tor_table(&fan, RingChoice::OverSMcirc, nf.min(1), s_max)?;
    let h1_dim = (0..=s_max).map(|s| tor.coeff(1, s) as u64).sum();
    Ok(Tor1Check {
        count: cycles.len(),
        cocycles,
        independent_classes,
        h1_dim,
    })
}

/// `Σ_{|S| = s, S non-spanning} C(n - 1 - s, t)`, the closed count of square-free elements.
pub fn squarefree_dim_formula(m: &Matroid, t: usize, s: usize) -> u64 {
    if s + 1 > m.n() {
        return 0;
    }
    let r = m.rank_total();
    let count = m
        .ground()
        .subsets_of_size(s)
        .into_iter()
        .filter(|&a| m.rank(a) < r)
        .count() as u64;
    count * binomial(m.n() - 1 - s, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    fn s(v: &[usize]) -> ElemSet {
        ElemSet::from_elems(v.iter().copied())
    }

    #[test]
    fn wedge_expansion() {
        // (g_1 - g_3) ∧ (g_2 - g_3) = g_12 - g_13 + g_23
        let w = xi_of(s(&[1, 2]), 3, 4);
        assert_eq!(w, vec![(0b011, 1), (0b101, -1), (0b110, 1)]);
        assert_eq!(xi_of(s(&[1, 2]), 4, 4), vec![(0b011, 1)]);
    }

    #[test]
    fn small_tables() {
        assert_eq!(squarefree_tor_table(&u(2, 3)).unwrap().to_string(), "1 + y + 2*x*y");
        assert_eq!(
            squarefree_tor_table(&u(3, 5)).unwrap().to_string(),
            "1 + y + y^2 + 9*x*y^2 + 6*x^2*y^2"
        );
        assert_eq!(
            squarefree_tor_table(&u(1, 4)).unwrap(),
            BigradedSeries::one_plus_x_pow(3)
        );
    }

    #[test]
    fn dimension_count() {
        let m = u(3, 5);
        for t in 0..5 {
            for sz in 0..4 {
                assert_eq!(squarefree_dim(&m, t, sz) as u64, squarefree_dim_formula(&m, t, sz));
            }
        }
    }

    #[test]
    fn cycles_of_u23() {
        let c = tor1_cycles(&u(2, 3)).unwrap();
        assert_eq!(
            c,
            vec![
                Tor1Cycle { basis: s(&[1, 2]), j: 3, i: 1 },
                Tor1Cycle { basis: s(&[1, 3]), j: 2, i: 1 },
            ]
        );
        assert_eq!(c[0].monomial(), s(&[2]));
        for (r, n) in [(2, 3), (3, 5), (1, 3), (3, 3), (2, 4)] {
            let check = check_tor1_cycles(&u(r, n)).unwrap();
            assert!(check.passed(), "{r} {n}: {check:?}");
            assert_eq!(check.count, binomial(n, r) as usize - 1);
        }
    }
}
