//! Bigraded Koszul complexes `ℂ[Σ] ⊗ Λ•V` and their homology.
//!
//! `K_{t,s} = ℂ[Σ]_s ⊗ Λ^t V` with differential
//! `d(m ⊗ e_{j_1} ∧ … ∧ e_{j_t}) = Σ_k (-1)^{k-1} θ_{j_k} m ⊗ (e_{j_1} ∧ … ∧ ê_{j_k} ∧ … ∧ e_{j_t})`
//! of bidegree `(-1, +1)`. Its homology at `(t, s)` is `Tor_t(ℂ[Σ], ℂ)_s`.

use crate::complex::{binomial, FaceComplex, MonomialTable};
use crate::error::{Error, Result};
use crate::fan::{BergmanFan, Ray};
use crate::linalg::{self, BigSparseVec, ReducedEchelon, SparseVec};
use crate::poly::BigradedSeries;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Which polynomial ring acts on `ℂ[Σ_{M,P}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingChoice {
    /// `S_M = ℂ[x_1, …, x_n]`.
    OverSM,
    /// `S°_M = ℂ[x_1 - x_n, …, x_{n-1} - x_n]`.
    OverSMcirc,
}

/// Images of the ring variables in degree one, as vectors over ray indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormSet {
    pub ring: RingChoice,
    pub forms: Vec<SparseVec>,
}

impl LinearFormSet {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

fn add_into(v: &mut FxHashMap<u32, i64>, col: u32, c: i64) {
    let e = v.entry(col).or_insert(0);
    *e += c;
}

fn into_sorted(v: FxHashMap<u32, i64>) -> SparseVec {
    let mut out: SparseVec = v.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort_unstable();
    out
}

/// `θ(x_i) = δ_i x_i + Σ_{F ∈ P, i ∈ F} x_F`, or the differences `θ(x_i) - θ(x_n)`.
pub fn structure_forms(fan: &BergmanFan, ring: RingChoice) -> LinearFormSet {
    let n = fan.matroid().n();
    let theta: Vec<FxHashMap<u32, i64>> = (1..=n)
        .map(|i| {
            let mut v = FxHashMap::default();
            for (k, r) in fan.rays().iter().enumerate() {
                let hit = match *r {
                    Ray::Elem(j) => j == i,
                    Ray::Flat(f) => f.contains(i),
                };
                if hit {
                    add_into(&mut v, k as u32, 1);
                }
            }
            v
        })
        .collect();
    let forms = match ring {
        RingChoice::OverSM => theta.into_iter().map(into_sorted).collect(),
        RingChoice::OverSMcirc => (0..n - 1)
            .map(|i| {
                let mut v = theta[i].clone();
                for (&c, &x) in &theta[n - 1] {
                    add_into(&mut v, c, -x);
                }
                into_sorted(v)
            })
            .collect(),
    };
    LinearFormSet { ring, forms }
}

/// Index of a `t`-subset (bit mask over form indices) in colex order.
fn colex_rank(mask: u64) -> usize {
    let mut r = 0;
    let mut k = 0;
    let mut m = mask;
    while m != 0 {
        let j = m.trailing_zeros() as usize;
        k += 1;
        r += binomial(j, k) as usize;
        m &= m - 1;
    }
    r
}

/// All `t`-subsets of `0..m` as bit masks, in colex order.
pub fn wedge_basis(m: usize, t: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if t > m {
        return out;
    }
    if t == 0 {
        out.push(0);
        return out;
    }
    let limit: u64 = 1 << m;
    let mut c: u64 = (1 << t) - 1;
    while c < limit {
        out.push(c);
        let u = c & c.wrapping_neg();
        let v = c + u;
        c = v + (((v ^ c) / u) >> 2);
    }
    out
}

/// A matrix of the Koszul differential `K_{t,s} → K_{t-1,s+1}`.
///
/// Row `i * C(m,t) + w` is the image of the `i`-th degree-`s` monomial tensored
/// with the `w`-th wedge in colex order; columns are indexed the same way in
/// the target.
#[derive(Clone, Debug)]
pub struct KoszulPiece {
    pub t: usize,
    pub s: usize,
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl KoszulPiece {
    pub fn rank(&self) -> usize {
        linalg::rank(self.rows.clone())
    }

    /// Whether `next ∘ self` vanishes, for `next` the piece starting at `(t-1, s+1)`.
    pub fn composes_to_zero(&self, next: &KoszulPiece) -> bool {
        self.rows.iter().all(|row| {
            let mut acc: FxHashMap<u32, i64> = FxHashMap::default();
            for &(c, x) in row {
                for &(c2, y) in &next.rows[c as usize] {
                    add_into(&mut acc, c2, x * y);
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Monomial tables and the multiplication action of each form.
struct Action {
    table: MonomialTable,
    /// `mult[j][s][i]`: `θ_j` times the `i`-th monomial of degree `s`, over degree `s+1`.
    mult: Vec<Vec<Vec<SparseVec>>>,
}

impl Action {
    fn new(complex: &FaceComplex, forms: &LinearFormSet, max_source_degree: usize) -> Self {
        let table = MonomialTable::new(complex, max_source_degree + 1);
        let mult = forms
            .forms
            .iter()
            .map(|form| {
                (0..=max_source_degree)
                    .map(|s| {
                        (0..table.dim(s) as u32)
                            .into_par_iter()
                            .map(|i| {
                                let mut row: SparseVec = form
                                    .iter()
                                    .filter_map(|&(v, c)| table.times(s, i, v as u16).map(|p| (p, c)))
                                    .collect();
                                row.sort_unstable();
                                row
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Action { table, mult }
    }

    fn piece(&self, m: usize, t: usize, s: usize) -> KoszulPiece {
        let src = wedge_basis(m, t);
        let wt = src.len();
        let wt1 = binomial(m, t.saturating_sub(1)) as usize;
        let dim_s = self.table.dim(s);
        let rows: Vec<SparseVec> = (0..dim_s * wt)
            .into_par_iter()
            .map(|r| {
                if t == 0 {
                    return Vec::new();
                }
                let (i, w) = (r / wt, r % wt);
                let mask = src[w];
                let mut row = SparseVec::new();
                let mut k = 0;
                let mut bits = mask;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let target_w = colex_rank(mask & !(1 << j));
                    for &(col, c) in &self.mult[j][s][i] {
                        row.push((col * wt1 as u32 + target_w as u32, sign * c));
                    }
                    k += 1;
                }
                row.sort_unstable();
                row
            })
            .collect();
        KoszulPiece {
            t,
            s,
            nrows: dim_s * wt,
            ncols: if t == 0 { 0 } else { self.table.dim(s + 1) * wt1 },
            rows,
        }
    }
}

pub fn koszul_matrix(complex: &FaceComplex, forms: &LinearFormSet, t: usize, s: usize) -> KoszulPiece {
    Action::new(complex, forms, s).piece(forms.len(), t, s)
}

pub fn tor_dimension(complex: &FaceComplex, forms: &LinearFormSet, t: usize, s: usize) -> u64 {
    let m = forms.len();
    if t > m {
        return 0;
    }
    let act = Action::new(complex, forms, s);
    let dim = act.table.dim(s) as u64 * binomial(m, t);
    let r1 = if t >= 1 { act.piece(m, t, s).rank() } else { 0 };
    let r2 = if s >= 1 && t < m { act.piece(m, t + 1, s - 1).rank() } else { 0 };
    dim - r1 as u64 - r2 as u64
}

/// How to evaluate a Tor table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Ranks of the Koszul complex of `ℂ[Σ]` itself.
    Direct,
    /// Reduce by a verified regular sequence of linear forms first, falling back to
    /// `Direct` when no regular sequence is certified.
    Auto,
}

/// Tor table over the forms of `forms`, for `t ≤ t_max`, `s ≤ s_max`.
pub fn tor_table_with(
    complex: &FaceComplex,
    forms: &LinearFormSet,
    t_max: usize,
    s_max: usize,
    strategy: Strategy,
) -> BigradedSeries {
    if strategy == Strategy::Auto {
        if let Some(red) = Reduction::find(complex, forms) {
            return red.tor_table(t_max, s_max);
        }
    }
    direct_table(complex, forms, t_max, s_max)
}

fn direct_table(complex: &FaceComplex, forms: &LinearFormSet, t_max: usize, s_max: usize) -> BigradedSeries {
    let m = forms.len();
    let t_max = t_max.min(m);
    let act = Action::new(complex, forms, s_max);
    let mut needed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in 0..=t_max {
        for s in 0..=s_max {
            if t >= 1 {
                needed.insert((t, s));
            }
            if s >= 1 && t < m {
                needed.insert((t + 1, s - 1));
            }
        }
    }
    let ranks: FxHashMap<(usize, usize), usize> = needed
        .into_par_iter()
        .map(|(t, s)| ((t, s), act.piece(m, t, s).rank()))
        .collect();
    let mut out = BigradedSeries::zero();
    for t in 0..=t_max {
        for s in 0..=s_max {
            let dim = act.table.dim(s) as i64 * binomial(m, t) as i64;
            let r1 = ranks.get(&(t, s)).copied().unwrap_or(0) as i64;
            let r2 = if s >= 1 {
                ranks.get(&(t + 1, s - 1)).copied().unwrap_or(0) as i64
            } else {
                0
            };
            out.add_term(t, s, dim - r1 - r2);
        }
    }
    out
}

/// `ℂ[Σ]` modulo a certified regular sequence `ℓ_1, …, ℓ_d` of linear forms,
/// together with the action of complementary forms.
struct Reduction {
    /// `B_s` basis as column indices into the degree-`s` monomials of `ℂ[Σ]`.
    basis: Vec<Vec<u32>>,
    /// `action[s][b][q]`: complementary form `q` times basis element `b` of `B_s`,
    /// over `B_{s+1}`, scaled by a factor depending only on `(s, b)`.
    action: Vec<Vec<Vec<BigSparseVec>>>,
    complement: usize,
}

/// Coefficient matrices (rows over form indices) to try as regular sequences.
fn candidate_sequences(m: usize, d: usize) -> Vec<Vec<Vec<i64>>> {
    let unit = |j: usize| -> Vec<i64> { (0..m).map(|k| i64::from(k == j)).collect() };
    let mut out = vec![(0..d).map(unit).collect::<Vec<_>>()];
    if m > d {
        out.push((m - d..m).map(unit).collect());
    }
    // Points on the moment curve: Vandermonde minors make these generic.
    for shift in 0..2u32 {
        out.push(
            (0..d as u32)
                .map(|k| (1..=m as i64).map(|j| j.pow(k + shift)).collect())
                .collect(),
        );
    }
    for seed in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
        out.push(
            (0..d)
                .map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect())
                .collect(),
        );
    }
    out
}

impl Reduction {
    fn find(complex: &FaceComplex, forms: &LinearFormSet) -> Option<Reduction> {
        let d = complex.max_face_size();
        let m = forms.len();
        if d > m || m > 63 {
            return None;
        }
        let h = complex.h_vector();
        if h.iter().any(|&x| x < 0) {
            return None;
        }
        let table = MonomialTable::new(complex, d);
        let facets = complex.facets();
        let nv = complex.num_vertices();
        candidate_sequences(m, d)
            .into_iter()
            .find_map(|coeffs| Self::attempt(complex, forms, &table, &facets, &h, nv, coeffs))
    }

    fn attempt(
        _complex: &FaceComplex,
        forms: &LinearFormSet,
        table: &MonomialTable,
        facets: &[Vec<u16>],
        h: &[i64],
        nv: usize,
        coeffs: Vec<Vec<i64>>,
    ) -> Option<Reduction> {
        let d = coeffs.len();
        let m = forms.len();
        if linalg::rank_dense(&coeffs) != d {
            return None;
        }
        // ℓ_i over rays.
        let mut ell = vec![vec![0i64; nv]; d];
        for (i, row) in coeffs.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    for &(v, x) in &forms.forms[j] {
                        ell[i][v as usize] += c * x;
                    }
                }
            }
        }
        // Linear system of parameters: restricted to every facet the forms have full rank.
        let lsop = facets.iter().all(|f| {
            let cols: Vec<Vec<i64>> = f.iter().map(|&v| (0..d).map(|i| ell[i][v as usize]).collect()).collect();
            linalg::rank_dense(&cols) == f.len()
        });
        if !lsop {
            return None;
        }
        let ell_sparse: Vec<SparseVec> = ell
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(v, &c)| (v as u32, c))
                    .collect()
            })
            .collect();
        // U_s = ℓ · A_{s-1}; the quotient must have Hilbert function h.
        let mut echelons: Vec<Option<ReducedEchelon>> = vec![None];
        for s in 1..=d {
            let gens: Vec<SparseVec> = (0..table.dim(s - 1) as u32)
                .into_par_iter()
                .flat_map_iter(|i| {
                    ell_sparse.iter().map(move |l| {
                        let mut row: SparseVec = l
                            .iter()
                            .filter_map(|&(v, c)| table.times(s - 1, i, v as u16).map(|p| (p, c)))
                            .collect();
                        row.sort_unstable();
                        row
                    })
                })
                .filter(|r| !r.is_empty())
                .collect();
            let e = ReducedEchelon::build(table.dim(s), &gens);
            if (table.dim(s) - e.rank()) as i64 != h[s] {
                return None;
            }
            echelons.push(Some(e));
        }
        // Complete the ℓ's to a basis of the form space with unit vectors.
        let mut basis_rows = coeffs.clone();
        let mut complement = Vec::new();
        for j in 0..m {
            let mut trial = basis_rows.clone();
            trial.push((0..m).map(|k| i64::from(k == j)).collect());
            if linalg::rank_dense(&trial) == trial.len() {
                basis_rows = trial;
                complement.push(j);
            }
        }
        let mut basis: Vec<Vec<u32>> = vec![vec![0]];
        for e in echelons.iter().skip(1) {
            basis.push(e.as_ref().unwrap().free_columns());
        }
        let position: Vec<FxHashMap<u32, u32>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, &c)| (c, k as u32)).collect())
            .collect();
        let action: Vec<Vec<Vec<BigSparseVec>>> = (0..d)
            .map(|s| {
                let e = echelons[s + 1].as_ref().unwrap();
                basis[s]
                    .par_iter()
                    .map(|&col| {
                        let products: Vec<Vec<(u32, i64)>> = complement
                            .iter()
                            .map(|&j| {
                                forms.forms[j]
                                    .iter()
                                    .filter_map(|&(v, c)| table.times(s, col, v as u16).map(|p| (p, c)))
                                    .collect()
                            })
                            .collect();
                        let mut denom = BigInt::one();
                        for prod in &products {
                            for &(p, _) in prod {
                                if let Some(row) = e.row(p) {
                                    denom = denom.lcm(&row.coef);
                                }
                            }
                        }
                        products
                            .iter()
                            .map(|prod| {
                                let mut acc: FxHashMap<u32, BigInt> = FxHashMap::default();
                                for &(p, c) in prod {
                                    match e.row(p) {
                                        None => {
                                            *acc.entry(position[s + 1][&p]).or_insert_with(BigInt::zero) +=
                                                &denom * c;
                                        }
                                        Some(row) => {
                                            let scale = (&denom / &row.coef) * c;
                                            for (q, x) in &row.tail {
                                                *acc.entry(position[s + 1][q]).or_insert_with(BigInt::zero) -=
                                                    &scale * x;
                                            }
                                        }
                                    }
                                }
                                let mut v: BigSparseVec =
                                    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                                v.sort_by_key(|e| e.0);
                                v
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Some(Reduction {
            basis,
            action,
            complement: complement.len(),
        })
    }

    fn dim(&self, s: usize) -> usize {
        self.basis.get(s).map_or(0, |b| b.len())
    }

    fn piece_rank(&self, t: usize, s: usize) -> usize {
        let m = self.complement;
        if t == 0 || t > m || s + 1 >= self.basis.len() {
            return 0;
        }
        let src = wedge_basis(m, t);
        let wt1 = binomial(m, t - 1) as u32;
        let rows: Vec<BigSparseVec> = (0..self.dim(s))
            .flat_map(|b| src.iter().map(move |&mask| (b, mask)))
            .map(|(b, mask)| {
                let mut row = BigSparseVec::new();
                let mut bits = mask;
                let mut k = 0;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let tw = colex_rank(mask & !(1 << j)) as u32;
                    for (col, c) in &self.action[s][b][j] {
                        let v = if k % 2 == 0 { c.clone() } else { -c };
                        row.push((col * wt1 + tw, v));
                    }
                    k += 1;
                }
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        linalg::rank_big(rows)
    }

    fn tor_table(&self, t_max: usize, s_max: usize) -> BigradedSeries {
        let m = self.complement;
        let mut needed = BTreeSet::new();
        for t in 0..=t_max.min(m) {
            for s in 0..=s_max {
                if t >= 1 {
                    needed.insert((t, s));
                }
                if s >= 1 && t < m {
                    needed.insert((t + 1, s - 1));
                }
            }
        }
        let ranks: FxHashMap<(usize, usize), usize> = needed
            .into_par_iter()
            .map(|(t, s)| ((t, s), self.piece_rank(t, s)))
            .collect();
        let mut out = BigradedSeries::zero();
        for t in 0..=t_max.min(m) {
            for s in 0..=s_max {
                let dim = self.dim(s) as i64 * binomial(m, t) as i64;
                let r1 = ranks.get(&(t, s)).copied().unwrap_or(0) as i64;
                let r2 = if s >= 1 {
                    ranks.get(&(t + 1, s - 1)).copied().unwrap_or(0) as i64
                } else {
                    0
                };
                out.add_term(t, s, dim - r1 - r2);
            }
        }
        out
    }
}

/// Default window: every Tor degree and one internal degree past `r`.
pub fn default_window(fan: &BergmanFan, ring: RingChoice) -> (usize, usize) {
    let m = match ring {
        RingChoice::OverSM => fan.matroid().n(),
        RingChoice::OverSMcirc => fan.matroid().n() - 1,
    };
    (m, fan.matroid().rank_total() + 1)
}

/// Tor table of `ℂ[Σ_{M,P}]` over the chosen ring.
///
/// Over `S°_M` on `Σ_{M,∅}` or `Σ_M`, any nonzero entry with `s > r - 1` is
/// reported as [`Error::VanishingViolated`].
pub fn tor_table(fan: &BergmanFan, ring: RingChoice, t_max: usize, s_max: usize) -> Result<BigradedSeries> {
    tor_table_strategy(fan, ring, t_max, s_max, Strategy::Auto)
}

pub fn tor_table_strategy(
    fan: &BergmanFan,
    ring: RingChoice,
    t_max: usize,
    s_max: usize,
    strategy: Strategy,
) -> Result<BigradedSeries> {
    let forms = structure_forms(fan, ring);
    if t_max > forms.len() {
        return Err(Error::InvalidParams(format!(
            "t_max = {t_max} exceeds the number of forms {}",
            forms.len()
        )));
    }
    let table = tor_table_with(fan.complex(), &forms, t_max, s_max, strategy);
    if ring == RingChoice::OverSMcirc && (fan.is_empty_filter() || fan.is_full_filter()) {
        let r = fan.matroid().rank_total();
        if let Some(((t, s), v)) = table.iter().find(|((_, s), v)| *s + 1 > r && *v != 0) {
            return Err(Error::VanishingViolated { t, s, value: v as u64 });
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    #[test]
    fn colex_indexing() {
        for m in 0..7 {
            for t in 0..=m {
                let b = wedge_basis(m, t);
                assert_eq!(b.len() as u64, binomial(m, t));
                for (k, &mask) in b.iter().enumerate() {
                    assert_eq!(colex_rank(mask), k);
                }
            }
        }
    }

    #[test]
    fn forms_of_small_fans() {
        let fan = BergmanFan::empty(&u(2, 3)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSM);
        assert_eq!(f.forms, vec![vec![(0, 1)], vec![(1, 1)], vec![(2, 1)]]);
        let fan = BergmanFan::full(&u(2, 3)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSMcirc);
        assert_eq!(f.forms, vec![vec![(0, 1), (2, -1)], vec![(1, 1), (2, -1)]]);
        let fan = BergmanFan::full(&u(1, 2)).unwrap();
        assert!(fan.rays().is_empty());
        let f = structure_forms(&fan, RingChoice::OverSMcirc);
        assert_eq!(f.forms, vec![Vec::<(u32, i64)>::new()]);
    }

    #[test]
    fn first_koszul_matrix() {
        let fan = BergmanFan::empty(&u(2, 3)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSM);
        let p = koszul_matrix(fan.complex(), &f, 1, 0);
        assert_eq!((p.nrows, p.ncols), (3, 3));
        assert_eq!(p.rank(), 3);
        let p0 = koszul_matrix(fan.complex(), &f, 0, 2);
        assert!(p0.rows.iter().all(|r| r.is_empty()));
    }

    #[test]
    fn small_tor_dimensions() {
        let fan = BergmanFan::full(&u(1, 2)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSMcirc);
        assert_eq!(tor_dimension(fan.complex(), &f, 1, 0), 1);
        let fan = BergmanFan::full(&u(2, 3)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSMcirc);
        assert_eq!(tor_dimension(fan.complex(), &f, 1, 1), 2);
        let fan = BergmanFan::empty(&u(2, 3)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSM);
        assert_eq!(tor_dimension(fan.complex(), &f, 2, 1), 2);
    }

    #[test]
    fn d_squared_vanishes() {
        let fan = BergmanFan::full(&u(3, 4)).unwrap();
        let f = structure_forms(&fan, RingChoice::OverSMcirc);
        for t in 2..=3 {
            for s in 0..3 {
                let a = koszul_matrix(fan.complex(), &f, t, s);
                let b = koszul_matrix(fan.complex(), &f, t - 1, s + 1);
                assert!(a.composes_to_zero(&b), "t={t} s={s}");
            }
        }
    }

    #[test]
    fn auto_matches_direct() {
        let cases: Vec<(Matroid, bool, RingChoice)> = vec![
            (u(2, 3), false, RingChoice::OverSM),
            (u(2, 3), true, RingChoice::OverSMcirc),
            (u(3, 4), true, RingChoice::OverSMcirc),
            (u(3, 4), false, RingChoice::OverSMcirc),
            (u(3, 5), false, RingChoice::OverSM),
            (u(3, 3), true, RingChoice::OverSMcirc),
            (u(1, 3), true, RingChoice::OverSMcirc),
        ];
        for (m, full, ring) in cases {
            let fan = if full {
                BergmanFan::full(&m).unwrap()
            } else {
                BergmanFan::empty(&m).unwrap()
            };
            let f = structure_forms(&fan, ring);
            let (tm, sm) = default_window(&fan, ring);
            let a = tor_table_with(fan.complex(), &f, tm, sm, Strategy::Auto);
            let b = tor_table_with(fan.complex(), &f, tm, sm, Strategy::Direct);
            assert_eq!(a, b, "{:?} full={full} {ring:?}", m.bases());
        }
    }

    #[test]
    fn known_tables() {
        let fan = BergmanFan::full(&u(3, 5)).unwrap();
        let t = tor_table(&fan, RingChoice::OverSMcirc, 4, 4).unwrap();
        assert_eq!(
            t.to_string(),
            "1 + 11*y + y^2 + 20*x*y + 9*x*y^2 + 10*x^2*y + 6*x^2*y^2"
        );
        let fan = BergmanFan::empty(&u(3, 5)).unwrap();
        let t = tor_table(&fan, RingChoice::OverSM, 5, 4).unwrap();
        assert_eq!(t.to_string(), "1 + 10*x*y^2 + 15*x^2*y^2 + 6*x^3*y^2");
        let fan = BergmanFan::full(&u(1, 3)).unwrap();
        let t = tor_table(&fan, RingChoice::OverSMcirc, 2, 2).unwrap();
        assert_eq!(t.to_string(), "1 + 2*x + x^2");
    }

    #[test]
    fn truncated_windows_agree() {
        for (m, full) in [(u(3, 5), false), (u(3, 4), true), (u(2, 4), false)] {
            let fan = if full {
                BergmanFan::full(&m).unwrap()
            } else {
                BergmanFan::empty(&m).unwrap()
            };
            let f = structure_forms(&fan, RingChoice::OverSMcirc);
            let (tm, sm) = default_window(&fan, RingChoice::OverSMcirc);
            for strategy in [Strategy::Auto, Strategy::Direct] {
                let whole = tor_table_with(fan.complex(), &f, tm, sm, strategy);
                for t in 0..tm {
                    for s in 0..sm {
                        let part = tor_table_with(fan.complex(), &f, t, s, strategy);
                        assert_eq!(part, whole.truncate(t, s), "{strategy:?} t={t} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn window_guard() {
        let fan = BergmanFan::empty(&u(2, 3)).unwrap();
        assert!(tor_table(&fan, RingChoice::OverSMcirc, 3, 2).is_err());
    }
}
