//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are sorted lists of `(column, value)` with integer values; all
//! elimination is fraction-free. Arithmetic runs on checked `i64` first and is
//! repeated on `BigInt` when an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type SparseVec = Vec<(u32, i64)>;
pub type BigSparseVec = Vec<(u32, BigInt)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Integer types usable for fraction-free elimination.
pub trait ExactInt: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Result<Self, Overflow>;
    fn sub(&self, other: &Self) -> Result<Self, Overflow>;
    /// Nonnegative gcd.
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        // Keep clear of i64::MIN so negation and gcd stay total.
        match self.checked_mul(*other) {
            Some(v) if v != i64::MIN => Ok(v),
            _ => Err(Overflow),
        }
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        match self.checked_sub(*other) {
            Some(v) if v != i64::MIN => Ok(v),
            _ => Err(Overflow),
        }
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn sub(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

pub fn to_big(v: &SparseVec) -> BigSparseVec {
    v.iter().map(|&(c, x)| (c, BigInt::from(x))).collect()
}

/// Converts to machine integers if every entry fits.
pub fn to_small(v: &BigSparseVec) -> Option<SparseVec> {
    v.iter()
        .map(|(c, x)| x.to_i64().filter(|&y| y != i64::MIN).map(|y| (*c, y)))
        .collect()
}

/// `a*x - b*y` merged over columns, zeros dropped.
fn combine<T: ExactInt>(a: &T, x: &[(u32, T)], b: &T, y: &[(u32, T)]) -> Result<Vec<(u32, T)>, Overflow> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.mul(&x[i].1)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b.mul(&y[j].1)?.neg()));
            j += 1;
        } else {
            let v = a.mul(&x[i].1)?.sub(&b.mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Divides out the content and makes the entry at `sign_col` positive when given.
fn normalize<T: ExactInt>(v: &mut [(u32, T)], sign_col: Option<u32>) {
    if v.is_empty() {
        return;
    }
    let mut g = T::zero();
    for (_, x) in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    let flip = match sign_col {
        Some(c) => v
            .iter()
            .find(|(col, _)| *col == c)
            .is_some_and(|(_, x)| x.is_negative()),
        None => false,
    };
    if !g.is_one() || flip {
        let g = if flip { g.neg() } else { g };
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Eliminates column `col` of `x` using `p` (which has a nonzero entry there).
fn eliminate<T: ExactInt>(x: &[(u32, T)], p: &[(u32, T)], col: u32) -> Result<Vec<(u32, T)>, Overflow> {
    let xc = &x[x.binary_search_by_key(&col, |e| e.0).expect("column present")].1;
    let pc = &p[p.binary_search_by_key(&col, |e| e.0).expect("pivot present")].1;
    let g = xc.gcd(pc);
    let a = pc.div_exact(&g);
    let b = xc.div_exact(&g);
    let mut out = combine(&a, x, &b, p)?;
    normalize(&mut out, None);
    Ok(out)
}

fn rank_generic<T: ExactInt>(mut rows: Vec<Vec<(u32, T)>>, ncols: usize) -> Result<usize, Overflow> {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| (r[0].0, r.len()));
    let mut pivot: Vec<Option<u32>> = vec![None; ncols];
    let mut store: Vec<Vec<(u32, T)>> = Vec::new();
    for mut row in rows {
        normalize(&mut row, None);
        while let Some(&(lead, _)) = row.first() {
            match pivot[lead as usize] {
                Some(k) => row = eliminate(&row, &store[k as usize], lead)?,
                None => {
                    pivot[lead as usize] = Some(store.len() as u32);
                    store.push(row);
                    break;
                }
            }
        }
    }
    Ok(store.len())
}

fn column_bound<T>(rows: &[Vec<(u32, T)>]) -> usize {
    rows.iter()
        .filter_map(|r| r.last().map(|e| e.0 as usize + 1))
        .max()
        .unwrap_or(0)
}

/// Rank over the rationals of the matrix whose rows are `rows`.
pub fn rank(rows: Vec<SparseVec>) -> usize {
    let ncols = column_bound(&rows);
    let backup: Vec<BigSparseVec> = rows.iter().map(to_big).collect();
    match rank_generic(rows, ncols) {
        Ok(r) => r,
        Err(Overflow) => rank_generic(backup, ncols).expect("big integers do not overflow"),
    }
}

/// Rank of a matrix given with arbitrary-precision entries.
pub fn rank_big(rows: Vec<BigSparseVec>) -> usize {
    let small: Option<Vec<SparseVec>> = rows.iter().map(to_small).collect();
    match small {
        Some(s) => rank(s),
        None => {
            let ncols = column_bound(&rows);
            rank_generic(rows, ncols).expect("big integers do not overflow")
        }
    }
}

/// Rank of a small dense integer matrix.
pub fn rank_dense(rows: &[Vec<i64>]) -> usize {
    rank(
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, &v)| (c as u32, v))
                    .collect()
            })
            .collect(),
    )
}

/// A row of a reduced echelon form: `coef * e_pivot + tail`.
#[derive(Clone, Debug)]
pub struct ReducedRow {
    pub pivot: u32,
    pub coef: BigInt,
    /// Entries on non-pivot columns only, all smaller than `pivot`.
    pub tail: BigSparseVec,
}

/// Fully inter-reduced echelon basis of a subspace `U ⊆ ℚ^ncols`.
///
/// Each pivot is the largest column of its row, and no row has a nonzero entry
/// on another row's pivot, so normal forms modulo `U` are read off directly.
#[derive(Clone, Debug)]
pub struct ReducedEchelon {
    ncols: usize,
    rows: Vec<ReducedRow>,
    row_of: Vec<Option<u32>>,
}

struct Builder<T> {
    rows: Vec<Vec<(u32, T)>>,
    pivots: Vec<u32>,
    row_of: Vec<Option<u32>>,
    occurs: Vec<Vec<u32>>,
}

impl<T: ExactInt> Builder<T> {
    fn new(ncols: usize) -> Self {
        Builder {
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of: vec![None; ncols],
            occurs: vec![Vec::new(); ncols],
        }
    }

    fn insert(&mut self, mut g: Vec<(u32, T)>) -> Result<bool, Overflow> {
        // Rows are fully reduced, so one pass over the pivot entries of `g` suffices.
        let hits: Vec<u32> = g
            .iter()
            .filter(|(c, _)| self.row_of[*c as usize].is_some())
            .map(|(c, _)| *c)
            .collect();
        for c in hits {
            if g.binary_search_by_key(&c, |e| e.0).is_ok() {
                let k = self.row_of[c as usize].unwrap() as usize;
                g = eliminate(&g, &self.rows[k], c)?;
            }
        }
        let Some(&(lead, _)) = g.last() else {
            return Ok(false);
        };
        normalize(&mut g, Some(lead));
        let k = self.rows.len() as u32;
        for &(c, _) in &g[..g.len() - 1] {
            self.occurs[c as usize].push(k);
        }
        let users = std::mem::take(&mut self.occurs[lead as usize]);
        for u in users {
            let row = &self.rows[u as usize];
            if row.binary_search_by_key(&lead, |e| e.0).is_err() {
                continue;
            }
            let updated = eliminate(row, &g, lead)?;
            let pivot = self.pivots[u as usize];
            let mut updated = updated;
            normalize(&mut updated, Some(pivot));
            for &(c, _) in &updated {
                if c != pivot && self.rows[u as usize].binary_search_by_key(&c, |e| e.0).is_err() {
                    self.occurs[c as usize].push(u);
                }
            }
            self.rows[u as usize] = updated;
        }
        self.row_of[lead as usize] = Some(k);
        self.pivots.push(lead);
        self.rows.push(g);
        Ok(true)
    }
}

trait IntoBig {
    fn into_big(self) -> BigInt;
}

impl IntoBig for i64 {
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl IntoBig for BigInt {
    fn into_big(self) -> BigInt {
        self
    }
}

fn finish<T: ExactInt + IntoBig>(b: Builder<T>, ncols: usize) -> ReducedEchelon {
    let rows = b
        .rows
        .into_iter()
        .zip(b.pivots)
        .map(|(mut r, p)| {
            let (pc, coef) = r.pop().expect("nonzero row");
            debug_assert_eq!(pc, p);
            ReducedRow {
                pivot: p,
                coef: coef.into_big(),
                tail: r.into_iter().map(|(c, v)| (c, v.into_big())).collect(),
            }
        })
        .collect();
    ReducedEchelon {
        ncols,
        rows,
        row_of: b.row_of,
    }
}

impl ReducedEchelon {
    /// Echelon basis of the span of `generators`.
    pub fn build(ncols: usize, generators: &[SparseVec]) -> Self {
        let mut b = Builder::<i64>::new(ncols);
        let ok = generators
            .iter()
            .try_for_each(|g| b.insert(g.clone()).map(|_| ()));
        if ok.is_ok() {
            return finish(b, ncols);
        }
        let mut b = Builder::<BigInt>::new(ncols);
        for g in generators {
            b.insert(to_big(g)).expect("big integers do not overflow");
        }
        finish(b, ncols)
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.row_of[col as usize].is_some()
    }

    /// Columns without a pivot, increasing; they index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<u32> {
        (0..self.ncols as u32).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Row with the given pivot column.
    pub fn row(&self, pivot: u32) -> Option<&ReducedRow> {
        self.row_of[pivot as usize].map(|k| &self.rows[k as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_dense(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_dense(&[vec![1, 2], vec![2, 5]]), 2);
        assert_eq!(rank_dense(&[vec![0, 0]]), 0);
        assert_eq!(rank(vec![]), 0);
        assert_eq!(
            rank_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]),
            2
        );
        assert_eq!(
            rank_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]),
            3
        );
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 3_000_000_019i64;
        let rows = vec![
            vec![(0, big), (1, 1), (2, 7)],
            vec![(0, 1), (1, big), (2, 5)],
            vec![(0, 7), (1, 5), (2, big)],
        ];
        assert_eq!(rank(rows), 3);
        let rows = vec![
            vec![(0, big), (1, big - 1)],
            vec![(0, big - 1), (1, big - 2)],
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn reduced_echelon_normal_forms() {
        // Span of (1,1,0) and (0,1,1) inside Q^3.
        let e = ReducedEchelon::build(3, &[vec![(0, 1), (1, 1)], vec![(1, 1), (2, 1)]]);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns(), vec![0]);
        for p in [1u32, 2] {
            let row = e.row(p).unwrap();
            assert!(row.tail.iter().all(|(c, _)| !e.is_pivot(*c) && *c < p));
        }
        // e_2 ≡ e_0 and e_1 ≡ -e_0 modulo the span.
        let r2 = e.row(2).unwrap();
        assert_eq!(r2.tail, vec![(0, BigInt::from(-1))]);
        let r1 = e.row(1).unwrap();
        assert_eq!(r1.tail, vec![(0, BigInt::from(1))]);
    }

    #[test]
    fn reduced_echelon_dependent_generators() {
        let gens = vec![
            vec![(0, 2), (3, 4)],
            vec![(1, 1), (3, 1)],
            vec![(0, 1), (3, 2)],
            vec![(0, 1), (1, 1), (3, 3)],
        ];
        let e = ReducedEchelon::build(4, &gens);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.rank(), rank(gens));
    }
}
