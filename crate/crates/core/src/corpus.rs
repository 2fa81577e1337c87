//! Test matroids: uniform matroids, a rank-3 matroid on six elements and its dual,
//! and seeded random column matroids.

use crate::elemset::ElemSet;
use crate::matroid::Matroid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(skip)]
    pub matroid: Matroid,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, matroid: Matroid) -> Self {
        CorpusEntry {
            name: name.into(),
            matroid,
        }
    }
}

const SIX_BASES: [[usize; 3]; 15] = [
    [1, 2, 5],
    [1, 2, 6],
    [1, 3, 5],
    [1, 3, 6],
    [1, 4, 5],
    [1, 4, 6],
    [2, 3, 5],
    [2, 3, 6],
    [2, 4, 5],
    [2, 4, 6],
    [2, 5, 6],
    [3, 4, 5],
    [3, 4, 6],
    [3, 5, 6],
    [4, 5, 6],
];

/// The rank-3 matroid on `[6]` with 15 bases whose full Tor table over `S°` is
/// `1 + 9y + y² + 28xy + 7xy² + 24x²y + 13x²y² + 7x³y + 6x³y²`.
pub fn six_element_matroid() -> Matroid {
    Matroid::new_from_bases(6, SIX_BASES.iter().map(|b| ElemSet::from_elems(b.iter().copied())))
        .expect("valid basis family")
}

/// `U_{r,n}` for `1 ≤ r ≤ n ≤ max_n`.
pub fn uniform_matroids(max_n: usize) -> Vec<CorpusEntry> {
    (1..=max_n)
        .flat_map(|n| (1..=n).map(move |r| (r, n)))
        .map(|(r, n)| CorpusEntry::new(format!("U{r},{n}"), Matroid::uniform(r, n).unwrap()))
        .collect()
}

/// Fraction-free determinant of a small square integer matrix.
fn determinant(mut a: Vec<Vec<i64>>) -> i64 {
    let k = a.len();
    let mut sign = 1;
    let mut prev = 1;
    for i in 0..k {
        let Some(p) = (i..k).find(|&row| a[row][i] != 0) else {
            return 0;
        };
        if p != i {
            a.swap(p, i);
            sign = -sign;
        }
        for row in i + 1..k {
            for col in i + 1..k {
                a[row][col] = (a[row][col] * a[i][i] - a[row][i] * a[i][col]) / prev;
            }
            a[row][i] = 0;
        }
        prev = a[i][i];
    }
    if k == 0 {
        1
    } else {
        sign * a[k - 1][k - 1]
    }
}

/// Column matroid of an `r × n` integer matrix, or `None` if it has rank below `r`.
pub fn column_matroid(columns: &[Vec<i64>]) -> Option<Matroid> {
    let n = columns.len();
    let r = columns.first()?.len();
    let bases: Vec<ElemSet> = ElemSet::full(n)
        .subsets_of_size(r)
        .into_iter()
        .filter(|b| {
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|i| b.iter().map(|c| columns[c - 1][i]).collect())
                .collect();
            determinant(rows) != 0
        })
        .collect();
    if bases.is_empty() {
        return None;
    }
    Some(Matroid::new_from_bases(n, bases).expect("column matroids satisfy exchange"))
}

/// `count` distinct loopless, non-uniform column matroids with `3 ≤ n ≤ max_n`,
/// drawn from sparse matrices with entries in `{-2, …, 2}`.
pub fn random_matroids(count: usize, max_n: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<CorpusEntry> = Vec::new();
    while out.len() < count && max_n >= 3 {
        let n = rng.gen_range(3..=max_n);
        let r = rng.gen_range(2..n);
        let columns: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..r)
                    .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-2..=2) })
                    .collect()
            })
            .collect();
        let Some(m) = column_matroid(&columns) else {
            continue;
        };
        let uniform = m.bases().len() as u64 == crate::complex::binomial(n, r);
        if !m.is_loopless() || uniform || out.iter().any(|e| e.matroid == m) {
            continue;
        }
        out.push(CorpusEntry::new(format!("random-{}", out.len() + 1), m));
    }
    out
}

pub const RANDOM_SEED: u64 = 0x6d61_7472;

/// Uniform matroids with `n ≤ 7`, the six-element matroid and its dual, and 20 random
/// matroids with `n ≤ 6`.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = uniform_matroids(7);
    let m6 = six_element_matroid();
    out.push(CorpusEntry::new("m6-dual", m6.dual()));
    out.push(CorpusEntry::new("m6", m6));
    out.extend(random_matroids(20, 6, RANDOM_SEED));
    out
}

/// The corpus restricted to ground sets of size at most `max_n`.
pub fn corpus_up_to(max_n: usize) -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| e.matroid.n() <= max_n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(determinant(vec![vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert_eq!(c.len(), 28 + 2 + 20);
        assert!(c.iter().all(|e| e.matroid.is_loopless()));
        let m6 = six_element_matroid();
        assert_eq!((m6.n(), m6.rank_total(), m6.bases().len()), (6, 3, 15));
        let random = random_matroids(20, 6, RANDOM_SEED);
        assert!(random.iter().all(|e| e.matroid.n() <= 6));
        assert_eq!(random_matroids(20, 6, RANDOM_SEED).len(), 20);
    }

    #[test]
    fn column_matroid_of_parallel_pair() {
        // columns e1, e1, e2: elements 1 and 2 are parallel
        let m = column_matroid(&[vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(m.bases().len(), 2);
        assert!(m.is_loopless());
    }
}
