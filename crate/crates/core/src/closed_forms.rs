//! Closed-form bigraded series used as independent oracles for the Koszul ranks.

use crate::complex::binomial;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::fan::BergmanFan;
use crate::koszul::{self, RingChoice};
use crate::matroid::Matroid;
use crate::poly::BivariatePoly;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Tor of `ℂ[Σ_{M,∅}]` over `S_M`: `1 + x y^{r-1} Σ_B (1+x)^{ep(B)}`.
pub fn hilb_sm_empty(m: &Matroid) -> Result<BivariatePoly> {
    m.require_loopless()?;
    let r = m.rank_total();
    let mut sum = BivariatePoly::zero();
    for &b in m.bases() {
        sum += &BivariatePoly::one_plus_x_pow(m.ep(b)?);
    }
    Ok(BivariatePoly::one() + BivariatePoly::monomial(1, r - 1, 1) * sum)
}

/// `1 + x(1+x)^{n-r} y^{r-1} T_M(1, 1/(1+x))`, expanded through external activities.
pub fn tutte_specialization(m: &Matroid) -> Result<BivariatePoly> {
    m.require_loopless()?;
    let (n, r) = (m.n(), m.rank_total());
    let mut sum = BivariatePoly::zero();
    // T_M(1, y) = Σ_j (Σ_i t_{ij}) y^j
    for ((_, j), c) in m.tutte().iter() {
        sum += &BivariatePoly::one_plus_x_pow(n - r - j).scale(c as i64);
    }
    Ok(BivariatePoly::one() + BivariatePoly::monomial(1, r - 1, 1) * sum)
}

/// Tor of `ℂ[Σ_{M,∅}]` over `S°_M`:
/// `Σ_{i<r} y^i + x y^{r-1} Σ_{B ≠ B_max} (1+x)^{ep(B)-1}`.
pub fn hilb_smo_empty(m: &Matroid) -> Result<BivariatePoly> {
    m.require_loopless()?;
    let r = m.rank_total();
    let bmax = m.lex_max_basis();
    let mut sum = BivariatePoly::zero();
    for &b in m.bases().iter().filter(|&&b| b != bmax) {
        // ep(B) ≥ 1 away from the lex-maximal basis
        sum += &BivariatePoly::one_plus_x_pow(m.ep(b)? - 1);
    }
    Ok(BivariatePoly::y_range(0, r - 1) + BivariatePoly::monomial(1, r - 1, 1) * sum)
}

/// `1 + y + xy Σ_{B ≠ B_max} (1+x)^{ep(B)-1}` for a rank-2 matroid. This is the Tor of
/// `ℂ[Σ_M]` over `S°_M` when `M` is simple; each parallel element multiplies the latter
/// by `1 + x`.
pub fn hilb_rank2(m: &Matroid) -> Result<BivariatePoly> {
    if m.rank_total() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            found: m.rank_total(),
        });
    }
    hilb_smo_empty(m)
}

/// The exceptional series `(hilb_smo_empty(M|_Z) - 1) · tor_of_contraction`.
pub fn ez_series(m: &Matroid, z: ElemSet, tor_of_contraction: &BivariatePoly) -> Result<BivariatePoly> {
    let rz = m.rank(z);
    if z.is_empty() || !m.is_flat(z) || rz == 0 || rz == m.rank_total() {
        return Err(Error::NotAFlat(z));
    }
    let (mz, _) = m.restriction(z)?;
    Ok((hilb_smo_empty(&mz)? - BivariatePoly::one()) * tor_of_contraction.clone())
}

/// Right side of `(1+x)·H° = Σ_{i=1}^{r-1} y^i + x Σ_{i=0}^{r-2} y^i + H` for a
/// rank-`r` matroid, where `H` and `H°` are the empty-fan series over `S_M` and `S°_M`.
pub fn change_of_rings_rhs(r: usize, hilb_sm: &BivariatePoly) -> BivariatePoly {
    let mut out = BivariatePoly::y_range(1, r - 1);
    if r >= 2 {
        out += &(BivariatePoly::x() * BivariatePoly::y_range(0, r - 2));
    }
    out + hilb_sm.clone()
}

fn uniform_cache() -> &'static Mutex<HashMap<(usize, usize), BivariatePoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), BivariatePoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Tor of `ℂ[Σ_{U_{r,r+k}}]` over `S°`, by recursion on the rank.
///
/// The boolean case `k = 0` is computed from the Koszul complex of the full fan.
pub fn hilb_uniform(r: usize, k: usize) -> Result<BivariatePoly> {
    if r == 0 || r + k > 31 {
        return Err(Error::InvalidParams(format!("no uniform matroid U_{{{r},{}}}", r + k)));
    }
    if let Some(p) = uniform_cache().lock().unwrap().get(&(r, k)) {
        return Ok(p.clone());
    }
    let p = if r == 1 {
        BivariatePoly::one_plus_x_pow(k)
    } else if k == 0 {
        let fan = BergmanFan::full(&Matroid::uniform(r, r)?)?;
        let (t_max, s_max) = koszul::default_window(&fan, RingChoice::OverSMcirc);
        koszul::tor_table(&fan, RingChoice::OverSMcirc, t_max, s_max)?
    } else {
        let mut p = hilb_smo_empty(&Matroid::uniform(r, r + k)?)?;
        for i in 1..r {
            let coef = binomial(r + k, i) as i64;
            let factor = BivariatePoly::y_range(1, i - 1).scale(coef);
            p += &(factor * hilb_uniform(r - i, k)?);
        }
        p
    };
    uniform_cache().lock().unwrap().insert((r, k), p.clone());
    Ok(p)
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
    fn empty_fan_over_sm() {
        assert_eq!(hilb_sm_empty(&u(2, 3)).unwrap().to_string(), "1 + 3*x*y + 2*x^2*y");
        assert_eq!(
            hilb_sm_empty(&u(3, 5)).unwrap().to_string(),
            "1 + 10*x*y^2 + 15*x^2*y^2 + 6*x^3*y^2"
        );
        // U_{1,2}: ep values 1 and 0
        assert_eq!(hilb_sm_empty(&u(1, 2)).unwrap().to_string(), "1 + 2*x + x^2");
        for n in 1..6 {
            assert_eq!(
                hilb_sm_empty(&u(n, n)).unwrap(),
                BivariatePoly::one() + BivariatePoly::monomial(1, n - 1, 1)
            );
        }
    }

    #[test]
    fn tutte_form_matches() {
        for n in 1..=6 {
            for r in 1..=n {
                let m = u(r, n);
                assert_eq!(hilb_sm_empty(&m).unwrap(), tutte_specialization(&m).unwrap());
            }
        }
    }

    #[test]
    fn empty_fan_over_smo() {
        assert_eq!(hilb_smo_empty(&u(2, 3)).unwrap().to_string(), "1 + y + 2*x*y");
        assert_eq!(
            hilb_smo_empty(&u(3, 5)).unwrap().to_string(),
            "1 + y + y^2 + 9*x*y^2 + 6*x^2*y^2"
        );
        for n in 1..7 {
            assert_eq!(hilb_smo_empty(&u(1, n)).unwrap(), BivariatePoly::one_plus_x_pow(n - 1));
        }
    }

    #[test]
    fn rank_two() {
        assert_eq!(hilb_rank2(&u(2, 3)).unwrap().to_string(), "1 + y + 2*x*y");
        assert_eq!(
            hilb_rank2(&u(3, 4)),
            Err(Error::WrongRank { expected: 2, found: 3 })
        );
    }

    #[test]
    fn exceptional_series() {
        let m = u(3, 5);
        let sq = BivariatePoly::one_plus_x_pow(2);
        let e = ez_series(&m, s(&[1, 2]), &sq).unwrap();
        assert_eq!(e, BivariatePoly::y() * sq.clone());
        assert!(ez_series(&m, s(&[1]), &sq).unwrap().is_zero());
        assert_eq!(ez_series(&m, s(&[1, 2, 3]), &sq), Err(Error::NotAFlat(s(&[1, 2, 3]))));
    }

    #[test]
    fn uniform_recursion() {
        assert_eq!(hilb_uniform(1, 4).unwrap(), BivariatePoly::one_plus_x_pow(4));
        assert_eq!(hilb_uniform(2, 1).unwrap().to_string(), "1 + y + 2*x*y");
        assert_eq!(
            hilb_uniform(3, 2).unwrap().to_string(),
            "1 + 11*y + y^2 + 20*x*y + 9*x*y^2 + 10*x^2*y + 6*x^2*y^2"
        );
        assert!(matches!(hilb_uniform(0, 2), Err(Error::InvalidParams(_))));
        for r in 1..5 {
            for k in 1..4 {
                let top = hilb_uniform(r, k).unwrap().coeff(k, r - 1);
                assert_eq!(top as u64, binomial(r + k - 1, r - 1));
            }
        }
    }

    #[test]
    fn change_of_rings() {
        for n in 1..=6 {
            for r in 1..=n {
                let m = u(r, n);
                let lhs = BivariatePoly::one_plus_x_pow(1) * hilb_smo_empty(&m).unwrap();
                assert_eq!(lhs, change_of_rings_rhs(r, &hilb_sm_empty(&m).unwrap()));
            }
        }
    }
}
