//! Exact bivariate integer polynomials and the Tutte polynomial container.
//!
//! Series use `x` for the Tor degree `t` and `y` for the internal degree `s`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Finitely supported polynomial `Σ c_{t,s} x^t y^s` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(usize, usize), i64>,
}

/// A bigraded Hilbert series: a bivariate polynomial whose coefficients are dimensions.
pub type BigradedSeries = BivariatePoly;

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub t: usize,
    pub s: usize,
    pub c: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolyJson {
    pub terms: Vec<Term>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(t: usize, s: usize, c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(t, s, c);
        p
    }

    /// `x`
    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `y`
    pub fn y() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `y^a + y^{a+1} + ... + y^b` (zero when `a > b`).
    pub fn y_range(a: usize, b: usize) -> Self {
        let mut p = Self::zero();
        for j in a..=b {
            p.add_term(0, j, 1);
        }
        p
    }

    pub fn add_term(&mut self, t: usize, s: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry((t, s)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(t, s));
        }
    }

    pub fn coeff(&self, t: usize, s: usize) -> i64 {
        self.terms.get(&(t, s)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut p = Self::zero();
        for ((t, s), v) in self.iter() {
            p.add_term(t, s, v * c);
        }
        p
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `(1 + x)^k`
    pub fn one_plus_x_pow(k: usize) -> Self {
        (&Self::one() + &Self::x()).pow(k)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Keeps only the terms with `t <= t_max` and `s <= s_max`.
    pub fn truncate(&self, t_max: usize, s_max: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((t, s), _)| *t <= t_max && *s <= s_max)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    /// Terms in canonical order: total degree, then `t`, then `s`.
    pub fn canonical_terms(&self) -> Vec<Term> {
        let mut v: Vec<Term> = self.iter().map(|((t, s), c)| Term { t, s, c }).collect();
        v.sort_by_key(|term| (term.t + term.s, term.t, term.s));
        v
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self.canonical_terms(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Self {
        let mut p = Self::zero();
        for term in &j.terms {
            p.add_term(term.t, term.s, term.c);
        }
        p
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, c: i64, vars: &[(&str, usize)]) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    if factors.is_empty() {
        write!(f, "{c}")
    } else if c == 1 {
        write!(f, "{}", factors.join("*"))
    } else {
        write!(f, "{c}*{}", factors.join("*"))
    }
}

fn write_signed_sum<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (i64, usize, usize)>,
{
    let mut first = true;
    for (c, i, j) in terms {
        let mag = c.abs();
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else if c < 0 {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write_monomial(f, mag, &[("x", i), ("y", j)])?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.canonical_terms().into_iter().map(|t| (t.c, t.t, t.s)),
        )
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut p = self.clone();
        p += rhs;
        p
    }
}

impl Add for BivariatePoly {
    type Output = BivariatePoly;
    fn add(mut self, rhs: BivariatePoly) -> BivariatePoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivariatePoly> for BivariatePoly {
    fn add_assign(&mut self, rhs: &BivariatePoly) {
        for ((t, s), c) in rhs.iter() {
            self.add_term(t, s, c);
        }
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(-1)
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Sub for BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: BivariatePoly) -> BivariatePoly {
        &self - &rhs
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut p = BivariatePoly::zero();
        for ((t1, s1), c1) in self.iter() {
            for ((t2, s2), c2) in rhs.iter() {
                p.add_term(t1 + t2, s1 + s2, c1 * c2);
            }
        }
        p
    }
}

impl Mul for BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: BivariatePoly) -> BivariatePoly {
        &self * &rhs
    }
}

/// `T_M(x, y) = Σ_B x^{ia(B)} y^{ea(B)}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: BTreeMap<(usize, usize), u64>,
}

impl TuttePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: u64) {
        if c > 0 {
            *self.coeffs.entry((i, j)).or_insert(0) += c;
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    /// Sum of all coefficients, i.e. the number of bases.
    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.iter()
            .map(|((i, j), c)| c as i64 * x.pow(i as u32) * y.pow(j as u32))
            .sum()
    }

    /// `T(y, x)`.
    pub fn swapped(&self) -> Self {
        let mut t = Self::zero();
        for ((i, j), c) in self.iter() {
            t.add_term(j, i, c);
        }
        t
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .display_order()
            .into_iter()
            .map(|(i, j, c)| serde_json::json!({"i": i, "j": j, "c": c}))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    /// Terms by decreasing total degree, then decreasing power of `x`.
    fn display_order(&self) -> Vec<(usize, usize, u64)> {
        let mut v: Vec<_> = self.iter().map(|((i, j), c)| (i, j, c)).collect();
        v.sort_by_key(|&(i, j, _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        v
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(
            f,
            self.display_order()
                .into_iter()
                .map(|(i, j, c)| (c as i64, i, j)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = BivariatePoly::one_plus_x_pow(2);
        assert_eq!(p.to_string(), "1 + 2*x + x^2");
        let q = &p * &BivariatePoly::y();
        assert_eq!(q.coeff(1, 1), 2);
        assert!((&q - &q).is_zero());
        assert_eq!(BivariatePoly::y_range(1, 0), BivariatePoly::zero());
        assert_eq!(BivariatePoly::y_range(1, 3).to_string(), "y + y^2 + y^3");
        assert_eq!(BivariatePoly::zero().to_string(), "0");
        assert_eq!((-&BivariatePoly::x()).to_string(), "-x");
        assert_eq!(
            (&BivariatePoly::one() - &BivariatePoly::monomial(1, 1, 3)).to_string(),
            "1 - 3*x*y"
        );
    }

    #[test]
    fn canonical_order() {
        let mut p = BivariatePoly::zero();
        for &(t, s, c) in &[
            (3, 2, 6),
            (0, 0, 1),
            (2, 2, 13),
            (1, 1, 28),
            (0, 1, 9),
            (3, 1, 7),
            (0, 2, 1),
            (2, 1, 24),
            (1, 2, 7),
        ] {
            p.add_term(t, s, c);
        }
        assert_eq!(
            p.to_string(),
            "1 + 9*y + y^2 + 28*x*y + 7*x*y^2 + 24*x^2*y + 13*x^2*y^2 + 7*x^3*y + 6*x^3*y^2"
        );
    }

    #[test]
    fn json_round_trip() {
        let p = &BivariatePoly::one_plus_x_pow(3) * &BivariatePoly::y_range(0, 2);
        let js = serde_json::to_string(&p.to_json()).unwrap();
        assert!(js.starts_with(r#"{"terms":[{"t":0,"s":0,"c":1}"#));
        let back: PolyJson = serde_json::from_str(&js).unwrap();
        assert_eq!(BivariatePoly::from_json(&back), p);
    }

    #[test]
    fn tutte_display() {
        let mut t = TuttePolynomial::zero();
        t.add_term(2, 0, 1);
        t.add_term(1, 0, 1);
        t.add_term(0, 1, 1);
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(t.swapped().to_string(), "y^2 + x + y");
        assert_eq!(t.eval(1, 0), 2);
        assert_eq!(t.total(), 3);
    }
}
