//! Bergman fans `Σ_{M,P}` as simplicial complexes on their rays.

use crate::complex::{FaceComplex, SimplicialComplex};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::lattice::{FlatLattice, OrderFilter};
use crate::matroid::Matroid;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Ray {
    /// `x_i`, the image of the basis vector `e_i`.
    Elem(usize),
    /// `x_F` for a flat `F` of the filter.
    Flat(ElemSet),
}

impl Ray {
    /// Support of the ray's primitive vector `Σ_{i ∈ S} e_i`.
    pub fn support(self) -> ElemSet {
        match self {
            Ray::Elem(i) => ElemSet::singleton(i),
            Ray::Flat(f) => f,
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ray::Elem(i) => write!(f, "x{i}"),
            Ray::Flat(s) => write!(f, "x{s}"),
        }
    }
}

/// A cone `σ_{I<F}`: elements `I` together with a chain of filter flats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub elems: ElemSet,
    pub chain: Vec<ElemSet>,
}

#[derive(Clone, Debug)]
pub struct BergmanFan {
    matroid: Matroid,
    lattice: FlatLattice,
    filter: OrderFilter,
    rays: Vec<Ray>,
    ray_index: HashMap<Ray, u16>,
    complex: FaceComplex,
}

impl BergmanFan {
    pub fn new(m: &Matroid, filter: &OrderFilter) -> Result<Self> {
        m.require_loopless()?;
        let lattice = FlatLattice::new(m)?;
        let members: Vec<ElemSet> = filter.iter().collect();
        if !lattice.is_order_filter(&members)? {
            return Err(Error::InvalidOrderFilter);
        }
        let mut rays: Vec<Ray> = Vec::new();
        for i in m.ground() {
            if spans_nothing(m, &lattice, filter, ElemSet::singleton(i)) {
                rays.push(Ray::Elem(i));
            }
        }
        for f in lattice.proper_flats() {
            if filter.contains(f) {
                rays.push(Ray::Flat(f));
            }
        }
        let ray_index = rays
            .iter()
            .enumerate()
            .map(|(k, &r)| (r, k as u16))
            .collect();
        let complex = FaceComplex::from_oracle(rays.len(), |face| {
            face_rule(m, &lattice, filter, face.iter().map(|&k| rays[k as usize]))
        });
        Ok(BergmanFan {
            matroid: m.clone(),
            lattice,
            filter: filter.clone(),
            rays,
            ray_index,
            complex,
        })
    }

    /// `Σ_{M,∅}`.
    pub fn empty(m: &Matroid) -> Result<Self> {
        Self::new(m, &OrderFilter::empty())
    }

    /// `Σ_M`, with every proper nonempty flat in the filter.
    pub fn full(m: &Matroid) -> Result<Self> {
        m.require_loopless()?;
        let lattice = FlatLattice::new(m)?;
        Self::new(m, &OrderFilter::full(&lattice))
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn filter(&self) -> &OrderFilter {
        &self.filter
    }

    pub fn is_empty_filter(&self) -> bool {
        self.filter.is_empty()
    }

    pub fn is_full_filter(&self) -> bool {
        self.filter.len() == self.lattice.proper_flats().len()
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray_index(&self, r: Ray) -> Option<u16> {
        self.ray_index.get(&r).copied()
    }

    pub fn complex(&self) -> &FaceComplex {
        &self.complex
    }

    pub fn is_face(&self, rays: &[Ray]) -> Result<bool> {
        let mut idx = Vec::with_capacity(rays.len());
        for &r in rays {
            idx.push(
                self.ray_index(r)
                    .ok_or_else(|| Error::UnknownRay(r.to_string()))?,
            );
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.complex.is_face(&idx))
    }

    /// The cone spanned by a face.
    pub fn cone(&self, face: &[u16]) -> Cone {
        let mut elems = ElemSet::EMPTY;
        let mut chain = Vec::new();
        for &k in face {
            match self.rays[k as usize] {
                Ray::Elem(i) => elems = elems.with(i),
                Ray::Flat(f) => chain.push(f),
            }
        }
        chain.sort_by_key(|f| f.len());
        Cone { elems, chain }
    }

    pub fn face_rays(&self, face: &[u16]) -> Vec<Ray> {
        face.iter().map(|&k| self.rays[k as usize]).collect()
    }

    /// Generators of the Stanley-Reisner ideal, as ray sets.
    pub fn sr_minimal_nonfaces(&self) -> Vec<Vec<Ray>> {
        self.complex
            .minimal_nonfaces()
            .iter()
            .map(|f| self.face_rays(f))
            .collect()
    }

    pub fn graded_dimension(&self, s: usize) -> u64 {
        self.complex.graded_dimension(s)
    }

    /// Exponent vectors over the ray order of the standard monomials of degree `s`.
    pub fn monomial_basis(&self, s: usize) -> Vec<Vec<u32>> {
        self.complex
            .monomials(s)
            .into_iter()
            .map(|m| {
                let mut e = vec![0u32; self.rays.len()];
                for v in m {
                    e[v as usize] += 1;
                }
                e
            })
            .collect()
    }

    /// Faces of a subcomplex, as sets of ray supports; comparable across fans.
    pub fn canonical_faces(&self, complex: &FaceComplex) -> BTreeSet<Vec<ElemSet>> {
        complex
            .faces()
            .map(|f| {
                let mut v: Vec<ElemSet> = f.iter().map(|&k| self.rays[k as usize].support()).collect();
                v.sort();
                v
            })
            .collect()
    }
}

/// `I` spans no element of `P ∪ {1̂}`.
fn spans_nothing(m: &Matroid, lattice: &FlatLattice, filter: &OrderFilter, i: ElemSet) -> bool {
    let ri = m.rank(i);
    ri < m.rank_total()
        && !filter
            .iter()
            .any(|f| i.is_subset(f) && lattice.rank_of(f) == Some(ri))
}

fn face_rule(
    m: &Matroid,
    lattice: &FlatLattice,
    filter: &OrderFilter,
    rays: impl Iterator<Item = Ray>,
) -> bool {
    let mut elems = ElemSet::EMPTY;
    let mut chain: Vec<ElemSet> = Vec::new();
    for r in rays {
        match r {
            Ray::Elem(i) => elems = elems.with(i),
            Ray::Flat(f) => chain.push(f),
        }
    }
    chain.sort_by_key(|f| f.len());
    if chain.windows(2).any(|w| w[0] == w[1] || !w[0].is_subset(w[1])) {
        return false;
    }
    if chain.iter().any(|&f| !filter.contains(f)) {
        return false;
    }
    if let Some(&bottom) = chain.first() {
        if !elems.is_subset(bottom) {
            return false;
        }
    }
    spans_nothing(m, lattice, filter, elems)
}

/// Faces of `NS(M)`: subsets of rank below `r`. Its facets are the hyperplanes.
pub fn non_spanning_complex(m: &Matroid) -> Result<SimplicialComplex> {
    m.require_loopless()?;
    let lattice = FlatLattice::new(m)?;
    let r = m.rank_total();
    Ok(SimplicialComplex::from_generators(
        m.n(),
        lattice.flats_of_rank(r - 1).iter().copied(),
    ))
}

/// The four subfans attached to a flip `P₋ ⇝ P₊ = P₋ ∪ {Z}`.
#[derive(Clone, Debug)]
pub struct FlipSubfans {
    pub center: ElemSet,
    pub minus_fan: BergmanFan,
    pub plus_fan: BergmanFan,
    /// In `Σ_{M,P₊}`: `I ⊊ Z` and `Z ⊆` every flat of the chain.
    pub pi_plus: FaceComplex,
    /// In `Σ_{M,P₊}`: `Z` not in the chain.
    pub h_plus: FaceComplex,
    /// In `Σ_{M,P₋}`: `I ⊆ Z` and `Z ⊊` every flat of the chain.
    pub pi_minus: FaceComplex,
    /// In `Σ_{M,P₋}`: `I ≠ Z`.
    pub h_minus: FaceComplex,
}

pub fn flip_subfans(m: &Matroid, p_minus: &OrderFilter, z: ElemSet) -> Result<FlipSubfans> {
    m.require_loopless()?;
    let lattice = FlatLattice::new(m)?;
    match lattice.rank_of(z) {
        Some(k) if k > 0 && k < lattice.rank() => {}
        _ => return Err(Error::InvalidFlip(format!("{z} is not a proper nonempty flat"))),
    }
    if p_minus.contains(z) {
        return Err(Error::InvalidFlip(format!("{z} already lies in the filter")));
    }
    let p_plus = p_minus
        .with(&lattice, z)
        .map_err(|_| Error::InvalidFlip(format!("adding {z} does not give an order filter")))?;
    let minus_fan = BergmanFan::new(m, p_minus)?;
    let plus_fan = BergmanFan::new(m, &p_plus)?;

    let pi_plus = plus_fan.complex.filtered(|f| {
        let c = plus_fan.cone(f);
        c.elems.is_subset(z) && c.elems != z && c.chain.iter().all(|&g| z.is_subset(g))
    });
    let h_plus = plus_fan
        .complex
        .filtered(|f| !plus_fan.cone(f).chain.contains(&z));
    let pi_minus = minus_fan.complex.filtered(|f| {
        let c = minus_fan.cone(f);
        c.elems.is_subset(z) && c.chain.iter().all(|&g| z.is_subset(g) && g != z)
    });
    let h_minus = minus_fan
        .complex
        .filtered(|f| minus_fan.cone(f).elems != z);
    Ok(FlipSubfans {
        center: z,
        minus_fan,
        plus_fan,
        pi_plus,
        h_plus,
        pi_minus,
        h_minus,
    })
}

/// Faces common to two subcomplexes of the same fan.
pub fn intersect(a: &FaceComplex, b: &FaceComplex) -> FaceComplex {
    a.filtered(|f| b.is_face(f))
}
