//! Identity suites comparing Koszul ranks with closed forms and structural invariants.

use crate::closed_forms;
use crate::complex::binomial;
use crate::corpus::CorpusEntry;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::fan::{self, BergmanFan};
use crate::hochster;
use crate::koszul::{self, RingChoice, Strategy};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::poly::{BigradedSeries, BivariatePoly};
use crate::squarefree;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tutte,
    Empty,
    Hochster,
    Vanishing,
    Uniform,
    Flips,
    Structure,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Tutte,
        Suite::Empty,
        Suite::Hochster,
        Suite::Vanishing,
        Suite::Uniform,
        Suite::Flips,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tutte => "tutte",
            Suite::Empty => "empty",
            Suite::Hochster => "hochster",
            Suite::Vanishing => "vanishing",
            Suite::Uniform => "uniform",
            Suite::Flips => "flips",
            Suite::Structure => "structure",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub subject: String,
    pub check: String,
    pub passed: bool,
    /// Counterexample or error message on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    fn record(&mut self, suite: Suite, subject: &str, check: &str, outcome: Result<Outcome>) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, None),
            Ok(Err(d)) => (false, Some(d)),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(CheckOutcome {
            suite: suite.name().into(),
            subject: subject.into(),
            check: check.into(),
            passed,
            detail,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{} {} {} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.subject,
                c.check
            )?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `Err(detail)` when a check fails.
type Outcome = std::result::Result<(), String>;

fn expect_eq(what: &str, left: &BivariatePoly, right: &BivariatePoly) -> Outcome {
    if left == right {
        Ok(())
    } else {
        Err(format!("{what}: {left} != {right}"))
    }
}

fn expect(cond: bool, detail: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    /// Random relabelings per matroid in the structure suite.
    pub permutations: usize,
    pub seed: u64,
    /// Largest `r + k` for the uniform recursion suite.
    pub uniform_max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            strategy: Strategy::Auto,
            permutations: 10,
            seed: 0x7e51_f1ed,
            uniform_max_n: 6,
        }
    }
}

/// Tor table over `ring` on the default window.
pub fn window_table(fan: &BergmanFan, ring: RingChoice, strategy: Strategy) -> Result<BigradedSeries> {
    let (t_max, s_max) = koszul::default_window(fan, ring);
    koszul::tor_table_strategy(fan, ring, t_max, s_max, strategy)
}

fn is_uniform(m: &Matroid) -> bool {
    m.bases().len() as u64 == binomial(m.n(), m.rank_total())
}

pub fn run(suite: Suite, subjects: &[CorpusEntry], opts: &VerifyOptions) -> Report {
    let mut report = Report::default();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                report.extend(run(s, subjects, opts));
            }
        }
        Suite::Uniform => {
            let picked: Vec<&CorpusEntry> = subjects
                .iter()
                .filter(|e| is_uniform(&e.matroid) && e.matroid.n() <= opts.uniform_max_n)
                .collect();
            let outcomes: Vec<Result<Outcome>> = picked
                .par_iter()
                .map(|e| {
                    let (r, n) = (e.matroid.rank_total(), e.matroid.n());
                    uniform_check(r, n - r, opts.strategy)
                })
                .collect();
            for (e, o) in picked.into_iter().zip(outcomes) {
                report.record(suite, &e.name, "recursion", o);
            }
        }
        _ => {
            let parts: Vec<Report> = subjects.par_iter().map(|e| run_on(suite, e, opts)).collect();
            for part in parts {
                report.extend(part);
            }
        }
    }
    report
}

fn run_on(suite: Suite, e: &CorpusEntry, opts: &VerifyOptions) -> Report {
    let mut rep = Report::default();
    let m = &e.matroid;
    let name = e.name.as_str();
    match suite {
        Suite::Tutte => rep.record(suite, name, "tutte-specialization", tutte_check(m, opts.strategy)),
        Suite::Empty => {
            rep.record(suite, name, "empty-filter", empty_check(m, opts.strategy));
            rep.record(suite, name, "change-of-rings", change_of_rings_check(m, opts.strategy));
        }
        Suite::Hochster => {
            rep.record(suite, name, "hochster", hochster_check(m, opts.strategy));
            rep.record(suite, name, "ns-cohomology", ns_check(m));
            rep.record(suite, name, "local-cohomology", local_cohomology_check(m));
        }
        Suite::Vanishing => {
            rep.record(suite, name, "full-top-degree", top_degree_check(m, true, opts.strategy));
            rep.record(suite, name, "empty-top-degree", top_degree_check(m, false, opts.strategy));
        }
        Suite::Flips => {
            if is_uniform(m) {
                let (rows, whole) = match flip_checks(m, opts.strategy) {
                    Ok((a, b)) => (Ok(a), Ok(b)),
                    Err(e) => (Err(e.clone()), Err(e)),
                };
                rep.record(suite, name, "chow-rows", rows);
                rep.record(suite, name, "boolean-flips", whole);
                rep.record(suite, name, "kunneth", kunneth_check(m, opts.strategy));
            } else {
                rep.record(suite, name, "chow-rows", chow_rows_check(m, opts.strategy));
            }
        }
        Suite::Structure => {
            rep.record(suite, name, "d-squared", d_squared_check(m));
            rep.record(suite, name, "face-closure", face_closure_check(m, opts.seed));
            rep.record(suite, name, "exchange", exchange_check(m));
            rep.record(suite, name, "external-passive", external_passive_check(m));
            rep.record(suite, name, "lex-max-basis", lex_max_check(m));
            rep.record(suite, name, "duality", duality_check(m));
            rep.record(suite, name, "relabeling", relabeling_check(m, opts));
            rep.record(suite, name, "tor1-cycles", tor1_check(m));
            rep.record(suite, name, "flip-subfans", subfan_check(m));
        }
        Suite::Uniform | Suite::All => unreachable!("handled by run"),
    }
    rep
}

pub fn tutte_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let computed = window_table(&BergmanFan::empty(m)?, RingChoice::OverSM, strategy)?;
    let closed = closed_forms::hilb_sm_empty(m)?;
    let tutte = closed_forms::tutte_specialization(m)?;
    Ok(expect_eq("koszul vs activity sum", &computed, &closed)
        .and_then(|_| expect_eq("activity sum vs tutte", &closed, &tutte)))
}

pub fn empty_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let computed = window_table(&BergmanFan::empty(m)?, RingChoice::OverSMcirc, strategy)?;
    let sf = squarefree::squarefree_tor_table(m)?;
    let closed = closed_forms::hilb_smo_empty(m)?;
    Ok(expect_eq("koszul vs square-free", &computed, &sf)
        .and_then(|_| expect_eq("square-free vs closed form", &sf, &closed)))
}

pub fn change_of_rings_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let fan = BergmanFan::empty(m)?;
    let smo = window_table(&fan, RingChoice::OverSMcirc, strategy)?;
    let sm = window_table(&fan, RingChoice::OverSM, strategy)?;
    let lhs = BivariatePoly::one_plus_x_pow(1) * smo;
    let rhs = closed_forms::change_of_rings_rhs(m.rank_total(), &sm);
    Ok(expect_eq("(1+x)·H° vs H + correction", &lhs, &rhs))
}

pub fn hochster_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let fan = BergmanFan::empty(m)?;
    let (t_max, s_max) = koszul::default_window(&fan, RingChoice::OverSM);
    let koszul = koszul::tor_table_strategy(&fan, RingChoice::OverSM, t_max, s_max, strategy)?;
    let hochster = hochster::hochster_table(m, t_max, s_max)?;
    Ok(expect_eq("hochster vs koszul", &hochster, &koszul))
}

pub fn ns_check(m: &Matroid) -> Result<Outcome> {
    Ok(expect(hochster::ns_cohomology_check(m)?, || {
        format!(
            "NS cohomology {:?}, |NBC| = {}",
            hochster::reduced_cohomology_dims(&fan::non_spanning_complex(m).unwrap()),
            m.nbc_bases().len()
        )
    }))
}

/// `NS(M)|_W` is acyclic for `0 < rk W < r` and has cohomology `|NBC(M|_W)|` in degree
/// `r - 2` when `W` spans.
pub fn local_cohomology_check(m: &Matroid) -> Result<Outcome> {
    let ns = fan::non_spanning_complex(m)?;
    let r = m.rank_total();
    for w in m.ground().all_subsets() {
        let dims = hochster::reduced_cohomology_dims(&ns.restrict(w));
        let expected: Vec<u64> = if w.is_empty() {
            vec![1]
        } else if m.rank(w) < r {
            vec![]
        } else {
            let (mw, _) = m.restriction(w)?;
            let mut v = vec![0; r];
            v[r - 1] = mw.nbc_bases().len() as u64;
            v
        };
        let trimmed: Vec<u64> = {
            let last = dims.iter().rposition(|&d| d != 0).map_or(0, |p| p + 1);
            dims[..last].to_vec()
        };
        if trimmed != expected {
            return Ok(Err(format!("W = {w}: cohomology {dims:?}, expected {expected:?}")));
        }
    }
    Ok(Ok(()))
}

/// Zero outside `t ≤ n - r`, `s ≤ r - 1`, and `|NBC(M)| = T_M(1,0)` in the corner.
pub fn top_degree_check(m: &Matroid, full: bool, strategy: Strategy) -> Result<Outcome> {
    let fan = if full { BergmanFan::full(m)? } else { BergmanFan::empty(m)? };
    let table = window_table(&fan, RingChoice::OverSMcirc, strategy)?;
    let (n, r) = (m.n(), m.rank_total());
    if let Some(((t, s), v)) = table.iter().find(|&((t, s), _)| t > n - r || s + 1 > r) {
        return Ok(Err(format!("nonzero entry {v} at (t={t}, s={s}) in {table}")));
    }
    if !full {
        if let Some(((t, s), v)) = table.iter().find(|&((t, s), _)| t > 0 && s + 1 < r) {
            return Ok(Err(format!("nonzero entry {v} at (t={t}, s={s}) below degree r - 1 in {table}")));
        }
    }
    let nbc = m.nbc_bases().len() as i64;
    let corner = table.coeff(n - r, r - 1);
    Ok(expect(
        corner == nbc && nbc == m.tutte().eval(1, 0) && nbc > 0,
        || format!("corner {corner}, |NBC| {nbc}, T(1,0) {}", m.tutte().eval(1, 0)),
    ))
}

pub fn uniform_check(r: usize, k: usize, strategy: Strategy) -> Result<Outcome> {
    let recursion = closed_forms::hilb_uniform(r, k)?;
    let fan = BergmanFan::full(&Matroid::uniform(r, r + k)?)?;
    let brute = window_table(&fan, RingChoice::OverSMcirc, strategy)?;
    Ok(expect_eq(&format!("U_{{{r},{}}} recursion vs koszul", r + k), &recursion, &brute))
}

/// Tables of `Σ_{M,P_k}` for every prefix `P_k` of the flip sequence.
fn flip_tables(m: &Matroid, t_max: Option<usize>, strategy: Strategy) -> Result<Vec<BigradedSeries>> {
    let lattice = FlatLattice::new(m)?;
    let seq = lattice.flip_sequence();
    (0..=seq.len())
        .map(|k| {
            let fan = BergmanFan::new(m, &seq.prefix(k))?;
            let (tm, sm) = koszul::default_window(&fan, RingChoice::OverSMcirc);
            koszul::tor_table_strategy(&fan, RingChoice::OverSMcirc, t_max.unwrap_or(tm), sm, strategy)
        })
        .collect()
}

fn contraction_table(m: &Matroid, z: ElemSet, t_max: Option<usize>, strategy: Strategy) -> Result<BigradedSeries> {
    let (mz, _) = m.contraction(z)?;
    let fan = BergmanFan::full(&mz)?;
    let (tm, sm) = koszul::default_window(&fan, RingChoice::OverSMcirc);
    koszul::tor_table_strategy(&fan, RingChoice::OverSMcirc, t_max.unwrap_or(tm), sm, strategy)
}

/// Compares `tables[k+1]` with `tables[k] + E^Z_k`, both cut to `t ≤ t_cap`.
fn flip_bookkeeping(
    seq: &[ElemSet],
    tables: &[BigradedSeries],
    ez: &[BigradedSeries],
    t_cap: usize,
    s_cap: usize,
) -> Outcome {
    for (k, &z) in seq.iter().enumerate() {
        let before = tables[k].truncate(t_cap, s_cap);
        let after = tables[k + 1].truncate(t_cap, s_cap);
        let predicted = (&before + &ez[k]).truncate(t_cap, s_cap);
        if after != predicted {
            return Err(format!("flip {} (center {z}): {after} != {predicted}", k + 1));
        }
    }
    Ok(())
}

fn ez_terms(m: &Matroid, seq: &[ElemSet], t_max: Option<usize>, strategy: Strategy) -> Result<Vec<BigradedSeries>> {
    seq.iter()
        .map(|&z| closed_forms::ez_series(m, z, &contraction_table(m, z, t_max, strategy)?))
        .collect()
}

/// `dim A^s(M, P₊) = dim A^s(M, P₋) + [E^Z]_{0,s}` along the flip sequence.
pub fn chow_rows_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let seq = FlatLattice::new(m)?.flip_sequence().centers;
    let tables = flip_tables(m, Some(0), strategy)?;
    let ez = ez_terms(m, &seq, Some(0), strategy)?;
    Ok(flip_bookkeeping(&seq, &tables, &ez, 0, m.rank_total() + 1))
}

/// For uniform `M`: `Tor(Σ_{M,P₊}) = Tor(Σ_{M,P₋}) + E^Z` along the flip sequence.
pub fn boolean_flip_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    Ok(flip_checks(m, strategy)?.1)
}

/// The Chow-row and whole-table flip identities from one pass of Tor tables.
pub fn flip_checks(m: &Matroid, strategy: Strategy) -> Result<(Outcome, Outcome)> {
    let seq = FlatLattice::new(m)?.flip_sequence().centers;
    let tables = flip_tables(m, None, strategy)?;
    let ez = ez_terms(m, &seq, None, strategy)?;
    let rows = flip_bookkeeping(&seq, &tables, &ez, 0, m.rank_total() + 1);
    Ok((rows, flip_bookkeeping(&seq, &tables, &ez, usize::MAX, usize::MAX)))
}

/// `Tor(ℂ[Π₊]) = Tor(ℂ[Σ_{M|_Z,∅}]) · Tor(ℂ[Σ_{M_Z}])` over `S°`, for every flip.
pub fn kunneth_check(m: &Matroid, strategy: Strategy) -> Result<Outcome> {
    let lattice = FlatLattice::new(m)?;
    let seq = lattice.flip_sequence();
    for (k, &z) in seq.centers.iter().enumerate() {
        let sub = fan::flip_subfans(m, &seq.prefix(k), z)?;
        let forms = koszul::structure_forms(&sub.plus_fan, RingChoice::OverSMcirc);
        let (tm, sm) = koszul::default_window(&sub.plus_fan, RingChoice::OverSMcirc);
        let pi = koszul::tor_table_with(&sub.pi_plus, &forms, tm, sm, strategy);
        let (mz, _) = m.restriction(z)?;
        let product = closed_forms::hilb_smo_empty(&mz)? * contraction_table(m, z, None, strategy)?;
        if pi != product.truncate(tm, sm) {
            return Ok(Err(format!("center {z}: {pi} != {product}")));
        }
    }
    Ok(Ok(()))
}

pub fn d_squared_check(m: &Matroid) -> Result<Outcome> {
    let r = m.rank_total();
    for fan in [BergmanFan::empty(m)?, BergmanFan::full(m)?] {
        for ring in [RingChoice::OverSM, RingChoice::OverSMcirc] {
            let forms = koszul::structure_forms(&fan, ring);
            for t in 2..=forms.len().min(3) {
                for s in 0..r.min(3) {
                    let a = koszul::koszul_matrix(fan.complex(), &forms, t, s);
                    let b = koszul::koszul_matrix(fan.complex(), &forms, t - 1, s + 1);
                    if !a.composes_to_zero(&b) {
                        return Ok(Err(format!("{ring:?}, filter size {}, (t={t}, s={s})", fan.filter().len())));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Random ray subsets: every face stays a face after removing one ray.
pub fn face_closure_check(m: &Matroid, seed: u64) -> Result<Outcome> {
    let lattice = FlatLattice::new(m)?;
    let seq = lattice.flip_sequence();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in [0, seq.len() / 2, seq.len()] {
        let fan = BergmanFan::new(m, &seq.prefix(k))?;
        let rays = fan.rays().to_vec();
        if rays.is_empty() {
            continue;
        }
        for _ in 0..200 {
            let size = rng.gen_range(1..=rays.len().min(m.rank_total() + 1));
            let pick: Vec<_> = rays.choose_multiple(&mut rng, size).copied().collect();
            if !fan.is_face(&pick)? {
                continue;
            }
            for i in 0..pick.len() {
                let mut smaller = pick.clone();
                smaller.remove(i);
                if !fan.is_face(&smaller)? {
                    return Ok(Err(format!("{pick:?} is a face but {smaller:?} is not")));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Exhaustive exchange test, written independently of the constructor.
fn satisfies_exchange(bases: &[ElemSet]) -> bool {
    let set: HashSet<ElemSet> = bases.iter().copied().collect();
    bases.iter().all(|&b1| {
        bases.iter().all(|&b2| {
            (b1 - b2)
                .iter()
                .all(|x| (b2 - b1).iter().any(|y| set.contains(&b1.without(x).with(y))))
        })
    })
}

/// Dropping any single basis is accepted exactly when the rest still satisfies exchange.
pub fn exchange_check(m: &Matroid) -> Result<Outcome> {
    let bases = m.bases();
    if bases.len() < 2 {
        return Ok(Ok(()));
    }
    for skip in 0..bases.len() {
        let rest: Vec<ElemSet> = bases
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &b)| b)
            .collect();
        let built = Matroid::new_from_bases(m.n(), rest.iter().copied());
        let ok = satisfies_exchange(&rest);
        match built {
            Ok(_) if ok => {}
            Err(Error::ExchangeAxiomViolation { .. }) if !ok => {}
            other => {
                return Ok(Err(format!(
                    "without {}: constructor {:?}, exhaustive check {ok}",
                    bases[skip],
                    other.map(|_| ())
                )))
            }
        }
    }
    Ok(Ok(()))
}

/// `C(ep(B), i) = #{W : |W| = |B| + i, B ∈ NBC(M|_W)}`.
pub fn external_passive_check(m: &Matroid) -> Result<Outcome> {
    for &b in m.bases() {
        let ep = m.ep(b)?;
        for i in 0..=ep {
            let mut count = 0u64;
            for w in m.ground().subsets_of_size(b.len() + i) {
                if !b.is_subset(w) {
                    continue;
                }
                let (mw, map) = m.restriction(w)?;
                let bw = map.new_set(b);
                if mw.is_basis(bw) && mw.externally_active_set(bw)?.is_empty() {
                    count += 1;
                }
            }
            if count != binomial(ep, i) {
                return Ok(Err(format!("B = {b}, i = {i}: {count} != C({ep}, {i})")));
            }
        }
    }
    Ok(Ok(()))
}

pub fn lex_max_check(m: &Matroid) -> Result<Outcome> {
    let bmax = m.lex_max_basis();
    for &b in m.bases() {
        if (m.ep(b)? == 0) != (b == bmax) {
            return Ok(Err(format!("B = {b}: ep = {}, lex max = {bmax}", m.ep(b)?)));
        }
    }
    Ok(Ok(()))
}

pub fn duality_check(m: &Matroid) -> Result<Outcome> {
    let d = m.dual();
    for &b in m.bases() {
        let ia = m.activity(b)?.ia;
        let ea = d.activity(m.ground() - b)?.ea;
        if ia != ea {
            return Ok(Err(format!("B = {b}: ia = {ia}, dual ea = {ea}")));
        }
    }
    let nbc = m.nbc_bases().len() as i64;
    Ok(expect(m.tutte() == d.tutte().swapped(), || "T_M(x,y) != T_M*(y,x)".into())
        .and_then(|_| expect(d.dual() == *m, || "dual is not an involution".into()))
        .and_then(|_| {
            expect(nbc == m.tutte().eval(1, 0) && nbc > 0, || {
                format!("|NBC| = {nbc}, T(1,0) = {}", m.tutte().eval(1, 0))
            })
        }))
}

/// Every series the crate produces for `M`, keyed by name.
fn all_series(m: &Matroid, strategy: Strategy) -> Result<Vec<(&'static str, BivariatePoly)>> {
    let empty = BergmanFan::empty(m)?;
    let full = BergmanFan::full(m)?;
    Ok(vec![
        ("hilb_sm_empty", closed_forms::hilb_sm_empty(m)?),
        ("hilb_smo_empty", closed_forms::hilb_smo_empty(m)?),
        ("tor empty S", window_table(&empty, RingChoice::OverSM, strategy)?),
        ("tor empty S°", window_table(&empty, RingChoice::OverSMcirc, strategy)?),
        ("tor full S°", window_table(&full, RingChoice::OverSMcirc, strategy)?),
        ("nbc", BivariatePoly::monomial(0, 0, m.nbc_bases().len() as i64)),
    ])
}

/// Tutte polynomial and all series are unchanged by random relabelings of `[n]`.
pub fn relabeling_check(m: &Matroid, opts: &VerifyOptions) -> Result<Outcome> {
    let mut base = None;
    let tutte = m.tutte();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ m.bases()[0].bits() as u64);
    let mut seen: HashSet<Vec<ElemSet>> = HashSet::new();
    seen.insert(m.bases().to_vec());
    for _ in 0..opts.permutations {
        let mut perm: Vec<usize> = (1..=m.n()).collect();
        perm.shuffle(&mut rng);
        let p = m.permuted(&perm)?;
        if p.tutte() != tutte {
            return Ok(Err(format!("tutte changes under {perm:?}")));
        }
        // identical basis families give identical series
        if !seen.insert(p.bases().to_vec()) {
            continue;
        }
        if base.is_none() {
            base = Some(all_series(m, opts.strategy)?);
        }
        let base = base.as_ref().expect("computed above");
        for ((name, a), (_, b)) in base.iter().zip(all_series(&p, opts.strategy)?) {
            if *a != b {
                return Ok(Err(format!("{name} changes under {perm:?}: {a} != {b}")));
            }
        }
    }
    Ok(Ok(()))
}

pub fn tor1_check(m: &Matroid) -> Result<Outcome> {
    let c = squarefree::check_tor1_cycles(m)?;
    Ok(expect(c.passed() && c.count + 1 == m.bases().len(), || format!("{c:?}")))
}

/// `H₊ = H₋` and `Π₊ ∩ H₊ = Π₋ ∩ H₋` for every flip of the sequence.
pub fn subfan_check(m: &Matroid) -> Result<Outcome> {
    let seq = FlatLattice::new(m)?.flip_sequence();
    for (k, &z) in seq.centers.iter().enumerate() {
        let f = fan::flip_subfans(m, &seq.prefix(k), z)?;
        let mut problems = Vec::new();
        let hp = f.plus_fan.canonical_faces(&f.h_plus);
        let hm = f.minus_fan.canonical_faces(&f.h_minus);
        if hp != hm {
            problems.push(format!("H₊ != H₋{}", spanning_excess(m, &f, &f.h_minus, &hp)));
        }
        let ip = f.plus_fan.canonical_faces(&fan::intersect(&f.pi_plus, &f.h_plus));
        let pm_hm = fan::intersect(&f.pi_minus, &f.h_minus);
        let im = f.minus_fan.canonical_faces(&pm_hm);
        if ip != im {
            problems.push(format!("Π₊ ∩ H₊ != Π₋ ∩ H₋{}", spanning_excess(m, &f, &pm_hm, &ip)));
        }
        if !problems.is_empty() {
            return Ok(Err(format!("center {z}: {}", problems.join("; "))));
        }
    }
    Ok(Ok(()))
}

/// Describes the faces of a `Σ_{M,P₋}` subcomplex missing from `plus`. When the only
/// difference is cones `σ_{I<F}` with `I ⊊ Z` spanning a dependent center `Z`, says so.
fn spanning_excess(
    m: &Matroid,
    f: &fan::FlipSubfans,
    minus: &crate::complex::FaceComplex,
    plus: &std::collections::BTreeSet<Vec<ElemSet>>,
) -> String {
    let z = f.center;
    let mut spanning = 0usize;
    let mut other = 0usize;
    for face in minus.faces() {
        let mut key: Vec<ElemSet> = face
            .iter()
            .map(|&k| f.minus_fan.rays()[k as usize].support())
            .collect();
        key.sort();
        if plus.contains(&key) {
            continue;
        }
        let i = f.minus_fan.cone(face).elems;
        if i != z && i.is_subset(z) && m.closure(i) == z {
            spanning += 1;
        } else {
            other += 1;
        }
    }
    let minus_keys = f.minus_fan.canonical_faces(minus);
    let missing = plus.iter().filter(|k| !minus_keys.contains(*k)).count();
    format!(
        " ({spanning} cones with I ⊊ Z spanning Z, {other} other extra cones, {missing} cones only on the P₊ side)"
    )
}
