use crate::elemset::ElemSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("bases have unequal cardinality: {first} has {expected} elements, {other} has {found}")]
    UnequalCardinality {
        first: ElemSet,
        other: ElemSet,
        expected: usize,
        found: usize,
    },
    #[error("basis exchange fails for B1={b1}, B2={b2}, x={x}")]
    ExchangeAxiomViolation { b1: ElemSet, b2: ElemSet, x: usize },
    #[error("ground set size {0} is outside 1..=31")]
    InvalidGroundSet(usize),
    #[error("subset {set} is not contained in the ground set [{n}]")]
    OutOfGroundSet { set: ElemSet, n: usize },
    #[error("invalid rank {r} for a uniform matroid on {n} elements")]
    InvalidRank { r: usize, n: usize },
    #[error("restriction to the empty set")]
    EmptyGroundSet,
    #[error("{0} is not a flat")]
    NotAFlat(ElemSet),
    #[error("{0} is not a basis")]
    NotABasis(ElemSet),
    #[error("element {x} lies in the basis {basis}")]
    ElementInBasis { basis: ElemSet, x: usize },
    #[error("matroid has loops")]
    LoopyMatroid,
    #[error("{0} is not a proper nonempty flat of the lattice")]
    UnknownFlat(ElemSet),
    #[error("flat set is not upward closed")]
    InvalidOrderFilter,
    #[error("ray {0} does not belong to the fan")]
    UnknownRay(String),
    #[error("invalid flip: {0}")]
    InvalidFlip(String),
    #[error("expected rank {expected}, found {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("nonzero Tor entry {value} at (t={t}, s={s}) where vanishing is expected")]
    VanishingViolated { t: usize, s: usize, value: u64 },
    #[error("malformed matroid file: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
