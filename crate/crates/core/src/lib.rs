//! Bigraded Tor algebras of Stanley-Reisner rings of matroid Bergman fans.
//!
//! Matroids are given by their bases on `{1, ..., n}`. For an order filter `P`
//! of proper nonempty flats the crate builds the Bergman fan `Σ_{M,P}`, its
//! Stanley-Reisner ring and the Koszul complex over `S_M` or `S°_M`, and reads
//! off `dim Tor_t(ℂ[Σ_{M,P}], ℂ)_s` by exact rank computations. Closed-form
//! series (activity sums, the uniform recursion, Hochster's formula) are
//! provided alongside as independent checks.

pub mod closed_forms;
pub mod complex;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod fan;
pub mod hochster;
pub mod io;
pub mod koszul;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod squarefree;
pub mod verify;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use fan::{BergmanFan, Ray};
pub use koszul::{RingChoice, Strategy};
pub use lattice::{FlatLattice, FlipSequence, OrderFilter};
pub use matroid::Matroid;
pub use poly::{BigradedSeries, BivariatePoly, TuttePolynomial};
