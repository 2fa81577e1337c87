//! Matroid files: `{"n": 6, "bases": [[1,2,5], [1,2,6], ...]}` with 1-indexed elements.

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson {
            n: m.n(),
            bases: m.bases_lex().into_iter().map(|b| b.to_vec()).collect(),
        }
    }

    /// Validates element ranges and duplicates, then the matroid axioms.
    pub fn to_matroid(&self) -> Result<Matroid> {
        if self.n == 0 || self.n > 31 {
            return Err(Error::InvalidGroundSet(self.n));
        }
        let mut sets = Vec::with_capacity(self.bases.len());
        for b in &self.bases {
            let mut set = ElemSet::EMPTY;
            for &e in b {
                if e == 0 || e > self.n {
                    return Err(Error::Parse(format!("element {e} outside 1..={}", self.n)));
                }
                if set.contains(e) {
                    return Err(Error::Parse(format!("element {e} repeated in basis {b:?}")));
                }
                set = set.with(e);
            }
            sets.push(set);
        }
        let mut dedup = sets.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != sets.len() {
            return Err(Error::Parse("repeated basis".into()));
        }
        Matroid::new_from_bases(self.n, sets)
    }
}

pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let j: MatroidJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_matroid()
}

pub fn matroid_to_json(m: &Matroid) -> String {
    serde_json::to_string(&MatroidJson::from_matroid(m)).expect("plain data serializes")
}

pub fn read_matroid(path: impl AsRef<Path>) -> Result<Matroid> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_matroid(&text)
}

pub fn write_matroid(path: impl AsRef<Path>, m: &Matroid) -> Result<()> {
    std::fs::write(path.as_ref(), matroid_to_json(m) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = Matroid::uniform(2, 4).unwrap();
        let text = matroid_to_json(&m);
        assert_eq!(text, r#"{"n":4,"bases":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
        assert_eq!(parse_matroid(&text).unwrap(), m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_matroid("{\"n\":3}"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_matroid(r#"{"n":3,"bases":[[1,4]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_matroid(r#"{"n":3,"bases":[[1,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_matroid(r#"{"n":3,"bases":[[1,2],[3]]}"#),
            Err(Error::UnequalCardinality { .. })
        ));
        assert_eq!(parse_matroid(r#"{"n":3,"bases":[]}"#), Err(Error::EmptyBasisFamily));
        assert_eq!(parse_matroid(r#"{"n":0,"bases":[[]]}"#), Err(Error::InvalidGroundSet(0)));
        assert!(matches!(
            parse_matroid(r#"{"n":4,"bases":[[1,2],[3,4]]}"#),
            Err(Error::ExchangeAxiomViolation { .. })
        ));
    }
}
