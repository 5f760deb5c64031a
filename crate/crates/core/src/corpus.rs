//! The shipped diagrams, embedded at compile time.

use crate::diagram::{parse_front, FrontDiagram};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn front(&self) -> FrontDiagram {
        parse_front(self.source).unwrap_or_else(|e| panic!("corpus entry {} does not parse: {e}", self.name))
    }
}

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(CorpusEntry { name: $name, source: include_str!(concat!("../corpus/", $name, ".leg")) }),*]
    };
}

pub const CORPUS: &[CorpusEntry] = entries![
    "unknot",
    "two-unknots",
    "hopf",
    "hopf-shift0",
    "lambda-prime",
    "lambda-r2",
    "lambda-r3",
    "trefoil",
    "unknot-r1",
    "unknot-r2",
    "hopf-r2",
    "hopf-r2-right",
    "hopf-basepoint",
    "chain3",
    "chain3-surgered",
    "psi-2",
    "psi-t-inv-t",
];

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

/// Parses a shipped entry; panics on unknown names.
pub fn front(name: &str) -> FrontDiagram {
    entry(name).unwrap_or_else(|| panic!("no corpus entry {name}")).front()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_and_round_trips() {
        for e in CORPUS {
            let f = e.front();
            assert_eq!(parse_front(&f.to_source()).unwrap(), f, "{}", e.name);
        }
    }

    #[test]
    fn lambda_r_files_are_unions_of_lambda_prime() {
        let lp = front("lambda-prime");
        let two = FrontDiagram::disjoint_union(&lp, &lp);
        assert_eq!(front("lambda-r2"), two);
        assert_eq!(front("lambda-r3"), FrontDiagram::disjoint_union(&two, &lp));
    }
}
